#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "thermocrack/crack_level.hpp"
#include "thermocrack/image.hpp"
#include "thermocrack/tensor.hpp"

namespace thermocrack {

enum class LayerKind : std::uint8_t {
  Input = 0,
  Conv = 1,
  MaxPool = 2,
  Flatten = 3,
  Dense = 4,
  Output = 5,
};

enum class Activation : std::uint8_t { None, Relu, Softmax };

std::string_view to_string(LayerKind kind) noexcept;

struct LayerSpec {
  LayerKind kind = LayerKind::Input;
  std::string name;
  std::size_t units = 0;  // filters for Conv, neurons for Dense/Output
  Activation activation = Activation::None;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// The eleven-layer classifier:
//   input -> conv(8) -> pool -> conv(16) -> pool -> conv(32) -> pool
//   -> flatten -> dense(64) -> dense(32) -> output(3, softmax)
// ReLU follows every conv and hidden dense layer.
struct ArchitectureSpec {
  std::size_t channels = 3;
  std::size_t height = 120;
  std::size_t width = 160;
  std::vector<LayerSpec> layers;

  static ArchitectureSpec standard(std::size_t height = 120, std::size_t width = 160);

  // Output shape of every layer. Throws BuildError naming the first layer
  // whose input shape it cannot accept, or whose kind is out of order.
  std::vector<Shape> layer_shapes() const;
  std::size_t parameter_count() const;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

inline constexpr std::size_t kArchitectureDepth = 11;

// Weights and bias per architecture layer; both empty for layers without
// parameters (input, pooling, flatten).
struct LayerParams {
  Tensor weights;
  Tensor bias;
  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

struct ModelParams {
  std::vector<LayerParams> layers;
  std::size_t parameter_count() const noexcept;
  bool all_finite() const noexcept;
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Model {
  ArchitectureSpec spec;
  ModelParams params;
};

// Glorot-uniform weights (limit sqrt(6 / (fan_in + fan_out))), zero biases,
// one random stream per layer keyed on (seed, layer index).
ModelParams build_network(const ArchitectureSpec& spec, std::uint64_t seed);

// Parameters of the right shapes, all zero.
ModelParams zero_params(const ArchitectureSpec& spec);

// Intermediate tensors kept by forward() for backward().
struct ForwardCache {
  std::vector<Tensor> inputs;          // input seen by each layer
  std::vector<Tensor> pre_activations; // conv/dense outputs before ReLU
};

Tensor forward(const ArchitectureSpec& spec, const ModelParams& params, const Tensor& input,
               ForwardCache* cache = nullptr);

// Gradients of the loss w.r.t. every parameter, given d(loss)/d(logits).
ModelParams backward(const ArchitectureSpec& spec, const ModelParams& params,
                     const ForwardCache& cache, const Tensor& d_logits);

struct LossAndGradients {
  double loss = 0.0;
  ModelParams gradients;
};

LossAndGradients loss_and_gradients(const ArchitectureSpec& spec, const ModelParams& params,
                                    const Tensor& input, CrackLevel label);

// Resizes (bilinear) to the model input when needed and scales to [0, 1],
// laid out [3, H, W].
Tensor image_to_tensor(const ImageRGB& image, std::size_t height, std::size_t width);

struct Prediction {
  CrackLevel level = CrackLevel::Level1;
  Tensor probabilities;  // [3], sums to 1
};

// argmax of the softmax output; ties resolve to the lower level.
Prediction predict(const Model& model, const ImageRGB& image);
Prediction predict_tensor(const Model& model, const Tensor& input);

}  // namespace thermocrack
