#include "thermocrack/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermocrack/error.hpp"
#include "thermocrack/layers.hpp"
#include "thermocrack/preprocess.hpp"
#include "thermocrack/random.hpp"

namespace thermocrack {

std::string_view to_string(LayerKind kind) noexcept {
  switch (kind) {
    case LayerKind::Input: return "input";
    case LayerKind::Conv: return "conv";
    case LayerKind::MaxPool: return "maxpool";
    case LayerKind::Flatten: return "flatten";
    case LayerKind::Dense: return "dense";
    case LayerKind::Output: return "output";
  }
  return "unknown";
}

namespace {

constexpr LayerKind kLayerOrder[kArchitectureDepth] = {
    LayerKind::Input,   LayerKind::Conv,    LayerKind::MaxPool, LayerKind::Conv,
    LayerKind::MaxPool, LayerKind::Conv,    LayerKind::MaxPool, LayerKind::Flatten,
    LayerKind::Dense,   LayerKind::Dense,   LayerKind::Output};

bool has_params(LayerKind kind) {
  return kind == LayerKind::Conv || kind == LayerKind::Dense || kind == LayerKind::Output;
}

[[noreturn]] void build_fail(const LayerSpec& layer, std::size_t index, const std::string& what) {
  throw BuildError("layer " + std::to_string(index) + " '" + layer.name + "' (" +
                   std::string(to_string(layer.kind)) + "): " + what);
}

// Weight and bias shapes of a parameterized layer given its input shape.
std::pair<Shape, Shape> param_shapes(const LayerSpec& layer, const Shape& in) {
  if (layer.kind == LayerKind::Conv) {
    return {{layer.units, in[0], kKernelSize, kKernelSize}, {layer.units}};
  }
  return {{layer.units, in[0]}, {layer.units}};
}

}  // namespace

ArchitectureSpec ArchitectureSpec::standard(std::size_t height, std::size_t width) {
  ArchitectureSpec spec;
  spec.height = height;
  spec.width = width;
  spec.layers = {
      {LayerKind::Input, "input", 0, Activation::None},
      {LayerKind::Conv, "conv1", 8, Activation::Relu},
      {LayerKind::MaxPool, "pool1", 0, Activation::None},
      {LayerKind::Conv, "conv2", 16, Activation::Relu},
      {LayerKind::MaxPool, "pool2", 0, Activation::None},
      {LayerKind::Conv, "conv3", 32, Activation::Relu},
      {LayerKind::MaxPool, "pool3", 0, Activation::None},
      {LayerKind::Flatten, "flatten", 0, Activation::None},
      {LayerKind::Dense, "dense1", 64, Activation::Relu},
      {LayerKind::Dense, "dense2", 32, Activation::Relu},
      {LayerKind::Output, "output", kNumLevels, Activation::Softmax},
  };
  return spec;
}

std::vector<Shape> ArchitectureSpec::layer_shapes() const {
  if (layers.size() != kArchitectureDepth) {
    throw BuildError("architecture must have " + std::to_string(kArchitectureDepth) +
                     " layers, got " + std::to_string(layers.size()));
  }
  if (channels == 0 || height == 0 || width == 0) {
    throw BuildError("input dimensions must be positive");
  }
  std::vector<Shape> shapes;
  Shape cur = {channels, height, width};
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& layer = layers[i];
    if (layer.kind != kLayerOrder[i]) {
      build_fail(layer, i, "expected a " + std::string(to_string(kLayerOrder[i])) + " layer here");
    }
    if (has_params(layer.kind) && layer.units == 0) build_fail(layer, i, "unit count must be positive");
    const Activation expected_act = layer.kind == LayerKind::Output ? Activation::Softmax
                                    : (layer.kind == LayerKind::Conv || layer.kind == LayerKind::Dense)
                                        ? Activation::Relu
                                        : Activation::None;
    if (layer.activation != expected_act) build_fail(layer, i, "unsupported activation");

    switch (layer.kind) {
      case LayerKind::Input: break;
      case LayerKind::Conv: cur = {layer.units, cur[1], cur[2]}; break;
      case LayerKind::MaxPool:
        if (cur[1] % 2 != 0 || cur[2] % 2 != 0) {
          build_fail(layer, i, "cannot pool an input of shape " + shape_to_string(cur) +
                                   " (height and width must be even)");
        }
        cur = {cur[0], cur[1] / 2, cur[2] / 2};
        break;
      case LayerKind::Flatten: cur = {shape_product(cur)}; break;
      case LayerKind::Dense: cur = {layer.units}; break;
      case LayerKind::Output:
        if (layer.units != kNumLevels) {
          build_fail(layer, i, "output layer must have " + std::to_string(kNumLevels) + " units");
        }
        cur = {layer.units};
        break;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

std::size_t ArchitectureSpec::parameter_count() const {
  const std::vector<Shape> shapes = layer_shapes();
  std::size_t total = 0;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    if (!has_params(layers[i].kind)) continue;
    const auto [w, b] = param_shapes(layers[i], shapes[i - 1]);
    total += shape_product(w) + shape_product(b);
  }
  return total;
}

std::size_t ModelParams::parameter_count() const noexcept {
  std::size_t total = 0;
  for (const LayerParams& l : layers) total += l.weights.size() + l.bias.size();
  return total;
}

bool ModelParams::all_finite() const noexcept {
  return std::all_of(layers.begin(), layers.end(), [](const LayerParams& l) {
    return l.weights.all_finite() && l.bias.all_finite();
  });
}

ModelParams zero_params(const ArchitectureSpec& spec) {
  const std::vector<Shape> shapes = spec.layer_shapes();
  ModelParams params;
  params.layers.resize(spec.layers.size());
  for (std::size_t i = 1; i < spec.layers.size(); ++i) {
    if (!has_params(spec.layers[i].kind)) continue;
    const auto [w, b] = param_shapes(spec.layers[i], shapes[i - 1]);
    params.layers[i] = {Tensor(w), Tensor(b)};
  }
  return params;
}

ModelParams build_network(const ArchitectureSpec& spec, std::uint64_t seed) {
  ModelParams params = zero_params(spec);
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    Tensor& w = params.layers[i].weights;
    if (w.empty()) continue;
    std::size_t fan_in = 0, fan_out = 0;
    if (w.rank() == 4) {
      fan_in = w.dim(1) * w.dim(2) * w.dim(3);
      fan_out = w.dim(0) * w.dim(2) * w.dim(3);
    } else {
      fan_in = w.dim(1);
      fan_out = w.dim(0);
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Rng rng(mix_seed(seed, i));
    for (float& v : w.data()) v = static_cast<float>(rng.uniform(-limit, limit));
  }
  return params;
}

namespace {

void check_params(const ArchitectureSpec& spec, const ModelParams& params) {
  if (params.layers.size() != spec.layers.size()) {
    throw ShapeError("model parameters have " + std::to_string(params.layers.size()) +
                     " layers, architecture has " + std::to_string(spec.layers.size()));
  }
}

}  // namespace

Tensor forward(const ArchitectureSpec& spec, const ModelParams& params, const Tensor& input,
               ForwardCache* cache) {
  check_params(spec, params);
  require_shape(input, {spec.channels, spec.height, spec.width}, "model input");
  if (cache != nullptr) {
    cache->inputs.assign(spec.layers.size(), Tensor());
    cache->pre_activations.assign(spec.layers.size(), Tensor());
  }
  Tensor x = input;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const LayerSpec& layer = spec.layers[i];
    const LayerParams& p = params.layers[i];
    if (cache != nullptr && layer.kind != LayerKind::Input) cache->inputs[i] = x;
    switch (layer.kind) {
      case LayerKind::Input: break;
      case LayerKind::Conv:
      case LayerKind::Dense: {
        Tensor z = layer.kind == LayerKind::Conv ? conv2d_forward(x, p.weights, p.bias)
                                                 : dense_forward(x, p.weights, p.bias);
        x = relu_forward(z);
        if (cache != nullptr) cache->pre_activations[i] = std::move(z);
        break;
      }
      case LayerKind::MaxPool: x = maxpool2d_forward(x); break;
      case LayerKind::Flatten: x = x.reshaped({x.size()}); break;
      case LayerKind::Output: x = dense_forward(x, p.weights, p.bias); break;
    }
  }
  return x;
}

ModelParams backward(const ArchitectureSpec& spec, const ModelParams& params,
                     const ForwardCache& cache, const Tensor& d_logits) {
  check_params(spec, params);
  ModelParams grads;
  grads.layers.resize(spec.layers.size());
  Tensor g = d_logits;
  for (std::size_t i = spec.layers.size(); i-- > 1;) {
    const LayerSpec& layer = spec.layers[i];
    const LayerParams& p = params.layers[i];
    const Tensor& in = cache.inputs[i];
    switch (layer.kind) {
      case LayerKind::Input: break;
      case LayerKind::Output:
      case LayerKind::Dense:
      case LayerKind::Conv: {
        if (layer.kind != LayerKind::Output) g = relu_backward(cache.pre_activations[i], g);
        LayerGradients lg = layer.kind == LayerKind::Conv ? conv2d_backward(in, p.weights, g)
                                                          : dense_backward(in, p.weights, g);
        grads.layers[i] = {std::move(lg.d_weights), std::move(lg.d_bias)};
        g = std::move(lg.d_input);
        break;
      }
      case LayerKind::MaxPool: g = maxpool2d_backward(in, g); break;
      case LayerKind::Flatten: g = g.reshaped(in.shape()); break;
    }
  }
  return grads;
}

LossAndGradients loss_and_gradients(const ArchitectureSpec& spec, const ModelParams& params,
                                    const Tensor& input, CrackLevel label) {
  ForwardCache cache;
  const Tensor logits = forward(spec, params, input, &cache);
  CrossEntropy xent = softmax_xent(logits, level_index(label));
  return {xent.loss, backward(spec, params, cache, xent.d_logits)};
}

Tensor image_to_tensor(const ImageRGB& image, std::size_t height, std::size_t width) {
  const ImageRGB sized = (image.width() == width && image.height() == height)
                             ? image
                             : resize_bilinear(image, width, height);
  Tensor t({3, height, width});
  const std::size_t plane = height * width;
  auto bytes = sized.bytes();
  for (std::size_t i = 0; i < plane; ++i)
    for (std::size_t c = 0; c < 3; ++c) t[c * plane + i] = bytes[3 * i + c] / 255.0f;
  return t;
}

Prediction predict_tensor(const Model& model, const Tensor& input) {
  const Tensor logits = forward(model.spec, model.params, input);
  Prediction out;
  out.probabilities = softmax(logits);
  std::size_t best = 0;
  for (std::size_t k = 1; k < out.probabilities.size(); ++k) {
    if (out.probabilities[k] > out.probabilities[best]) best = k;
  }
  out.level = level_from_index(best);
  return out;
}

Prediction predict(const Model& model, const ImageRGB& image) {
  return predict_tensor(model, image_to_tensor(image, model.spec.height, model.spec.width));
}

}  // namespace thermocrack
