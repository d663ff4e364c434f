#pragma once

#include <cstddef>

#include "thermocrack/tensor.hpp"

// Forward and backward kernels for the layer kinds used by the crack
// classifier. All kernels are pure: they read their operands and return new
// tensors. Storage is float32; dot products accumulate in float64.
namespace thermocrack {

struct LayerGradients {
  Tensor d_weights;
  Tensor d_bias;
  Tensor d_input;
};

inline constexpr std::size_t kKernelSize = 3;

// 3x3 convolution, stride 1, zero "same" padding.
//   input [C_in,H,W], weights [C_out,C_in,3,3], bias [C_out] -> [C_out,H,W]
Tensor conv2d_forward(const Tensor& input, const Tensor& weights, const Tensor& bias);
LayerGradients conv2d_backward(const Tensor& input, const Tensor& weights,
                               const Tensor& upstream);

// 2x2 max pooling, stride 2. H and W must be even.
Tensor maxpool2d_forward(const Tensor& input);
// Routes each upstream value to the first maximum of its block (row-major).
Tensor maxpool2d_backward(const Tensor& input, const Tensor& upstream);

// Fully connected: input [N_in], weights [N_out,N_in], bias [N_out] -> [N_out]
Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias);
LayerGradients dense_backward(const Tensor& input, const Tensor& weights,
                              const Tensor& upstream);

Tensor relu_forward(const Tensor& input);
// Derivative at exactly zero is taken as zero.
Tensor relu_backward(const Tensor& input, const Tensor& upstream);

Tensor softmax(const Tensor& logits);

struct CrossEntropy {
  double loss = 0.0;
  Tensor d_logits;
};

// Softmax cross-entropy against a class index, max-shifted for stability.
CrossEntropy softmax_xent(const Tensor& logits, std::size_t true_class);

// param - learning_rate * grad; learning_rate must be > 0.
Tensor sgd_step(const Tensor& param, const Tensor& grad, float learning_rate);

}  // namespace thermocrack
