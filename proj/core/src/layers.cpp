#include "thermocrack/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

struct ConvGeometry {
  std::size_t in_channels;
  std::size_t out_channels;
  std::size_t height;
  std::size_t width;
};

ConvGeometry conv_geometry(const Tensor& input, const Tensor& weights) {
  if (input.rank() != 3) {
    throw ShapeError("conv2d: input must be [C,H,W], got " + shape_to_string(input.shape()));
  }
  if (weights.rank() != 4 || weights.dim(2) != kKernelSize || weights.dim(3) != kKernelSize) {
    throw ShapeError("conv2d: weights must be [C_out,C_in,3,3], got " +
                     shape_to_string(weights.shape()));
  }
  if (weights.dim(1) != input.dim(0)) {
    throw ShapeError("conv2d: weights expect " + std::to_string(weights.dim(1)) +
                     " input channels, input has " + std::to_string(input.dim(0)));
  }
  return {input.dim(0), weights.dim(0), input.dim(1), input.dim(2)};
}

// Valid [lo, hi) range of output positions p for which p + offset - 1 lies
// inside [0, n).
struct Span1d {
  std::size_t lo;
  std::size_t hi;
};

Span1d tap_range(std::size_t n, std::size_t tap) {
  // source = p + tap - 1
  const std::size_t lo = tap == 0 ? 1 : 0;
  const std::size_t hi = tap == 2 ? n - 1 : n;
  return {std::min(lo, n), std::max(std::min(hi, n), std::min(lo, n))};
}

}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& weights, const Tensor& bias) {
  const ConvGeometry g = conv_geometry(input, weights);
  require_shape(bias, {g.out_channels}, "conv2d bias");

  const std::size_t plane = g.height * g.width;
  Tensor out({g.out_channels, g.height, g.width});
  std::vector<double> acc(plane);
  const float* in = input.data().data();
  const float* w = weights.data().data();

  for (std::size_t f = 0; f < g.out_channels; ++f) {
    std::fill(acc.begin(), acc.end(), static_cast<double>(bias[f]));
    for (std::size_t c = 0; c < g.in_channels; ++c) {
      const float* src = in + c * plane;
      const float* k = w + (f * g.in_channels + c) * 9;
      for (std::size_t dy = 0; dy < 3; ++dy) {
        const Span1d ys = tap_range(g.height, dy);
        for (std::size_t dx = 0; dx < 3; ++dx) {
          const double wv = k[dy * 3 + dx];
          const Span1d xs = tap_range(g.width, dx);
          for (std::size_t y = ys.lo; y < ys.hi; ++y) {
            double* dst = acc.data() + y * g.width;
            const float* row = src + (y + dy - 1) * g.width + dx - 1;
            for (std::size_t x = xs.lo; x < xs.hi; ++x) {
              dst[x] += wv * row[x];
            }
          }
        }
      }
    }
    float* o = out.data().data() + f * plane;
    for (std::size_t i = 0; i < plane; ++i) o[i] = static_cast<float>(acc[i]);
  }
  return out;
}

LayerGradients conv2d_backward(const Tensor& input, const Tensor& weights,
                               const Tensor& upstream) {
  const ConvGeometry g = conv_geometry(input, weights);
  require_shape(upstream, {g.out_channels, g.height, g.width}, "conv2d upstream");

  const std::size_t plane = g.height * g.width;
  LayerGradients grads{Tensor(weights.shape()), Tensor({g.out_channels}), Tensor(input.shape())};
  const float* in = input.data().data();
  const float* w = weights.data().data();
  const float* up = upstream.data().data();

  for (std::size_t f = 0; f < g.out_channels; ++f) {
    const float* u = up + f * plane;
    double sum = 0.0;
    for (std::size_t i = 0; i < plane; ++i) sum += u[i];
    grads.d_bias[f] = static_cast<float>(sum);

    for (std::size_t c = 0; c < g.in_channels; ++c) {
      const float* src = in + c * plane;
      for (std::size_t dy = 0; dy < 3; ++dy) {
        const Span1d ys = tap_range(g.height, dy);
        for (std::size_t dx = 0; dx < 3; ++dx) {
          const Span1d xs = tap_range(g.width, dx);
          double acc = 0.0;
          for (std::size_t y = ys.lo; y < ys.hi; ++y) {
            const float* urow = u + y * g.width;
            const float* row = src + (y + dy - 1) * g.width + dx - 1;
            for (std::size_t x = xs.lo; x < xs.hi; ++x) {
              acc += static_cast<double>(urow[x]) * row[x];
            }
          }
          grads.d_weights[((f * g.in_channels + c) * 3 + dy) * 3 + dx] = static_cast<float>(acc);
        }
      }
    }
  }

  // d_input[c, sy, sx] = sum_f sum_taps upstream[f, sy-dy+1, sx-dx+1] * w[f,c,dy,dx]
  std::vector<double> acc(plane);
  for (std::size_t c = 0; c < g.in_channels; ++c) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t f = 0; f < g.out_channels; ++f) {
      const float* u = up + f * plane;
      const float* k = w + (f * g.in_channels + c) * 9;
      for (std::size_t dy = 0; dy < 3; ++dy) {
        const Span1d ys = tap_range(g.height, dy);
        for (std::size_t dx = 0; dx < 3; ++dx) {
          const double wv = k[dy * 3 + dx];
          const Span1d xs = tap_range(g.width, dx);
          for (std::size_t y = ys.lo; y < ys.hi; ++y) {
            const float* urow = u + y * g.width;
            double* dst = acc.data() + (y + dy - 1) * g.width + dx - 1;
            for (std::size_t x = xs.lo; x < xs.hi; ++x) {
              dst[x] += wv * urow[x];
            }
          }
        }
      }
    }
    float* d = grads.d_input.data().data() + c * plane;
    for (std::size_t i = 0; i < plane; ++i) d[i] = static_cast<float>(acc[i]);
  }
  return grads;
}

namespace {

void check_pool_input(const Tensor& input) {
  if (input.rank() != 3) {
    throw ShapeError("maxpool2d: input must be [C,H,W], got " + shape_to_string(input.shape()));
  }
  if (input.dim(1) % 2 != 0 || input.dim(2) % 2 != 0) {
    throw ShapeError("maxpool2d: height and width must be even, got " +
                     shape_to_string(input.shape()));
  }
}

// Index (within the input) of the first maximum of block (c, by, bx).
std::size_t block_argmax(const float* in, std::size_t c, std::size_t by, std::size_t bx,
                         std::size_t h, std::size_t w) {
  const std::size_t base = c * h * w;
  const std::size_t cand[4] = {base + (2 * by) * w + 2 * bx, base + (2 * by) * w + 2 * bx + 1,
                               base + (2 * by + 1) * w + 2 * bx,
                               base + (2 * by + 1) * w + 2 * bx + 1};
  std::size_t best = cand[0];
  for (std::size_t i = 1; i < 4; ++i) {
    if (in[cand[i]] > in[best]) best = cand[i];
  }
  return best;
}

}  // namespace

Tensor maxpool2d_forward(const Tensor& input) {
  check_pool_input(input);
  const std::size_t c_n = input.dim(0), h = input.dim(1), w = input.dim(2);
  Tensor out({c_n, h / 2, w / 2});
  const float* in = input.data().data();
  std::size_t o = 0;
  for (std::size_t c = 0; c < c_n; ++c)
    for (std::size_t by = 0; by < h / 2; ++by)
      for (std::size_t bx = 0; bx < w / 2; ++bx) out[o++] = in[block_argmax(in, c, by, bx, h, w)];
  return out;
}

Tensor maxpool2d_backward(const Tensor& input, const Tensor& upstream) {
  check_pool_input(input);
  const std::size_t c_n = input.dim(0), h = input.dim(1), w = input.dim(2);
  require_shape(upstream, {c_n, h / 2, w / 2}, "maxpool2d upstream");
  Tensor d_input(input.shape());
  const float* in = input.data().data();
  std::size_t o = 0;
  for (std::size_t c = 0; c < c_n; ++c)
    for (std::size_t by = 0; by < h / 2; ++by)
      for (std::size_t bx = 0; bx < w / 2; ++bx)
        d_input[block_argmax(in, c, by, bx, h, w)] = upstream[o++];
  return d_input;
}

namespace {

void check_dense(const Tensor& input, const Tensor& weights) {
  if (input.rank() != 1) {
    throw ShapeError("dense: input must be rank 1, got " + shape_to_string(input.shape()));
  }
  if (weights.rank() != 2 || weights.dim(1) != input.dim(0)) {
    throw ShapeError("dense: weights " + shape_to_string(weights.shape()) +
                     " do not match input length " + std::to_string(input.dim(0)));
  }
}

}  // namespace

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias) {
  check_dense(input, weights);
  const std::size_t n_out = weights.dim(0), n_in = weights.dim(1);
  require_shape(bias, {n_out}, "dense bias");
  Tensor out({n_out});
  const float* x = input.data().data();
  for (std::size_t j = 0; j < n_out; ++j) {
    const float* row = weights.data().data() + j * n_in;
    double acc = bias[j];
    for (std::size_t i = 0; i < n_in; ++i) acc += static_cast<double>(row[i]) * x[i];
    out[j] = static_cast<float>(acc);
  }
  return out;
}

LayerGradients dense_backward(const Tensor& input, const Tensor& weights, const Tensor& upstream) {
  check_dense(input, weights);
  const std::size_t n_out = weights.dim(0), n_in = weights.dim(1);
  require_shape(upstream, {n_out}, "dense upstream");

  LayerGradients grads{Tensor(weights.shape()), Tensor({n_out}), Tensor({n_in})};
  const float* x = input.data().data();
  std::vector<double> d_in(n_in, 0.0);
  for (std::size_t j = 0; j < n_out; ++j) {
    const float u = upstream[j];
    grads.d_bias[j] = u;
    float* dw = grads.d_weights.data().data() + j * n_in;
    const float* row = weights.data().data() + j * n_in;
    for (std::size_t i = 0; i < n_in; ++i) {
      dw[i] = u * x[i];
      d_in[i] += static_cast<double>(row[i]) * u;
    }
  }
  for (std::size_t i = 0; i < n_in; ++i) grads.d_input[i] = static_cast<float>(d_in[i]);
  return grads;
}

Tensor relu_forward(const Tensor& input) {
  Tensor out = input;
  for (float& v : out.data()) v = v > 0.0f ? v : 0.0f;
  return out;
}

Tensor relu_backward(const Tensor& input, const Tensor& upstream) {
  require_shape(upstream, input.shape(), "relu upstream");
  Tensor out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = input[i] > 0.0f ? upstream[i] : 0.0f;
  return out;
}

namespace {

std::vector<double> softmax_f64(const Tensor& logits) {
  if (logits.rank() != 1 || logits.empty()) {
    throw ShapeError("softmax: logits must be a non-empty vector, got " +
                     shape_to_string(logits.shape()));
  }
  const float peak = *std::max_element(logits.data().begin(), logits.data().end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(static_cast<double>(logits[k]) - peak);
    z += p[k];
  }
  for (double& v : p) v /= z;
  return p;
}

}  // namespace

Tensor softmax(const Tensor& logits) {
  const std::vector<double> p = softmax_f64(logits);
  Tensor out(logits.shape());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = static_cast<float>(p[k]);
  return out;
}

CrossEntropy softmax_xent(const Tensor& logits, std::size_t true_class) {
  if (logits.rank() == 1 && true_class >= logits.size()) {
    throw DomainError("softmax_xent: class index " + std::to_string(true_class) +
                      " out of range for " + std::to_string(logits.size()) + " logits");
  }
  const std::vector<double> p = softmax_f64(logits);

  // -log p[t] computed as logsumexp - shifted logit, which stays accurate when
  // p[t] is close to 1.
  const float peak = *std::max_element(logits.data().begin(), logits.data().end());
  double z = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) z += std::exp(static_cast<double>(logits[k]) - peak);

  CrossEntropy result;
  result.loss = std::log(z) - (static_cast<double>(logits[true_class]) - peak);
  if (result.loss < 0.0) result.loss = 0.0;
  result.d_logits = Tensor(logits.shape());
  for (std::size_t k = 0; k < p.size(); ++k) {
    result.d_logits[k] = static_cast<float>(p[k] - (k == true_class ? 1.0 : 0.0));
  }
  return result;
}

Tensor sgd_step(const Tensor& param, const Tensor& grad, float learning_rate) {
  if (!(learning_rate > 0.0f) || !std::isfinite(learning_rate)) {
    throw DomainError("sgd_step: learning rate must be positive and finite, got " +
                      std::to_string(learning_rate));
  }
  require_shape(grad, param.shape(), "sgd_step gradient");
  Tensor out = param;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = param[i] - learning_rate * grad[i];
  return out;
}

}  // namespace thermocrack
