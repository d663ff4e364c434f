#include <gtest/gtest.h>

#include <functional>

#include "gradcheck.hpp"
#include "oracles.hpp"
#include "thermocrack/layers.hpp"

namespace thermocrack {
namespace {

// Linear probe loss L = sum(c * y) so that dL/dy = c exactly.
double probe(const Tensor& y, const Tensor& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += double(y[i]) * c[i];
  return s;
}

void expect_matches_fd(Tensor& param, const Tensor& analytic, const std::function<double()>& loss,
                       float h = 1e-3f) {
  for (std::size_t i = 0; i < param.size(); ++i) {
    const float original = param[i];
    param[i] = original + h;
    const double up = loss();
    param[i] = original - h;
    const double down = loss();
    param[i] = original;
    const double numeric = (up - down) / (double(original + h) - double(original - h));
    EXPECT_TRUE(gradcheck::within(analytic[i], numeric, {}))
        << "index " << i << " analytic " << analytic[i] << " numeric " << numeric;
  }
}

TEST(Gradients, Conv2dAllOperands) {
  Rng rng(13);
  // Image-range input and Glorot-range kernel, so float32 rounding of the
  // outputs stays well below the FD tolerance.
  Tensor x = oracle::random_tensor({3, 6, 5}, rng, 0.0, 1.0);
  Tensor w = oracle::random_tensor({4, 3, 3, 3}, rng, -0.3, 0.3);
  Tensor b = oracle::random_tensor({4}, rng);
  Tensor c = oracle::random_tensor({4, 6, 5}, rng);
  const LayerGradients g = conv2d_backward(x, w, c);
  auto loss = [&] { return probe(conv2d_forward(x, w, b), c); };
  expect_matches_fd(x, g.d_input, loss);
  expect_matches_fd(w, g.d_weights, loss);
  expect_matches_fd(b, g.d_bias, loss);
}

TEST(Gradients, DenseAllOperands) {
  Rng rng(17);
  Tensor x = oracle::random_tensor({12}, rng);
  Tensor w = oracle::random_tensor({5, 12}, rng);
  Tensor b = oracle::random_tensor({5}, rng);
  Tensor c = oracle::random_tensor({5}, rng);
  const LayerGradients g = dense_backward(x, w, c);
  auto loss = [&] { return probe(dense_forward(x, w, b), c); };
  expect_matches_fd(x, g.d_input, loss);
  expect_matches_fd(w, g.d_weights, loss);
  expect_matches_fd(b, g.d_bias, loss);
}

TEST(Gradients, MaxPoolAwayFromTies) {
  Rng rng(19);
  // Distinct values spaced well beyond h so no probe changes an argmax.
  Tensor x({2, 4, 4});
  std::vector<float> values(x.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = 0.1f * float(i);
  for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[rng.below(i)]);
  std::copy(values.begin(), values.end(), x.data().begin());
  Tensor c = oracle::random_tensor({2, 2, 2}, rng);
  const Tensor g = maxpool2d_backward(x, c);
  expect_matches_fd(x, g, [&] { return probe(maxpool2d_forward(x), c); });
}

TEST(Gradients, ReluAwayFromZero) {
  Rng rng(23);
  Tensor x = oracle::random_tensor({20}, rng);
  for (float& v : x.data()) v = v >= 0.0f ? v + 0.05f : v - 0.05f;
  Tensor c = oracle::random_tensor({20}, rng);
  expect_matches_fd(x, relu_backward(x, c), [&] { return probe(relu_forward(x), c); });
}

TEST(Gradients, SoftmaxCrossEntropyLogits) {
  Rng rng(29);
  for (std::size_t k = 0; k < 3; ++k) {
    Tensor logits = oracle::random_tensor({3}, rng, -3.0, 3.0);
    const Tensor g = softmax_xent(logits, k).d_logits;
    expect_matches_fd(logits, g, [&] { return softmax_xent(logits, k).loss; });
  }
}

TEST(Gradients, FullNetworkSmallInput) {
  const ArchitectureSpec spec = ArchitectureSpec::standard(16, 16);
  Rng rng(31);
  const Tensor x = oracle::random_tensor({3, 16, 16}, rng, 0.0, 1.0);
  // Strided subset here; the acceptance suite checks every partial.
  const gradcheck::Outcome r =
      gradcheck::check_network(spec, build_network(spec, 31), x, CrackLevel::Level3, 1e-3f, {}, 5);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GT(r.checked, 3000u);
  EXPECT_LT(r.kinks, r.checked / 20);
}

}  // namespace
}  // namespace thermocrack
