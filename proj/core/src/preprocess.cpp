#include "thermocrack/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

struct Tap {
  std::size_t i0;
  std::size_t i1;
  double frac;
};

std::vector<Tap> axis_taps(std::size_t in, std::size_t out) {
  std::vector<Tap> taps(out);
  for (std::size_t i = 0; i < out; ++i) {
    const double src = out == 1 ? static_cast<double>(in - 1) / 2.0
                                : static_cast<double>(i * (in - 1)) / static_cast<double>(out - 1);
    const auto i0 = std::min(static_cast<std::size_t>(std::floor(src)), in - 1);
    taps[i] = {i0, std::min(i0 + 1, in - 1), src - static_cast<double>(i0)};
  }
  return taps;
}

std::size_t clamp_index(std::ptrdiff_t v, std::size_t n) {
  if (v < 0) return 0;
  if (static_cast<std::size_t>(v) >= n) return n - 1;
  return static_cast<std::size_t>(v);
}

}  // namespace

ImageRGB resize_bilinear(const ImageRGB& img, std::size_t out_width, std::size_t out_height) {
  if (out_width == 0 || out_height == 0) {
    throw DomainError("resize_bilinear: target dimensions must be positive, got " +
                      std::to_string(out_width) + "x" + std::to_string(out_height));
  }
  if (out_width == img.width() && out_height == img.height()) return img;

  const std::vector<Tap> xs = axis_taps(img.width(), out_width);
  const std::vector<Tap> ys = axis_taps(img.height(), out_height);
  ImageRGB out(out_width, out_height);
  for (std::size_t y = 0; y < out_height; ++y) {
    const Tap& ty = ys[y];
    for (std::size_t x = 0; x < out_width; ++x) {
      const Tap& tx = xs[x];
      Rgb px;
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = (1.0 - tx.frac) * img.channel(tx.i0, ty.i0, c) +
                           tx.frac * img.channel(tx.i1, ty.i0, c);
        const double bottom = (1.0 - tx.frac) * img.channel(tx.i0, ty.i1, c) +
                              tx.frac * img.channel(tx.i1, ty.i1, c);
        px[c] = to_u8((1.0 - ty.frac) * top + ty.frac * bottom);
      }
      out.set_pixel(x, y, px);
    }
  }
  return out;
}

ImageRGB median_denoise(const ImageRGB& img) {
  ImageRGB out(img.width(), img.height());
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  std::array<std::uint8_t, 9> window;
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      Rgb px;
      for (std::size_t c = 0; c < 3; ++c) {
        std::size_t n = 0;
        for (std::ptrdiff_t dy = -1; dy <= 1; ++dy)
          for (std::ptrdiff_t dx = -1; dx <= 1; ++dx)
            window[n++] = img.channel(clamp_index(x + dx, img.width()),
                                      clamp_index(y + dy, img.height()), c);
        std::nth_element(window.begin(), window.begin() + 4, window.end());
        px[c] = window[4];
      }
      out.set_pixel(static_cast<std::size_t>(x), static_cast<std::size_t>(y), px);
    }
  }
  return out;
}

ImageRGB unsharp_sharpen(const ImageRGB& img, double amount) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw DomainError("unsharp_sharpen: amount must be finite and >= 0, got " +
                      std::to_string(amount));
  }
  static constexpr int kKernel[3][3] = {{1, 2, 1}, {2, 4, 2}, {1, 2, 1}};
  ImageRGB out(img.width(), img.height());
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      Rgb px;
      for (std::size_t c = 0; c < 3; ++c) {
        int blur = 0;
        for (std::ptrdiff_t dy = -1; dy <= 1; ++dy)
          for (std::ptrdiff_t dx = -1; dx <= 1; ++dx)
            blur += kKernel[dy + 1][dx + 1] * img.channel(clamp_index(x + dx, img.width()),
                                                          clamp_index(y + dy, img.height()), c);
        const double v = img.channel(static_cast<std::size_t>(x), static_cast<std::size_t>(y), c);
        px[c] = to_u8(v + amount * (v - blur / 16.0));
      }
      out.set_pixel(static_cast<std::size_t>(x), static_cast<std::size_t>(y), px);
    }
  }
  return out;
}

}  // namespace thermocrack
