#include "thermocrack/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

void require_same_size(const ImageRGB& a, const ImageRGB& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ShapeError(std::string(what) + ": image sizes differ (" + std::to_string(a.width()) +
                     "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                     "x" + std::to_string(b.height()) + ")");
  }
}

}  // namespace

ImageRGB alpha_fuse(const ImageRGB& thermal_render, const ImageRGB& visible) {
  require_same_size(thermal_render, visible, "alpha_fuse");
  ImageRGB out(thermal_render.width(), thermal_render.height());
  auto a = thermal_render.bytes();
  auto b = visible.bytes();
  auto o = out.bytes();
  for (std::size_t i = 0; i < o.size(); ++i) {
    // (a + b + 1) / 2 in integers is round-half-up, which equals
    // round-half-away for non-negative sums.
    o[i] = static_cast<std::uint8_t>((static_cast<unsigned>(a[i]) + b[i] + 1U) / 2U);
  }
  return out;
}

std::vector<double> sobel_edge_strength(const ImageRGB& img) {
  const std::size_t w = img.width(), h = img.height();
  std::vector<double> lum(w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const Rgb p = img.pixel(x, y);
      lum[y * w + x] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }

  auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    x = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(w) - 1);
    y = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(h) - 1);
    return lum[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
  };

  std::vector<double> mag(w * h);
  double peak = 0.0;
  for (std::size_t yy = 0; yy < h; ++yy) {
    for (std::size_t xx = 0; xx < w; ++xx) {
      const auto x = static_cast<std::ptrdiff_t>(xx);
      const auto y = static_cast<std::ptrdiff_t>(yy);
      const double gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
      const double gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
      const double m = std::hypot(gx, gy);
      mag[yy * w + xx] = m;
      peak = std::max(peak, m);
    }
  }
  if (peak > 0.0) {
    for (double& m : mag) m /= peak;
  }
  return mag;
}

ImageRGB edge_overlay_msx(const ImageRGB& thermal_render, const ImageRGB& visible, double gain) {
  require_same_size(thermal_render, visible, "edge_overlay_msx");
  if (!(gain >= 0.0) || !std::isfinite(gain)) {
    throw DomainError("edge_overlay_msx: gain must be finite and >= 0, got " +
                      std::to_string(gain));
  }
  const std::vector<double> edges = sobel_edge_strength(visible);
  ImageRGB out(thermal_render.width(), thermal_render.height());
  auto src = thermal_render.bytes();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double boost = gain * edges[i];
    for (std::size_t c = 0; c < 3; ++c) dst[3 * i + c] = to_u8(src[3 * i + c] + boost);
  }
  return out;
}

}  // namespace thermocrack
