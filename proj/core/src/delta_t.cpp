#include "thermocrack/delta_t.hpp"

#include <algorithm>
#include <cmath>

#include "thermocrack/error.hpp"

namespace thermocrack {

CrackMask dilate(const CrackMask& mask, std::size_t radius) {
  const std::size_t w = mask.width(), h = mask.height();
  // Separable: a square structuring element is a row pass then a column pass.
  CrackMask rows(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const std::size_t lo = x >= radius ? x - radius : 0;
      const std::size_t hi = std::min(w - 1, x + radius);
      for (std::size_t xx = lo; xx <= hi; ++xx) rows.set(xx, y);
    }
  CrackMask out(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      if (!rows.at(x, y)) continue;
      const std::size_t lo = y >= radius ? y - radius : 0;
      const std::size_t hi = std::min(h - 1, y + radius);
      for (std::size_t yy = lo; yy <= hi; ++yy) out.set(x, yy);
    }
  return out;
}

CrackMask surroundings_ring(const CrackMask& mask, std::size_t radius) {
  CrackMask ring = dilate(mask, radius);
  for (std::size_t y = 0; y < mask.height(); ++y)
    for (std::size_t x = 0; x < mask.width(); ++x)
      if (mask.at(x, y)) ring.set(x, y, false);
  return ring;
}

double compute_delta_t(const ThermalField& field, const CrackMask& mask) {
  if (field.width() != mask.width() || field.height() != mask.height()) {
    throw ShapeError("compute_delta_t: mask size does not match thermal field");
  }
  const CrackMask ring = surroundings_ring(mask);
  double crack_sum = 0.0, ring_sum = 0.0;
  std::size_t crack_n = 0, ring_n = 0;
  for (std::size_t y = 0; y < field.height(); ++y)
    for (std::size_t x = 0; x < field.width(); ++x) {
      if (mask.at(x, y)) {
        crack_sum += field.at(x, y);
        ++crack_n;
      } else if (ring.at(x, y)) {
        ring_sum += field.at(x, y);
        ++ring_n;
      }
    }
  if (crack_n == 0) throw DegenerateGeometryError("compute_delta_t: crack mask is empty");
  if (ring_n == 0) throw DegenerateGeometryError("compute_delta_t: surroundings ring is empty");
  return std::abs(crack_sum / static_cast<double>(crack_n) - ring_sum / static_cast<double>(ring_n));
}

}  // namespace thermocrack
