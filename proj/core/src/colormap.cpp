#include "thermocrack/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "thermocrack/error.hpp"

namespace thermocrack {

Rgb palette_color(std::uint8_t index) noexcept {
  return {index, static_cast<std::uint8_t>(index / 2), static_cast<std::uint8_t>(255 - index)};
}

ImageRGB temp_to_color(const ThermalField& field) {
  const double span = field.t_max() - field.t_min();
  if (!(span > 0.0)) throw DomainError("temp_to_color: t_min must be below t_max");
  ImageRGB out(field.width(), field.height());
  for (std::size_t y = 0; y < field.height(); ++y) {
    for (std::size_t x = 0; x < field.width(); ++x) {
      const double scaled = 255.0 * (field.at(x, y) - field.t_min()) / span;
      out.set_pixel(x, y, palette_color(to_u8(scaled)));
    }
  }
  return out;
}

ThermalField color_to_temp(const ImageRGB& img, double t_min, double t_max) {
  if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw DomainError("color_to_temp: calibration bounds require t_min < t_max");
  }
  std::vector<double> temps(img.pixel_count());
  const double span = t_max - t_min;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Rgb p = img.pixel(x, y);
      const Rgb expect = palette_color(p[0]);
      if (std::abs(int{p[1]} - int{expect[1]}) > 1 || std::abs(int{p[2]} - int{expect[2]}) > 1) {
        throw MalformedColormapError(
            x, y,
            "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
                std::to_string(p[2]) + ") is not on the palette");
      }
      // Clamp guards against t_min + span * 1.0 landing one ulp outside.
      temps[y * img.width() + x] = std::clamp(t_min + (p[0] / 255.0) * span, t_min, t_max);
    }
  }
  return ThermalField(img.width(), img.height(), t_min, t_max, std::move(temps));
}

}  // namespace thermocrack
