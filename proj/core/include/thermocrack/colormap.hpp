#pragma once

#include <cstdint>

#include "thermocrack/image.hpp"

namespace thermocrack {

// Injective radiometric lookup: palette index i in 0..255 maps to
// (R = i, G = floor(i / 2), B = 255 - i). Decoding reads R and checks that G
// and B agree with it to within one count.
Rgb palette_color(std::uint8_t index) noexcept;

ImageRGB temp_to_color(const ThermalField& field);

// Throws DomainError when t_min >= t_max, MalformedColormapError (naming the
// first offending pixel in row-major order) when a pixel is off-palette.
ThermalField color_to_temp(const ImageRGB& img, double t_min, double t_max);

}  // namespace thermocrack
