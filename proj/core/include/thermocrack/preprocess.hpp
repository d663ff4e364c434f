#pragma once

#include <cstddef>

#include "thermocrack/image.hpp"

namespace thermocrack {

// Align-corners bilinear resampling, channels independent, 8-bit rounding
// half away from zero. A single-sample axis samples the source center.
ImageRGB resize_bilinear(const ImageRGB& img, std::size_t out_width, std::size_t out_height);

// Per-channel 3x3 median with replicated borders.
ImageRGB median_denoise(const ImageRGB& img);

// Unsharp mask against a 3x3 binomial blur (replicated borders):
// out = clamp(I + amount * (I - blur(I)), 0, 255).
ImageRGB unsharp_sharpen(const ImageRGB& img, double amount = 1.0);

}  // namespace thermocrack
