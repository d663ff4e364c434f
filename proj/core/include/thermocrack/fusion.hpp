#pragma once

#include "thermocrack/image.hpp"

namespace thermocrack {

// 50/50 blend of a thermal render over a visible photograph of the same
// scene: out = round_half_away((thermal + visible) / 2) per channel.
ImageRGB alpha_fuse(const ImageRGB& thermal_render, const ImageRGB& visible);

inline constexpr double kDefaultEdgeGain = 64.0;

// MSX-style edge emboss. The visible image's luminance
// (0.299 R + 0.587 G + 0.114 B) is Sobel-filtered with replicated borders,
// the gradient magnitude is divided by its image maximum, and
// gain * magnitude is added to every thermal channel (clamped to 0..255).
ImageRGB edge_overlay_msx(const ImageRGB& thermal_render, const ImageRGB& visible,
                          double gain = kDefaultEdgeGain);

// Normalized Sobel magnitude in [0, 1], row-major. All zeros on a flat image.
std::vector<double> sobel_edge_strength(const ImageRGB& img);

}  // namespace thermocrack
