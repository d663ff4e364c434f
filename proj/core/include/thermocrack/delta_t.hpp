#pragma once

#include <cstddef>

#include "thermocrack/image.hpp"

namespace thermocrack {

inline constexpr std::size_t kSurroundRadius = 3;

// Square (8-connected, Chebyshev) dilation clipped to the image.
CrackMask dilate(const CrackMask& mask, std::size_t radius);

// Pixels within `radius` of the crack that are not crack pixels.
CrackMask surroundings_ring(const CrackMask& mask, std::size_t radius = kSurroundRadius);

// |mean(T over crack) - mean(T over surroundings ring)|.
// DegenerateGeometryError on an empty mask or empty ring; ShapeError on a
// size mismatch.
double compute_delta_t(const ThermalField& field, const CrackMask& mask);

}  // namespace thermocrack
