#pragma once

#include <filesystem>

#include "thermocrack/image.hpp"

namespace thermocrack {

// 8-bit RGB PNG. Reading accepts any PNG libpng can decode and converts it
// to 8-bit RGB (palette expanded, 16-bit stripped, alpha dropped).
void write_png(const std::filesystem::path& path, const ImageRGB& img);
ImageRGB read_png(const std::filesystem::path& path);

// Thermal fields are stored as 16-bit grayscale PNG,
//   v = round(65535 * (T - t_min) / (t_max - t_min)),
// plus a JSON sidecar {"t_min": .., "t_max": ..} at sidecar_path(png).
std::filesystem::path thermal_sidecar_path(const std::filesystem::path& png_path);
void write_thermal(const std::filesystem::path& png_path, const ThermalField& field);
ThermalField read_thermal(const std::filesystem::path& png_path);

}  // namespace thermocrack
