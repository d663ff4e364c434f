#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace thermocrack {

using Rgb = std::array<std::uint8_t, 3>;

// Rounds half away from zero; the rounding rule for every 8-bit output.
inline double round_half_away(double v) noexcept { return std::round(v); }

inline std::uint8_t to_u8(double v) noexcept {
  const double r = round_half_away(v);
  return static_cast<std::uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
}

// 8-bit RGB raster, row-major, interleaved.
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(std::size_t width, std::size_t height, Rgb fill = {0, 0, 0});
  // Adopts 3 * width * height interleaved bytes; ShapeError otherwise.
  static ImageRGB from_bytes(std::size_t width, std::size_t height,
                             std::vector<std::uint8_t> interleaved);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  Rgb pixel(std::size_t x, std::size_t y) const noexcept {
    const std::uint8_t* p = bytes_.data() + 3 * (y * width_ + x);
    return {p[0], p[1], p[2]};
  }
  void set_pixel(std::size_t x, std::size_t y, Rgb v) noexcept {
    std::uint8_t* p = bytes_.data() + 3 * (y * width_ + x);
    p[0] = v[0];
    p[1] = v[1];
    p[2] = v[2];
  }
  std::uint8_t channel(std::size_t x, std::size_t y, std::size_t c) const noexcept {
    return bytes_[3 * (y * width_ + x) + c];
  }

  std::span<std::uint8_t> bytes() noexcept { return bytes_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// Per-pixel temperature map in degrees Celsius with calibration bounds.
// Invariant: t_min < t_max and every temperature lies in [t_min, t_max].
class ThermalField {
 public:
  ThermalField() = default;
  ThermalField(std::size_t width, std::size_t height, double t_min, double t_max,
               std::vector<double> temps);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }

  double at(std::size_t x, std::size_t y) const noexcept { return temps_[y * width_ + x]; }
  std::span<const double> temps() const noexcept { return temps_; }

  friend bool operator==(const ThermalField&, const ThermalField&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  double t_min_ = 0.0;
  double t_max_ = 1.0;
  std::vector<double> temps_;
};

// Boolean crack mask; true marks a crack pixel.
class CrackMask {
 public:
  CrackMask() = default;
  CrackMask(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  bool at(std::size_t x, std::size_t y) const noexcept { return bits_[y * width_ + x] != 0; }
  void set(std::size_t x, std::size_t y, bool v = true) noexcept {
    bits_[y * width_ + x] = v ? 1 : 0;
  }
  std::size_t count() const noexcept;

  friend bool operator==(const CrackMask&, const CrackMask&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace thermocrack
