#include "thermocrack/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

void check_dims(std::size_t width, std::size_t height, const char* what) {
  if (width == 0 || height == 0) {
    throw DomainError(std::string(what) + ": dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

ImageRGB::ImageRGB(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height) {
  check_dims(width, height, "ImageRGB");
  bytes_.resize(3 * width * height);
  for (std::size_t i = 0; i < width * height; ++i) {
    bytes_[3 * i] = fill[0];
    bytes_[3 * i + 1] = fill[1];
    bytes_[3 * i + 2] = fill[2];
  }
}

ImageRGB ImageRGB::from_bytes(std::size_t width, std::size_t height,
                              std::vector<std::uint8_t> interleaved) {
  check_dims(width, height, "ImageRGB");
  if (interleaved.size() != 3 * width * height) {
    throw ShapeError("ImageRGB: expected " + std::to_string(3 * width * height) +
                     " bytes, got " + std::to_string(interleaved.size()));
  }
  ImageRGB img;
  img.width_ = width;
  img.height_ = height;
  img.bytes_ = std::move(interleaved);
  return img;
}

ThermalField::ThermalField(std::size_t width, std::size_t height, double t_min, double t_max,
                           std::vector<double> temps)
    : width_(width), height_(height), t_min_(t_min), t_max_(t_max), temps_(std::move(temps)) {
  check_dims(width, height, "ThermalField");
  if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw DomainError("ThermalField: calibration bounds require t_min < t_max, got [" +
                      std::to_string(t_min) + ", " + std::to_string(t_max) + "]");
  }
  if (temps_.size() != width * height) {
    throw ShapeError("ThermalField: expected " + std::to_string(width * height) +
                     " temperatures, got " + std::to_string(temps_.size()));
  }
  for (std::size_t i = 0; i < temps_.size(); ++i) {
    if (!(temps_[i] >= t_min && temps_[i] <= t_max)) {
      throw DomainError("ThermalField: temperature " + std::to_string(temps_[i]) +
                        " at index " + std::to_string(i) + " outside calibration bounds");
    }
  }
}

CrackMask::CrackMask(std::size_t width, std::size_t height) : width_(width), height_(height) {
  check_dims(width, height, "CrackMask");
  bits_.assign(width * height, 0);
}

std::size_t CrackMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace thermocrack
