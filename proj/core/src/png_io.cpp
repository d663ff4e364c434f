#include "thermocrack/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError(path, std::strerror(errno));
  return f;
}

struct RawPng {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int bit_depth = 8;
  int channels = 3;
  std::vector<std::uint8_t> bytes;  // big-endian samples for 16-bit
};

// libpng reports errors through longjmp; keep every C++ object with a
// destructor outside of the setjmp frames below.
bool write_raw(std::FILE* fp, const RawPng& raw, int color_type, char* message) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) {
    std::strcpy(message, "png_create_write_struct failed");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    std::strcpy(message, "png_create_info_struct failed");
    return false;
  }
  const std::size_t stride =
      static_cast<std::size_t>(raw.width) * raw.channels * (raw.bit_depth / 8);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::strcpy(message, "libpng write error");
    return false;
  }
  png_init_io(png, fp);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, raw.width, raw.height, raw.bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::uint32_t y = 0; y < raw.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(raw.bytes.data() + y * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

bool read_header(png_structp png, png_infop info, std::FILE* fp, bool keep_16,
                 std::uint32_t* width, std::uint32_t* height, int* bit_depth, int* channels) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, fp);
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (!keep_16 && depth == 16) png_set_strip_16(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  *width = png_get_image_width(png, info);
  *height = png_get_image_height(png, info);
  *bit_depth = png_get_bit_depth(png, info);
  *channels = png_get_channels(png, info);
  return true;
}

bool read_rows(png_structp png, png_infop info, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_image(png, rows);
  png_read_end(png, info);
  return true;
}

RawPng read_raw(const std::filesystem::path& path, bool keep_16) {
  FilePtr fp = open_file(path, "rb");
  png_byte signature[8] = {};
  if (std::fread(signature, 1, 8, fp.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw FormatError(path.string() + ": not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path, "cannot allocate PNG reader");
  }
  png_set_sig_bytes(png, 8);

  RawPng raw;
  if (!read_header(png, info, fp.get(), keep_16, &raw.width, &raw.height, &raw.bit_depth,
                   &raw.channels)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path.string() + ": corrupt PNG header");
  }
  const std::size_t stride =
      static_cast<std::size_t>(raw.width) * raw.channels * (raw.bit_depth / 8);
  raw.bytes.resize(stride * raw.height);
  std::vector<png_bytep> rows(raw.height);
  for (std::uint32_t y = 0; y < raw.height; ++y) rows[y] = raw.bytes.data() + y * stride;
  const bool ok = read_rows(png, info, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  if (!ok) throw FormatError(path.string() + ": corrupt PNG image data");
  return raw;
}

void write_raw_file(const std::filesystem::path& path, const RawPng& raw, int color_type) {
  FilePtr fp = open_file(path, "wb");
  char message[128] = {};
  if (!write_raw(fp.get(), raw, color_type, message)) throw IoError(path, message);
  if (std::fflush(fp.get()) != 0) throw IoError(path, std::strerror(errno));
}

}  // namespace

void write_png(const std::filesystem::path& path, const ImageRGB& img) {
  RawPng raw;
  raw.width = static_cast<std::uint32_t>(img.width());
  raw.height = static_cast<std::uint32_t>(img.height());
  raw.bytes.assign(img.bytes().begin(), img.bytes().end());
  write_raw_file(path, raw, PNG_COLOR_TYPE_RGB);
}

ImageRGB read_png(const std::filesystem::path& path) {
  RawPng raw = read_raw(path, false);
  if (raw.channels == 3) return ImageRGB::from_bytes(raw.width, raw.height, std::move(raw.bytes));
  // Grayscale: replicate into three channels.
  std::vector<std::uint8_t> rgb(3 * static_cast<std::size_t>(raw.width) * raw.height);
  for (std::size_t i = 0; i < rgb.size() / 3; ++i) {
    rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = raw.bytes[i];
  }
  return ImageRGB::from_bytes(raw.width, raw.height, std::move(rgb));
}

std::filesystem::path thermal_sidecar_path(const std::filesystem::path& png_path) {
  std::filesystem::path p = png_path;
  p.replace_extension(".json");
  return p;
}

void write_thermal(const std::filesystem::path& png_path, const ThermalField& field) {
  RawPng raw;
  raw.width = static_cast<std::uint32_t>(field.width());
  raw.height = static_cast<std::uint32_t>(field.height());
  raw.bit_depth = 16;
  raw.channels = 1;
  raw.bytes.resize(2 * field.temps().size());
  const double span = field.t_max() - field.t_min();
  for (std::size_t i = 0; i < field.temps().size(); ++i) {
    const double v = std::clamp(std::round(65535.0 * (field.temps()[i] - field.t_min()) / span),
                                0.0, 65535.0);
    const auto q = static_cast<std::uint16_t>(v);
    raw.bytes[2 * i] = static_cast<std::uint8_t>(q >> 8);
    raw.bytes[2 * i + 1] = static_cast<std::uint8_t>(q & 0xff);
  }
  write_raw_file(png_path, raw, PNG_COLOR_TYPE_GRAY);

  const std::filesystem::path meta = thermal_sidecar_path(png_path);
  std::ofstream out(meta, std::ios::binary);
  if (!out) throw IoError(meta, "cannot open for writing");
  nlohmann::ordered_json doc;
  doc["t_min"] = field.t_min();
  doc["t_max"] = field.t_max();
  out << doc.dump() << '\n';
  if (!out) throw IoError(meta, "write failed");
}

ThermalField read_thermal(const std::filesystem::path& png_path) {
  const std::filesystem::path meta = thermal_sidecar_path(png_path);
  std::ifstream in(meta, std::ios::binary);
  if (!in) throw IoError(meta, "cannot open thermal sidecar");
  double t_min = 0.0, t_max = 0.0;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    t_min = doc.at("t_min").get<double>();
    t_max = doc.at("t_max").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(meta.string() + ": invalid thermal sidecar: " + e.what());
  }
  if (!(t_min < t_max)) throw FormatError(meta.string() + ": t_min must be below t_max");

  const RawPng raw = read_raw(png_path, true);
  if (raw.channels != 1 || raw.bit_depth != 16) {
    throw FormatError(png_path.string() + ": thermal PNG must be 16-bit grayscale");
  }
  std::vector<double> temps(static_cast<std::size_t>(raw.width) * raw.height);
  const double span = t_max - t_min;
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const unsigned q = (unsigned{raw.bytes[2 * i]} << 8) | raw.bytes[2 * i + 1];
    temps[i] = std::clamp(t_min + span * (q / 65535.0), t_min, t_max);
  }
  return ThermalField(raw.width, raw.height, t_min, t_max, std::move(temps));
}

}  // namespace thermocrack
