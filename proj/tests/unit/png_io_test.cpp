#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include <png.h>

#include "oracles.hpp"
#include "scratch.hpp"
#include "thermocrack/error.hpp"
#include "thermocrack/png_io.hpp"

namespace thermocrack {
namespace {

using testing::ScratchDir;

TEST(PngIo, RgbRoundtripIsExact) {
  ScratchDir dir("png_rgb");
  Rng rng(1);
  const ImageRGB img = oracle::random_image(37, 21, rng);
  write_png(dir / "a.png", img);
  EXPECT_EQ(read_png(dir / "a.png"), img);
}

TEST(PngIo, GrayscaleIsReplicatedOnRead) {
  ScratchDir dir("png_gray");
  const auto path = dir / "g.png";
  // Written through libpng directly as an independent encoder.
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 3;
  image.height = 2;
  image.format = PNG_FORMAT_GRAY;
  const std::uint8_t px[6] = {0, 50, 100, 150, 200, 250};
  ASSERT_TRUE(png_image_write_to_file(&image, path.c_str(), 0, px, 0, nullptr));
  const ImageRGB img = read_png(path);
  ASSERT_EQ(img.width(), 3u);
  EXPECT_EQ(img.pixel(1, 1), (Rgb{200, 200, 200}));
}

TEST(PngIo, MissingAndCorruptFiles) {
  ScratchDir dir("png_bad");
  EXPECT_THROW(read_png(dir / "missing.png"), IoError);
  std::ofstream(dir / "junk.png") << "definitely not a png";
  EXPECT_THROW(read_png(dir / "junk.png"), Error);
  EXPECT_THROW(write_png(dir / "no" / "such" / "dir.png", ImageRGB(2, 2)), IoError);
}

TEST(PngIo, ThermalRoundtripWithinOneStep) {
  ScratchDir dir("png_thermal");
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const double lo = rng.uniform(-10.0, 20.0), hi = lo + rng.uniform(1.0, 40.0);
    std::vector<double> t(23 * 17);
    for (double& v : t) v = rng.uniform(lo, hi);
    t[0] = lo;
    t[1] = hi;
    const ThermalField f(23, 17, lo, hi, t);
    const auto path = dir / ("t" + std::to_string(trial) + ".png");
    write_thermal(path, f);
    EXPECT_TRUE(std::filesystem::exists(thermal_sidecar_path(path)));
    const ThermalField back = read_thermal(path);
    EXPECT_EQ(back.t_min(), lo);
    EXPECT_EQ(back.t_max(), hi);
    const double step = (hi - lo) / 65535.0;
    for (std::size_t i = 0; i < t.size(); ++i) ASSERT_LE(std::abs(back.temps()[i] - t[i]), step);
  }
}

TEST(PngIo, ThermalNeedsSidecar) {
  ScratchDir dir("png_sidecar");
  const auto path = dir / "t.png";
  write_thermal(path, ThermalField(2, 2, 0.0, 1.0, {0.0, 0.25, 0.5, 1.0}));
  std::filesystem::remove(thermal_sidecar_path(path));
  EXPECT_THROW(read_thermal(path), IoError);
  EXPECT_EQ(thermal_sidecar_path("x/y/t.png"), std::filesystem::path("x/y/t.json"));
}

}  // namespace
}  // namespace thermocrack
