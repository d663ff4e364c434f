#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "thermocrack/colormap.hpp"
#include "thermocrack/delta_t.hpp"
#include "thermocrack/error.hpp"
#include "thermocrack/fusion.hpp"
#include "thermocrack/preprocess.hpp"

namespace thermocrack {
namespace {

ImageRGB gray_row(std::initializer_list<std::uint8_t> values, std::size_t height = 1) {
  ImageRGB img(values.size(), height);
  for (std::size_t y = 0; y < height; ++y) {
    std::size_t x = 0;
    for (std::uint8_t v : values) img.set_pixel(x++, y, {v, v, v});
  }
  return img;
}

ThermalField flat_field(std::size_t w, std::size_t h, double t, double lo = 0.0, double hi = 40.0) {
  return ThermalField(w, h, lo, hi, std::vector<double>(w * h, t));
}

TEST(Image, RoundingIsHalfAwayFromZero) {
  EXPECT_EQ(to_u8(0.5), 1);
  EXPECT_EQ(to_u8(1.5), 2);
  EXPECT_EQ(to_u8(2.5), 3);
  EXPECT_EQ(to_u8(-3.0), 0);
  EXPECT_EQ(to_u8(300.0), 255);
}

TEST(Image, ThermalFieldInvariants) {
  EXPECT_THROW(ThermalField(2, 1, 5.0, 5.0, {5.0, 5.0}), DomainError);
  EXPECT_THROW(ThermalField(2, 1, 0.0, 1.0, {0.5, 1.5}), DomainError);
  EXPECT_THROW(ThermalField(2, 2, 0.0, 1.0, {0.5}), ShapeError);
}

TEST(Resize, ClosedFormRow) {
  const ImageRGB out = resize_bilinear(gray_row({0, 255}), 4, 1);
  ASSERT_EQ(out.width(), 4u);
  EXPECT_EQ(out.pixel(0, 0)[0], 0);
  EXPECT_EQ(out.pixel(1, 0)[0], 85);
  EXPECT_EQ(out.pixel(2, 0)[0], 170);
  EXPECT_EQ(out.pixel(3, 0)[0], 255);
}

TEST(Resize, ConstantStaysConstantAndIdentityIsExact) {
  ImageRGB c(7, 5, {12, 34, 56});
  EXPECT_EQ(resize_bilinear(c, 13, 2), ImageRGB(13, 2, {12, 34, 56}));
  EXPECT_EQ(resize_bilinear(c, 1, 1), ImageRGB(1, 1, {12, 34, 56}));
  Rng rng(3);
  const ImageRGB r = oracle::random_image(9, 6, rng);
  EXPECT_EQ(resize_bilinear(r, 9, 6), r);
  EXPECT_THROW(resize_bilinear(r, 0, 4), DomainError);
}

TEST(Resize, MatchesDirectInterpolation) {
  Rng rng(5);
  const ImageRGB src = oracle::random_image(5, 4, rng);
  const ImageRGB out = resize_bilinear(src, 8, 7);
  for (std::size_t y = 0; y < 7; ++y)
    for (std::size_t x = 0; x < 8; ++x)
      for (std::size_t c = 0; c < 3; ++c) {
        const double sx = x * 4.0 / 7.0, sy = y * 3.0 / 6.0;
        const std::size_t x0 = std::min<std::size_t>(std::size_t(sx), 3);
        const std::size_t y0 = std::min<std::size_t>(std::size_t(sy), 2);
        const double fx = sx - x0, fy = sy - y0;
        const double v = (1 - fx) * (1 - fy) * src.channel(x0, y0, c) +
                         fx * (1 - fy) * src.channel(x0 + 1, y0, c) +
                         (1 - fx) * fy * src.channel(x0, y0 + 1, c) +
                         fx * fy * src.channel(x0 + 1, y0 + 1, c);
        EXPECT_NEAR(out.channel(x, y, c), v, 0.5 + 1e-9);
      }
}

TEST(Median, RejectsImpulseAndMatchesSortOracle) {
  ImageRGB flat(5, 5, {5, 5, 5});
  ImageRGB spiked = flat;
  spiked.set_pixel(2, 2, {99, 99, 99});
  EXPECT_EQ(median_denoise(spiked), flat);
  EXPECT_EQ(median_denoise(flat), flat);

  Rng rng(7);
  const ImageRGB img = oracle::random_image(11, 9, rng);
  const ImageRGB out = median_denoise(img);
  for (long y = 0; y < 9; ++y)
    for (long x = 0; x < 11; ++x)
      for (std::size_t c = 0; c < 3; ++c) {
        std::vector<int> n;
        for (long dy = -1; dy <= 1; ++dy)
          for (long dx = -1; dx <= 1; ++dx) n.push_back(oracle::replicated(img, x + dx, y + dy, c));
        std::sort(n.begin(), n.end());
        ASSERT_EQ(out.channel(x, y, c), n[4]) << x << "," << y;
      }
}

TEST(Sharpen, EdgeOvershootIsClipped) {
  const ImageRGB img = gray_row({0, 0, 255, 255}, 3);
  const ImageRGB out = unsharp_sharpen(img, 1.0);
  for (std::size_t y = 0; y < 3; ++y) {
    EXPECT_EQ(out.pixel(1, y)[0], 0);
    EXPECT_EQ(out.pixel(2, y)[0], 255);
    EXPECT_EQ(out.pixel(0, y)[0], 0);
    EXPECT_EQ(out.pixel(3, y)[0], 255);
  }
}

TEST(Sharpen, IdentityCases) {
  ImageRGB c(6, 4, {80, 120, 200});
  EXPECT_EQ(unsharp_sharpen(c), c);
  Rng rng(9);
  const ImageRGB r = oracle::random_image(6, 4, rng);
  EXPECT_EQ(unsharp_sharpen(r, 0.0), r);
  EXPECT_THROW(unsharp_sharpen(r, -1.0), DomainError);
}

TEST(Sharpen, MatchesKernelOracle) {
  Rng rng(10);
  const ImageRGB img = oracle::random_image(7, 6, rng);
  const ImageRGB out = unsharp_sharpen(img, 0.7);
  const int k[3][3] = {{1, 2, 1}, {2, 4, 2}, {1, 2, 1}};
  for (long y = 0; y < 6; ++y)
    for (long x = 0; x < 7; ++x)
      for (std::size_t c = 0; c < 3; ++c) {
        double blur = 0.0;
        for (long dy = -1; dy <= 1; ++dy)
          for (long dx = -1; dx <= 1; ++dx)
            blur += k[dy + 1][dx + 1] * oracle::replicated(img, x + dx, y + dy, c);
        blur /= 16.0;
        const double i = img.channel(x, y, c);
        EXPECT_EQ(out.channel(x, y, c), to_u8(i + 0.7 * (i - blur)));
      }
}

TEST(Fusion, AlphaFuseExamples) {
  EXPECT_EQ(alpha_fuse(ImageRGB(1, 1, {200, 0, 0}), ImageRGB(1, 1, {0, 100, 0})).pixel(0, 0),
            (Rgb{100, 50, 0}));
  EXPECT_EQ(alpha_fuse(ImageRGB(1, 1, {1, 1, 1}), ImageRGB(1, 1, {0, 0, 0})).pixel(0, 0),
            (Rgb{1, 1, 1}));
  Rng rng(11);
  const ImageRGB a = oracle::random_image(8, 5, rng), b = oracle::random_image(8, 5, rng);
  EXPECT_EQ(alpha_fuse(a, a), a);
  EXPECT_EQ(alpha_fuse(a, b), alpha_fuse(b, a));
  EXPECT_THROW(alpha_fuse(a, ImageRGB(5, 8)), ShapeError);
}

TEST(Fusion, ExhaustivePairSweep) {
  // Every (thermal, visible) byte pair in one channel.
  ImageRGB t(256, 256), v(256, 256);
  for (std::size_t y = 0; y < 256; ++y)
    for (std::size_t x = 0; x < 256; ++x) {
      const auto a = std::uint8_t(x), b = std::uint8_t(y);
      t.set_pixel(x, y, {a, b, a});
      v.set_pixel(x, y, {b, a, a});
    }
  const ImageRGB out = alpha_fuse(t, v);
  for (std::size_t y = 0; y < 256; ++y)
    for (std::size_t x = 0; x < 256; ++x) {
      const int expect = int(std::floor((double(x) + double(y)) / 2.0 + 0.5));
      ASSERT_EQ(out.channel(x, y, 0), expect);
      ASSERT_EQ(out.channel(x, y, 1), expect);
      ASSERT_EQ(out.channel(x, y, 2), x);
    }
}

// Direct Sobel evaluation on luminance, normalized by the maximum.
std::vector<double> sobel_oracle(const ImageRGB& img) {
  const long w = long(img.width()), h = long(img.height());
  auto lum = [&](long x, long y) {
    return 0.299 * oracle::replicated(img, x, y, 0) + 0.587 * oracle::replicated(img, x, y, 1) +
           0.114 * oracle::replicated(img, x, y, 2);
  };
  std::vector<double> m(std::size_t(w * h));
  double peak = 0.0;
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      const double gx = (lum(x + 1, y - 1) + 2 * lum(x + 1, y) + lum(x + 1, y + 1)) -
                        (lum(x - 1, y - 1) + 2 * lum(x - 1, y) + lum(x - 1, y + 1));
      const double gy = (lum(x - 1, y + 1) + 2 * lum(x, y + 1) + lum(x + 1, y + 1)) -
                        (lum(x - 1, y - 1) + 2 * lum(x, y - 1) + lum(x + 1, y - 1));
      m[std::size_t(y * w + x)] = std::hypot(gx, gy);
      peak = std::max(peak, m[std::size_t(y * w + x)]);
    }
  if (peak > 0)
    for (double& v : m) v /= peak;
  return m;
}

TEST(Msx, VerticalStepBrightensOnlyEdgeBand) {
  ImageRGB visible(8, 4, {0, 0, 0});
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 4; x < 8; ++x) visible.set_pixel(x, y, {200, 200, 200});
  const ImageRGB thermal(8, 4, {10, 20, 30});
  const ImageRGB out = edge_overlay_msx(thermal, visible, 64.0);
  const std::vector<double> e = sobel_oracle(visible);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 8; ++x) {
      const bool band = x == 3 || x == 4;
      EXPECT_EQ(out.pixel(x, y)[0], band ? 74 : 10) << x;
      EXPECT_EQ(out.pixel(x, y)[2], to_u8(30 + 64.0 * e[y * 8 + x]));
    }
}

TEST(Msx, MatchesSobelOracleOnRandomImages) {
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const ImageRGB v = oracle::random_image(9, 7, rng), t = oracle::random_image(9, 7, rng);
    const std::vector<double> e = sobel_oracle(v);
    const std::vector<double> got = sobel_edge_strength(v);
    for (std::size_t i = 0; i < e.size(); ++i) ASSERT_NEAR(got[i], e[i], 1e-12);
    const ImageRGB out = edge_overlay_msx(t, v, 40.0);
    for (std::size_t y = 0; y < 7; ++y)
      for (std::size_t x = 0; x < 9; ++x)
        for (std::size_t c = 0; c < 3; ++c)
          ASSERT_EQ(out.channel(x, y, c), to_u8(t.channel(x, y, c) + 40.0 * e[y * 9 + x]));
  }
}

TEST(Msx, NeutralCases) {
  Rng rng(13);
  const ImageRGB t = oracle::random_image(6, 6, rng);
  EXPECT_EQ(edge_overlay_msx(t, ImageRGB(6, 6, {90, 90, 90})), t);
  EXPECT_EQ(edge_overlay_msx(t, oracle::random_image(6, 6, rng), 0.0), t);
  EXPECT_THROW(edge_overlay_msx(t, ImageRGB(5, 6)), ShapeError);
}

TEST(Colormap, LookupExamples) {
  const ThermalField f(3, 1, 10.0, 30.0, {10.0, 30.0, 20.0});
  const ImageRGB img = temp_to_color(f);
  EXPECT_EQ(img.pixel(0, 0), (Rgb{0, 0, 255}));
  EXPECT_EQ(img.pixel(1, 0), (Rgb{255, 127, 0}));
  EXPECT_EQ(img.pixel(2, 0), (Rgb{128, 64, 127}));
}

TEST(Colormap, DecodeExamplesAndErrors) {
  const ThermalField f = color_to_temp(ImageRGB(1, 1, {0, 0, 255}), 20.0, 30.0);
  EXPECT_DOUBLE_EQ(f.at(0, 0), 20.0);
  ImageRGB bad(3, 2, {0, 0, 255});
  bad.set_pixel(1, 1, {0, 200, 0});
  try {
    color_to_temp(bad, 20.0, 30.0);
    FAIL() << "expected MalformedColormapError";
  } catch (const MalformedColormapError& e) {
    EXPECT_EQ(e.x(), 1u);
    EXPECT_EQ(e.y(), 1u);
  }
  EXPECT_THROW(color_to_temp(bad, 30.0, 30.0), DomainError);
  // Off-by-one tolerance on G and B.
  EXPECT_NO_THROW(color_to_temp(ImageRGB(1, 1, {10, 6, 244}), 0.0, 1.0));
}

TEST(Colormap, RoundtripWithinHalfStep) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const double lo = rng.uniform(-20.0, 30.0), hi = lo + rng.uniform(0.5, 60.0);
    std::vector<double> t(40 * 30);
    for (double& v : t) v = rng.uniform(lo, hi);
    const ThermalField f(40, 30, lo, hi, t);
    const ThermalField back = color_to_temp(temp_to_color(f), lo, hi);
    for (std::size_t i = 0; i < t.size(); ++i)
      ASSERT_LE(std::abs(back.temps()[i] - t[i]), (hi - lo) / 510.0 + 1e-12);
  }
}

TEST(DeltaT, TwoRegionExample) {
  // 9x9 field: crack is the center pixel at 25, everything else 22.
  std::vector<double> t(81, 22.0);
  t[40] = 25.0;
  CrackMask m(9, 9);
  m.set(4, 4);
  EXPECT_NEAR(compute_delta_t(ThermalField(9, 9, 0.0, 40.0, t), m), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(compute_delta_t(flat_field(9, 9, 21.0), m), 0.0);
}

TEST(DeltaT, MatchesEnumerationOracle) {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t w = 12 + rng.below(10), h = 10 + rng.below(10);
    std::vector<double> t(w * h);
    for (double& v : t) v = rng.uniform(10.0, 30.0);
    const ThermalField f(w, h, 0.0, 40.0, t);
    CrackMask m(w, h);
    const long cx = long(rng.below(w)), cy = long(rng.below(h)), r = 1 + long(rng.below(3));
    for (long y = 0; y < long(h); ++y)
      for (long x = 0; x < long(w); ++x)
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y);
    double in = 0, out = 0;
    std::size_t nin = 0, nout = 0;
    for (long y = 0; y < long(h); ++y)
      for (long x = 0; x < long(w); ++x) {
        if (m.at(x, y)) {
          in += f.at(x, y);
          ++nin;
          continue;
        }
        bool near = false;
        for (long yy = y - 3; yy <= y + 3; ++yy)
          for (long xx = x - 3; xx <= x + 3; ++xx)
            if (yy >= 0 && xx >= 0 && yy < long(h) && xx < long(w) && m.at(xx, yy)) near = true;
        if (near) {
          out += f.at(x, y);
          ++nout;
        }
      }
    ASSERT_NEAR(compute_delta_t(f, m), std::abs(in / nin - out / nout), 1e-6);

    // Adding a constant leaves the contrast unchanged.
    std::vector<double> shifted = t;
    for (double& v : shifted) v += 5.0;
    EXPECT_NEAR(compute_delta_t(ThermalField(w, h, 0.0, 40.0, shifted), m), compute_delta_t(f, m),
                1e-9);
  }
}

TEST(DeltaT, DegenerateGeometry) {
  EXPECT_THROW(compute_delta_t(flat_field(4, 4, 20.0), CrackMask(4, 4)), DegenerateGeometryError);
  CrackMask full(4, 4);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x) full.set(x, y);
  EXPECT_THROW(compute_delta_t(flat_field(4, 4, 20.0), full), DegenerateGeometryError);
  EXPECT_THROW(compute_delta_t(flat_field(4, 4, 20.0), CrackMask(5, 4)), ShapeError);
}

}  // namespace
}  // namespace thermocrack
