#include "thermocrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <system_error>
#include <vector>

#include "thermocrack/colormap.hpp"
#include "thermocrack/delta_t.hpp"
#include "thermocrack/error.hpp"
#include "thermocrack/fusion.hpp"
#include "thermocrack/png_io.hpp"
#include "thermocrack/random.hpp"

namespace thermocrack {

OffsetRange crack_offset_range(CrackLevel level, bool hard_boundaries) {
  if (hard_boundaries) {
    switch (level) {
      case CrackLevel::Level1: return {0.0, kLevel2LowerBound};
      case CrackLevel::Level2: return {kLevel2LowerBound, kLevel2UpperBound};
      case CrackLevel::Level3: return {kLevel2UpperBound, 8.0};
    }
  }
  switch (level) {
    case CrackLevel::Level1: return {0.5, 1.8};
    case CrackLevel::Level2: return {2.2, 3.8};
    case CrackLevel::Level3: return {4.2, 8.0};
  }
  return {0.0, 0.0};
}

namespace {

// Smooth background: base temperature, a linear ramp and one long-wave
// undulation.
std::vector<double> background_field(Rng& rng, const SynthOptions& opt, double& base) {
  base = rng.uniform(18.0, 28.0);
  const double ramp_x = rng.uniform(-1.0, 1.0);
  const double ramp_y = rng.uniform(-1.0, 1.0);
  const double wave_amp = rng.uniform(0.0, 0.5);
  const double wave_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double wave_angle = rng.uniform(0.0, std::numbers::pi);
  const double wave_len = rng.uniform(0.8, 1.6) * static_cast<double>(opt.width);

  const double w = static_cast<double>(opt.width), h = static_cast<double>(opt.height);
  std::vector<double> temps(opt.width * opt.height);
  for (std::size_t y = 0; y < opt.height; ++y) {
    for (std::size_t x = 0; x < opt.width; ++x) {
      const double u = static_cast<double>(x) / w - 0.5;
      const double v = static_cast<double>(y) / h - 0.5;
      const double along = static_cast<double>(x) * std::cos(wave_angle) +
                           static_cast<double>(y) * std::sin(wave_angle);
      temps[y * opt.width + x] =
          base + ramp_x * u + ramp_y * v +
          wave_amp * std::sin(2.0 * std::numbers::pi * along / wave_len + wave_phase);
    }
  }
  return temps;
}

// Random-walk polyline with a slowly varying width of 1..4 px.
CrackMask draw_crack(Rng& rng, const SynthOptions& opt) {
  CrackMask mask(opt.width, opt.height);
  const double margin = 6.0;
  const double w = static_cast<double>(opt.width), h = static_cast<double>(opt.height);
  double x = rng.uniform(0.3 * w, 0.7 * w);
  double y = rng.uniform(0.3 * h, 0.7 * h);
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  int width = 1 + static_cast<int>(rng.below(4));
  const std::size_t steps = opt.crack_steps_min + rng.below(opt.crack_steps_max - opt.crack_steps_min + 1);
  const double step_len = 2.0;

  auto stamp = [&](double cx, double cy, int size) {
    const double half = (size - 1) / 2.0;
    const auto x0 = static_cast<std::ptrdiff_t>(std::lround(cx - half));
    const auto y0 = static_cast<std::ptrdiff_t>(std::lround(cy - half));
    for (int dy = 0; dy < size; ++dy)
      for (int dx = 0; dx < size; ++dx) {
        const std::ptrdiff_t px = x0 + dx, py = y0 + dy;
        if (px >= 0 && py >= 0 && px < static_cast<std::ptrdiff_t>(opt.width) &&
            py < static_cast<std::ptrdiff_t>(opt.height)) {
          mask.set(static_cast<std::size_t>(px), static_cast<std::size_t>(py));
        }
      }
  };

  stamp(x, y, width);
  for (std::size_t i = 0; i < steps; ++i) {
    heading += rng.normal(0.0, 0.3);
    double nx = x + step_len * std::cos(heading);
    double ny = y + step_len * std::sin(heading);
    if (nx < margin || nx > w - 1 - margin || ny < margin || ny > h - 1 - margin) {
      heading += std::numbers::pi;
      nx = std::clamp(x + step_len * std::cos(heading), margin, w - 1 - margin);
      ny = std::clamp(y + step_len * std::sin(heading), margin, h - 1 - margin);
    }
    if (rng.uniform() < 0.2) {
      width = std::clamp(width + (rng.coin() ? 1 : -1), 1, 4);
    }
    for (int k = 1; k <= 4; ++k) {
      const double t = k / 4.0;
      stamp(x + t * (nx - x), y + t * (ny - y), width);
    }
    x = nx;
    y = ny;
  }
  return mask;
}

// Plaster-like wall with mottling; the crack shows as a dark line.
ImageRGB visible_wall(Rng& rng, const CrackMask& mask, const SynthOptions& opt) {
  const double base_r = rng.uniform(150.0, 200.0);
  const double base_g = base_r - rng.uniform(5.0, 25.0);
  const double base_b = base_g - rng.uniform(5.0, 25.0);
  const double mottle_amp = rng.uniform(4.0, 12.0);
  const double fx = rng.uniform(0.03, 0.08), fy = rng.uniform(0.03, 0.08);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double darken = rng.uniform(opt.visible_darken_min, opt.visible_darken_max);

  ImageRGB img(opt.width, opt.height);
  for (std::size_t y = 0; y < opt.height; ++y) {
    for (std::size_t x = 0; x < opt.width; ++x) {
      const double mottle =
          mottle_amp * std::sin(fx * static_cast<double>(x) + phase) *
          std::cos(fy * static_cast<double>(y) - phase);
      const double grain = rng.normal(0.0, 5.0);
      const double k = mask.at(x, y) ? darken : 1.0;
      img.set_pixel(x, y,
                    {to_u8(k * (base_r + mottle + grain)), to_u8(k * (base_g + mottle + grain)),
                     to_u8(k * (base_b + mottle + grain))});
    }
  }
  return img;
}

}  // namespace

SynthSample synth_sample(std::uint64_t seed, CrackLevel level, SourceKind source_kind,
                         const SynthOptions& opt) {
  if (!(opt.span > 0.0)) throw DomainError("synth_sample: calibration span must be positive");
  Rng rng(seed);
  double base = 0.0;
  const std::vector<double> background = background_field(rng, opt, base);
  const double t_min = base - opt.span / 2.0;
  const double t_max = base + opt.span / 2.0;
  std::vector<double> noise(background.size());
  for (double& n : noise) n = rng.normal(0.0, opt.noise_sigma);
  CrackMask mask = draw_crack(rng, opt);
  const ImageRGB visible = visible_wall(rng, mask, opt);

  const OffsetRange range = crack_offset_range(level, opt.hard_boundaries);
  for (int attempt = 0; attempt < kSynthRetryBudget; ++attempt) {
    const double magnitude = rng.uniform(range.lo, range.hi);
    const bool warm = opt.crack_sign == 0 ? rng.coin() : opt.crack_sign > 0;
    const double offset = warm ? magnitude : -magnitude;
    std::vector<double> temps(background.size());
    for (std::size_t y = 0; y < opt.height; ++y)
      for (std::size_t x = 0; x < opt.width; ++x) {
        const std::size_t i = y * opt.width + x;
        const double t = background[i] + noise[i] + (mask.at(x, y) ? offset : 0.0);
        temps[i] = std::clamp(t, t_min, t_max);
      }
    ThermalField field(opt.width, opt.height, t_min, t_max, std::move(temps));
    const double delta_t = compute_delta_t(field, mask);
    if (classify_delta_t(delta_t) != level) continue;

    SynthSample s;
    s.thermal_render = temp_to_color(field);
    s.visible = visible;
    switch (source_kind) {
      case SourceKind::Fusion: s.image = alpha_fuse(s.thermal_render, visible); break;
      case SourceKind::MsxLike:
        s.image = edge_overlay_msx(s.thermal_render, visible, opt.edge_gain);
        break;
      case SourceKind::Thermal: s.image = s.thermal_render; break;
      case SourceKind::Visible: s.image = visible; break;
    }
    s.field = std::move(field);
    s.mask = std::move(mask);
    s.delta_t = delta_t;
    return s;
  }
  throw GenerationError("synth_sample: seed " + std::to_string(seed) + " could not produce a level " +
                        std::to_string(level_number(level)) + " crack within " +
                        std::to_string(kSynthRetryBudget) + " draws");
}

std::uint64_t sample_seed(std::uint64_t dataset_seed, CrackLevel level, std::size_t index) {
  return mix_seed(mix_seed(dataset_seed, level_index(level)), index);
}

Manifest synth_dataset(std::uint64_t seed, std::size_t n_per_level, SourceKind source_kind,
                       const std::filesystem::path& out_dir, const SynthOptions& options,
                       const SplitRatios& ratios) {
  if (n_per_level == 0) throw DomainError("synth_dataset: n_per_level must be positive");
  validate_ratios(ratios);
  std::error_code ec;
  for (const char* sub : {"images", "thermal"}) {
    std::filesystem::create_directories(out_dir / sub, ec);
    if (ec) throw IoError(out_dir / sub, ec.message());
  }

  Manifest manifest;
  manifest.seed = seed;
  for (CrackLevel level : kAllLevels) {
    for (std::size_t i = 0; i < n_per_level; ++i) {
      const SynthSample s = synth_sample(sample_seed(seed, level, i), level, source_kind, options);
      char name[32];
      std::snprintf(name, sizeof name, "L%d_%05zu.png", level_number(level), i);
      const std::string image_rel = std::string("images/") + name;
      write_png(out_dir / image_rel, s.image);
      write_thermal(out_dir / "thermal" / name, s.field);
      manifest.records.push_back({image_rel, source_kind, level, s.delta_t, Split::Train});
    }
  }
  manifest.records = stratified_split(std::move(manifest.records), ratios, seed);
  save_manifest(manifest, out_dir / kManifestFileName);
  return manifest;
}

}  // namespace thermocrack
