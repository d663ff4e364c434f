#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>

#include "thermocrack/crack_level.hpp"
#include "thermocrack/image.hpp"
#include "thermocrack/manifest.hpp"
#include "thermocrack/split.hpp"

namespace thermocrack {

struct SynthOptions {
  std::size_t width = 160;
  std::size_t height = 120;
  // Calibration window (level/span) centred on each sample's base wall
  // temperature; t_min/t_max are recorded per sample in the thermal sidecar.
  double span = 20.0;
  // Drop the sampling margins around the 2/4 degree class boundaries.
  bool hard_boundaries = false;
  double edge_gain = 64.0;
  double noise_sigma = 0.15;
  // Sign of the crack offset: -1 cold, +1 warm, 0 drawn per sample.
  int crack_sign = 0;
  // Random-walk length in 2 px steps, inclusive range.
  std::size_t crack_steps_min = 50;
  std::size_t crack_steps_max = 80;
  // Multiplicative darkening of crack pixels in the visible texture.
  double visible_darken_min = 0.3;
  double visible_darken_max = 0.5;
};

inline constexpr int kSynthRetryBudget = 8;

struct SynthSample {
  ImageRGB image;           // the rendering requested by source_kind
  ImageRGB thermal_render;  // palette rendering of `field`
  ImageRGB visible;         // matching visible-light wall texture
  ThermalField field;
  CrackMask mask;
  double delta_t = 0.0;
};

// Interval for |offset| applied to crack pixels: (lo, hi, lo_open, hi_open).
struct OffsetRange {
  double lo;
  double hi;
};
OffsetRange crack_offset_range(CrackLevel level, bool hard_boundaries);

// Deterministic in (seed, level, source_kind, options). Throws
// GenerationError when the sampled contrast cannot be made to classify as
// `level` within kSynthRetryBudget draws.
SynthSample synth_sample(std::uint64_t seed, CrackLevel level, SourceKind source_kind,
                         const SynthOptions& options = {});

// Per-sample seed; independent of generation order and of source kind, so
// datasets of different kinds built from one seed show the same scenes.
std::uint64_t sample_seed(std::uint64_t dataset_seed, CrackLevel level, std::size_t index);

// Writes images/L<level>_<index>.png and thermal/L<level>_<index>.png (+ .json
// sidecar) under out_dir, assigns stratified splits, saves
// out_dir/manifest.jsonl and returns the manifest.
Manifest synth_dataset(std::uint64_t seed, std::size_t n_per_level, SourceKind source_kind,
                       const std::filesystem::path& out_dir, const SynthOptions& options = {},
                       const SplitRatios& ratios = {});

inline constexpr const char* kManifestFileName = "manifest.jsonl";

}  // namespace thermocrack
