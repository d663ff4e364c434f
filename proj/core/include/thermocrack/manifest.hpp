#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "thermocrack/crack_level.hpp"

namespace thermocrack {

struct SampleRecord {
  std::string image_path;  // relative to the manifest's directory, '/' separated
  SourceKind source = SourceKind::Fusion;
  CrackLevel level = CrackLevel::Level1;
  double delta_t = 0.0;
  Split split = Split::Train;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

// counts[level][split]
using SplitCounts = std::array<std::array<std::size_t, 3>, kNumLevels>;

struct Manifest {
  static constexpr int kVersion = 1;

  std::uint64_t seed = 0;
  std::vector<SampleRecord> records;

  SplitCounts counts() const;
  std::vector<SampleRecord> in_split(Split split) const;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// Checks every record invariant: finite non-negative delta_t that classifies
// to the stored level, and unique image paths. Throws ValidationError.
void validate_manifest(const Manifest& manifest);

// JSON Lines: a header object {"version":1,"seed":..,"counts":{..}} followed
// by one object per record. Validates first; nothing is written for an
// invalid manifest.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
// ParseError (with line number) on malformed lines or unknown tokens,
// ValidationError on duplicate paths or count mismatches, IoError when the
// file cannot be read.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace thermocrack
