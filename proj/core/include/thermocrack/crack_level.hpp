#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace thermocrack {

// Crack severity, ordered by the crack-to-surroundings temperature contrast.
enum class CrackLevel : std::uint8_t { Level1 = 0, Level2 = 1, Level3 = 2 };

inline constexpr std::size_t kNumLevels = 3;
inline constexpr std::array<CrackLevel, kNumLevels> kAllLevels = {
    CrackLevel::Level1, CrackLevel::Level2, CrackLevel::Level3};

// Thresholds in degrees Celsius. Both boundaries belong to Level2.
inline constexpr double kLevel2LowerBound = 2.0;
inline constexpr double kLevel2UpperBound = 4.0;

// Level1: dT < 2, Level2: 2 <= dT <= 4, Level3: dT > 4.
// Throws DomainError for negative or non-finite input.
CrackLevel classify_delta_t(double delta_t);

constexpr std::size_t level_index(CrackLevel level) noexcept {
  return static_cast<std::size_t>(level);
}
CrackLevel level_from_index(std::size_t index);
// 1-based number used in manifests and reports.
constexpr int level_number(CrackLevel level) noexcept { return static_cast<int>(level) + 1; }
CrackLevel level_from_number(int number);
std::string_view level_label(CrackLevel level) noexcept;  // "1st_degree_crack", ...

enum class SourceKind : std::uint8_t { MsxLike, Fusion, Thermal, Visible };

std::string_view to_string(SourceKind kind) noexcept;
// Throws DomainError on an unknown token.
SourceKind source_kind_from_string(std::string_view token);

enum class Split : std::uint8_t { Train, Val, Test };

std::string_view to_string(Split split) noexcept;
Split split_from_string(std::string_view token);

}  // namespace thermocrack
