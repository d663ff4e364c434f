#include "thermocrack/crack_level.hpp"

#include <cmath>
#include <string>

#include "thermocrack/error.hpp"

namespace thermocrack {

CrackLevel classify_delta_t(double delta_t) {
  if (!std::isfinite(delta_t) || delta_t < 0.0) {
    throw DomainError("classify_delta_t: delta T must be finite and non-negative, got " +
                      std::to_string(delta_t));
  }
  if (delta_t < kLevel2LowerBound) return CrackLevel::Level1;
  if (delta_t <= kLevel2UpperBound) return CrackLevel::Level2;
  return CrackLevel::Level3;
}

CrackLevel level_from_index(std::size_t index) {
  if (index >= kNumLevels) throw DomainError("crack level index out of range: " + std::to_string(index));
  return static_cast<CrackLevel>(index);
}

CrackLevel level_from_number(int number) {
  if (number < 1 || number > static_cast<int>(kNumLevels)) {
    throw DomainError("unknown crack level " + std::to_string(number));
  }
  return static_cast<CrackLevel>(number - 1);
}

std::string_view level_label(CrackLevel level) noexcept {
  switch (level) {
    case CrackLevel::Level1: return "1st_degree_crack";
    case CrackLevel::Level2: return "2nd_degree_crack";
    case CrackLevel::Level3: return "3rd_degree_crack";
  }
  return "unknown";
}

std::string_view to_string(SourceKind kind) noexcept {
  switch (kind) {
    case SourceKind::MsxLike: return "msx_like";
    case SourceKind::Fusion: return "fusion";
    case SourceKind::Thermal: return "thermal";
    case SourceKind::Visible: return "visible";
  }
  return "unknown";
}

SourceKind source_kind_from_string(std::string_view token) {
  if (token == "msx_like") return SourceKind::MsxLike;
  if (token == "fusion") return SourceKind::Fusion;
  if (token == "thermal") return SourceKind::Thermal;
  if (token == "visible") return SourceKind::Visible;
  throw DomainError("unknown source kind '" + std::string(token) + "'");
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "unknown";
}

Split split_from_string(std::string_view token) {
  if (token == "train") return Split::Train;
  if (token == "val") return Split::Val;
  if (token == "test") return Split::Test;
  throw DomainError("unknown split '" + std::string(token) + "'");
}

}  // namespace thermocrack
