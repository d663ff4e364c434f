#include "thermocrack/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermocrack/error.hpp"
#include "thermocrack/random.hpp"

namespace thermocrack {

void validate_ratios(const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.val, ratios.test};
  for (double v : r) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("split ratios must be positive, got " + std::to_string(v));
    }
  }
  const double sum = r[0] + r[1] + r[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("split ratios must sum to 1, got " + std::to_string(sum));
  }
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios) {
  validate_ratios(ratios);
  constexpr double kEps = 1e-9;
  const std::array<double, 3> r = {ratios.train, ratios.val, ratios.test};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double quota = static_cast<double>(n) * r[k];
    // Tolerate 5 * 0.6 evaluating to 2.9999999999999996.
    const double whole = std::floor(quota + kEps);
    sizes[k] = static_cast<std::size_t>(whole);
    remainder[k] = std::max(0.0, quota - whole);
    assigned += sizes[k];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b] + kEps;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];
  return sizes;
}

std::vector<SampleRecord> stratified_split(std::vector<SampleRecord> records,
                                           const SplitRatios& ratios, std::uint64_t seed) {
  validate_ratios(ratios);
  for (CrackLevel level : kAllLevels) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].level == level) members.push_back(i);
    }
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return records[a].image_path < records[b].image_path;
    });
    Rng rng(mix_seed(seed, level_index(level)));
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.below(i)]);
    }
    const std::array<std::size_t, 3> sizes = split_sizes(members.size(), ratios);
    for (std::size_t i = 0; i < members.size(); ++i) {
      Split s = Split::Test;
      if (i < sizes[0]) {
        s = Split::Train;
      } else if (i < sizes[0] + sizes[1]) {
        s = Split::Val;
      }
      records[members[i]].split = s;
    }
  }
  return records;
}

}  // namespace thermocrack
