#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "thermocrack/manifest.hpp"

namespace thermocrack {

struct SplitRatios {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
};

// Throws DomainError unless all ratios are positive and sum to 1 +- 1e-9.
void validate_ratios(const SplitRatios& ratios);

// Floor of n * ratio per split, remaining units to the largest fractional
// remainders; ties go to train, then val.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios);

// Assigns a split to every record, stratified by level. Within a level the
// records are ordered by image path, shuffled with a stream keyed on
// (seed, level), and the first split_sizes()[0] go to train, the next to
// val, the rest to test. Records come back in their input order.
std::vector<SampleRecord> stratified_split(std::vector<SampleRecord> records,
                                           const SplitRatios& ratios, std::uint64_t seed);

}  // namespace thermocrack
