#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "thermocrack/network.hpp"

namespace thermocrack {

// Checkpoint layout (all integers little-endian):
//   "TCK1"
//   u32 layer count
//   per layer:
//     u8 kind tag, u8 name length, name bytes (UTF-8)
//     weights: u32 rank, rank x u32 dims, product(dims) x f32
//     bias:    u32 rank, rank x u32 dims, product(dims) x f32
//   u32 CRC-32 of every preceding byte
//
// The input layer stores the model input as a [3] weights tensor holding
// (channels, height, width); layers without parameters store rank-1
// zero-length tensors.
inline constexpr char kCheckpointMagic[4] = {'T', 'C', 'K', '1'};

std::vector<std::uint8_t> encode_checkpoint(const Model& model);
// FormatError on bad magic or an inconsistent architecture; CorruptionError
// (with byte offset) on truncation or CRC mismatch.
Model decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Model& model, const std::filesystem::path& path);
Model load_checkpoint(const std::filesystem::path& path);

}  // namespace thermocrack
