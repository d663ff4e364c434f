#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "thermocrack/crack_level.hpp"
#include "thermocrack/error.hpp"
#include "thermocrack/split.hpp"
#include "thermocrack/trainer.hpp"

namespace crackctl {

// Bad flags or config documents; maps to the usage exit code.
class UsageError : public thermocrack::Error {
 public:
  using thermocrack::Error::Error;
};

// Every knob of every subcommand, fully resolved. Defaults < config file <
// command-line flags.
struct RunConfig {
  std::uint64_t seed = 1;
  std::filesystem::path data_dir;  // base for relative inputs; empty = cwd
  std::filesystem::path out_dir = "out";
  thermocrack::SourceKind source = thermocrack::SourceKind::Fusion;
  std::size_t n_per_level = 200;
  std::size_t image_width = 160;   // synthetic sample size
  std::size_t image_height = 120;
  bool hard_boundaries = false;
  thermocrack::TrainConfig train{};
  thermocrack::SplitRatios split{};
  bool denoise = false;
  bool sharpen = false;
  std::size_t resize_width = 1080;
  std::size_t resize_height = 1440;
  bool paper_formulas = false;
  bool json = false;
  // Inputs; meaning depends on the subcommand.
  std::filesystem::path manifest;
  std::filesystem::path checkpoint;
  std::filesystem::path image;
  std::filesystem::path thermal;
  std::filesystem::path visible;
};

// Applies a JSON config document on top of `base`. Keys are the
// lower_snake_case field names of RunConfig (train fields are top-level:
// learning_rate, epochs, ...; split ratios are split_train/split_val/
// split_test). Throws UsageError naming an unknown key, or naming the key
// and the expected type on a mismatch.
RunConfig apply_config_json(RunConfig base, const nlohmann::json& doc);
RunConfig load_config_file(RunConfig base, const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const RunConfig& config);

// "1080x1440" -> {width 1080, height 1440}; UsageError otherwise.
std::pair<std::size_t, std::size_t> parse_size(const std::string& text);

// Checks numeric ranges across the whole config; UsageError.
void validate_config(const RunConfig& config);

}  // namespace crackctl
