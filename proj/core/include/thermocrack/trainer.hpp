#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "thermocrack/manifest.hpp"
#include "thermocrack/network.hpp"

namespace thermocrack {

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 10;
  std::size_t batch_size = 16;
  std::uint64_t seed = 1;
  std::size_t model_height = 120;
  std::size_t model_width = 160;
  // Multiply the rate by lr_decay_factor every lr_decay_every epochs; 0 = off.
  std::size_t lr_decay_every = 0;
  double lr_decay_factor = 0.1;
};

// Throws ConfigurationError. A learning rate of exactly 0 is accepted and
// freezes the parameters (evaluation-only passes).
void validate_train_config(const TrainConfig& config);

struct LabeledTensor {
  Tensor input;
  CrackLevel label = CrackLevel::Level1;
};

struct EpochStats {
  std::size_t epoch = 0;
  double learning_rate = 0.0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
  friend bool operator==(const EpochStats&, const EpochStats&) = default;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

// Loads and tensorizes every record of `split`; image paths resolve
// against image_root.
std::vector<LabeledTensor> load_split(const Manifest& manifest,
                                      const std::filesystem::path& image_root, Split split,
                                      std::size_t height, std::size_t width);

// Mini-batch SGD. Each epoch shuffles the training set with a stream keyed
// on (seed, epoch), averages per-sample gradients over each batch (fixed
// summation order) and applies one SGD step per parameter tensor.
// Throws InvariantError if any parameter becomes non-finite.
TrainResult train(const ArchitectureSpec& spec, ModelParams params,
                  const std::vector<LabeledTensor>& train_set,
                  const std::vector<LabeledTensor>& val_set, const TrainConfig& config);

TrainResult train(const ArchitectureSpec& spec, ModelParams params, const Manifest& manifest,
                  const std::filesystem::path& image_root, const TrainConfig& config);

double accuracy(const Model& model, const std::vector<LabeledTensor>& samples);

}  // namespace thermocrack
