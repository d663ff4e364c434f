#include "thermocrack/trainer.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "thermocrack/error.hpp"
#include "thermocrack/layers.hpp"
#include "thermocrack/png_io.hpp"
#include "thermocrack/random.hpp"

namespace thermocrack {

void validate_train_config(const TrainConfig& config) {
  if (!std::isfinite(config.learning_rate) || config.learning_rate < 0.0) {
    throw ConfigurationError("learning_rate must be finite and non-negative");
  }
  if (config.epochs == 0) throw ConfigurationError("epochs must be positive");
  if (config.batch_size == 0) throw ConfigurationError("batch_size must be positive");
  if (config.model_height == 0 || config.model_width == 0 || config.model_height % 8 != 0 ||
      config.model_width % 8 != 0) {
    throw ConfigurationError("model input " + std::to_string(config.model_height) + "x" +
                             std::to_string(config.model_width) +
                             " must be positive and divisible by 8");
  }
  if (!(config.lr_decay_factor > 0.0) || !std::isfinite(config.lr_decay_factor)) {
    throw ConfigurationError("lr_decay_factor must be positive");
  }
}

std::vector<LabeledTensor> load_split(const Manifest& manifest,
                                      const std::filesystem::path& image_root, Split split,
                                      std::size_t height, std::size_t width) {
  std::vector<LabeledTensor> out;
  for (const SampleRecord& r : manifest.records) {
    if (r.split != split) continue;
    out.push_back({image_to_tensor(read_png(image_root / r.image_path), height, width), r.level});
  }
  return out;
}

double accuracy(const Model& model, const std::vector<LabeledTensor>& samples) {
  if (samples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const LabeledTensor& s : samples) {
    if (predict_tensor(model, s.input).level == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

namespace {

// Float64 running sums mirroring the parameter layout.
struct GradientSum {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;

  explicit GradientSum(const ModelParams& params) {
    for (const LayerParams& l : params.layers) {
      weights.emplace_back(l.weights.size(), 0.0);
      bias.emplace_back(l.bias.size(), 0.0);
    }
  }

  void clear() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
  }

  void add(const ModelParams& grads) {
    for (std::size_t i = 0; i < grads.layers.size(); ++i) {
      const LayerParams& g = grads.layers[i];
      for (std::size_t k = 0; k < g.weights.size(); ++k) weights[i][k] += g.weights[k];
      for (std::size_t k = 0; k < g.bias.size(); ++k) bias[i][k] += g.bias[k];
    }
  }
};

Tensor mean_tensor(const Shape& shape, const std::vector<double>& sum, std::size_t n) {
  Tensor t(shape);
  for (std::size_t k = 0; k < sum.size(); ++k) t[k] = static_cast<float>(sum[k] / static_cast<double>(n));
  return t;
}

}  // namespace

TrainResult train(const ArchitectureSpec& spec, ModelParams params,
                  const std::vector<LabeledTensor>& train_set,
                  const std::vector<LabeledTensor>& val_set, const TrainConfig& config) {
  validate_train_config(config);
  if (train_set.empty()) throw ConfigurationError("training split is empty");
  if (val_set.empty()) throw ConfigurationError("validation split is empty");
  spec.layer_shapes();

  TrainResult result;
  GradientSum sum(params);
  std::vector<std::size_t> order(train_set.size());

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double rate = config.learning_rate;
    if (config.lr_decay_every > 0) {
      rate *= std::pow(config.lr_decay_factor, static_cast<double>(epoch / config.lr_decay_every));
    }
    const auto step_rate = static_cast<float>(rate);

    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(mix_seed(config.seed, epoch));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      sum.clear();
      for (std::size_t k = start; k < stop; ++k) {
        const LabeledTensor& s = train_set[order[k]];
        LossAndGradients lg = loss_and_gradients(spec, params, s.input, s.label);
        loss_sum += lg.loss;
        sum.add(lg.gradients);
      }
      if (step_rate > 0.0f) {
        const std::size_t n = stop - start;
        for (std::size_t i = 0; i < params.layers.size(); ++i) {
          LayerParams& p = params.layers[i];
          if (p.weights.empty()) continue;
          p.weights = sgd_step(p.weights, mean_tensor(p.weights.shape(), sum.weights[i], n), step_rate);
          p.bias = sgd_step(p.bias, mean_tensor(p.bias.shape(), sum.bias[i], n), step_rate);
        }
        if (!params.all_finite()) {
          throw InvariantError("training diverged: non-finite parameters in epoch " +
                               std::to_string(epoch + 1) + " after batch starting at " +
                               std::to_string(start) + " (learning rate " +
                               std::to_string(rate) + ")");
        }
      }
    }

    EpochStats stats;
    stats.epoch = epoch + 1;
    stats.learning_rate = rate;
    stats.train_loss = loss_sum / static_cast<double>(train_set.size());
    stats.val_accuracy = accuracy(Model{spec, params}, val_set);
    result.history.push_back(stats);
  }
  result.params = std::move(params);
  return result;
}

TrainResult train(const ArchitectureSpec& spec, ModelParams params, const Manifest& manifest,
                  const std::filesystem::path& image_root, const TrainConfig& config) {
  validate_train_config(config);
  if (spec.height != config.model_height || spec.width != config.model_width) {
    throw ConfigurationError("architecture input does not match the configured model input");
  }
  const auto train_set =
      load_split(manifest, image_root, Split::Train, config.model_height, config.model_width);
  const auto val_set =
      load_split(manifest, image_root, Split::Val, config.model_height, config.model_width);
  return train(spec, std::move(params), train_set, val_set, config);
}

}  // namespace thermocrack
