#include "crackctl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace crackctl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Key {
  const char* type;  // as shown in diagnostics
  std::function<bool(const json&)> accepts;
  std::function<void(RunConfig&, const json&)> apply;
};

bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0); }
bool is_real(const json& v) { return v.is_number(); }

Key count(std::size_t RunConfig::*field) {
  return {"non-negative integer", is_count,
          [field](RunConfig& c, const json& v) { c.*field = v.get<std::size_t>(); }};
}
Key train_count(std::size_t thermocrack::TrainConfig::*field) {
  return {"non-negative integer", is_count,
          [field](RunConfig& c, const json& v) { c.train.*field = v.get<std::size_t>(); }};
}
Key flag(bool RunConfig::*field) {
  return {"boolean", [](const json& v) { return v.is_boolean(); },
          [field](RunConfig& c, const json& v) { c.*field = v.get<bool>(); }};
}
Key path(fs::path RunConfig::*field) {
  return {"string", [](const json& v) { return v.is_string(); },
          [field](RunConfig& c, const json& v) { c.*field = v.get<std::string>(); }};
}
Key ratio(double thermocrack::SplitRatios::*field) {
  return {"number", is_real, [field](RunConfig& c, const json& v) { c.split.*field = v.get<double>(); }};
}

const std::map<std::string, Key>& keys() {
  static const std::map<std::string, Key> table = {
      {"seed", {"non-negative integer", is_count,
                [](RunConfig& c, const json& v) {
                  c.seed = v.get<std::uint64_t>();
                  c.train.seed = c.seed;
                }}},
      {"data_dir", path(&RunConfig::data_dir)},
      {"out_dir", path(&RunConfig::out_dir)},
      {"source", {"string (msx_like|fusion|thermal|visible)", [](const json& v) { return v.is_string(); },
                  [](RunConfig& c, const json& v) {
                    try {
                      c.source = thermocrack::source_kind_from_string(v.get<std::string>());
                    } catch (const thermocrack::DomainError& e) {
                      throw UsageError(std::string("config key 'source': ") + e.what());
                    }
                  }}},
      {"n_per_level", count(&RunConfig::n_per_level)},
      {"image_width", count(&RunConfig::image_width)},
      {"image_height", count(&RunConfig::image_height)},
      {"hard_boundaries", flag(&RunConfig::hard_boundaries)},
      {"learning_rate", {"number", is_real,
                         [](RunConfig& c, const json& v) { c.train.learning_rate = v.get<double>(); }}},
      {"epochs", train_count(&thermocrack::TrainConfig::epochs)},
      {"batch_size", train_count(&thermocrack::TrainConfig::batch_size)},
      {"model_height", train_count(&thermocrack::TrainConfig::model_height)},
      {"model_width", train_count(&thermocrack::TrainConfig::model_width)},
      {"lr_decay_every", train_count(&thermocrack::TrainConfig::lr_decay_every)},
      {"lr_decay_factor", {"number", is_real,
                           [](RunConfig& c, const json& v) { c.train.lr_decay_factor = v.get<double>(); }}},
      {"split_train", ratio(&thermocrack::SplitRatios::train)},
      {"split_val", ratio(&thermocrack::SplitRatios::val)},
      {"split_test", ratio(&thermocrack::SplitRatios::test)},
      {"denoise", flag(&RunConfig::denoise)},
      {"sharpen", flag(&RunConfig::sharpen)},
      {"resize_width", count(&RunConfig::resize_width)},
      {"resize_height", count(&RunConfig::resize_height)},
      {"paper_formulas", flag(&RunConfig::paper_formulas)},
      {"json", flag(&RunConfig::json)},
      {"manifest", path(&RunConfig::manifest)},
      {"checkpoint", path(&RunConfig::checkpoint)},
      {"image", path(&RunConfig::image)},
      {"thermal", path(&RunConfig::thermal)},
      {"visible", path(&RunConfig::visible)},
  };
  return table;
}

}  // namespace

RunConfig apply_config_json(RunConfig base, const json& doc) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [name, value] : doc.items()) {
    const auto it = keys().find(name);
    if (it == keys().end()) throw UsageError("unknown config key '" + name + "'");
    if (!it->second.accepts(value)) {
      throw UsageError("config key '" + name + "' expects " + it->second.type + ", got " +
                       value.dump());
    }
    it->second.apply(base, value);
  }
  return base;
}

RunConfig load_config_file(RunConfig base, const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw thermocrack::IoError(file, "cannot open config");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(file.string() + ": invalid JSON: " + e.what());
  }
  return apply_config_json(std::move(base), doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["data_dir"] = c.data_dir.generic_string();
  j["out_dir"] = c.out_dir.generic_string();
  j["source"] = thermocrack::to_string(c.source);
  j["n_per_level"] = c.n_per_level;
  j["image_width"] = c.image_width;
  j["image_height"] = c.image_height;
  j["hard_boundaries"] = c.hard_boundaries;
  j["learning_rate"] = c.train.learning_rate;
  j["epochs"] = c.train.epochs;
  j["batch_size"] = c.train.batch_size;
  j["model_height"] = c.train.model_height;
  j["model_width"] = c.train.model_width;
  j["lr_decay_every"] = c.train.lr_decay_every;
  j["lr_decay_factor"] = c.train.lr_decay_factor;
  j["split_train"] = c.split.train;
  j["split_val"] = c.split.val;
  j["split_test"] = c.split.test;
  j["denoise"] = c.denoise;
  j["sharpen"] = c.sharpen;
  j["resize_width"] = c.resize_width;
  j["resize_height"] = c.resize_height;
  j["paper_formulas"] = c.paper_formulas;
  j["json"] = c.json;
  j["manifest"] = c.manifest.generic_string();
  j["checkpoint"] = c.checkpoint.generic_string();
  j["image"] = c.image.generic_string();
  j["thermal"] = c.thermal.generic_string();
  j["visible"] = c.visible.generic_string();
  return j;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  std::size_t w = 0, h = 0;
  if (x != std::string::npos) {
    const char* b = text.data();
    const auto rw = std::from_chars(b, b + x, w);
    const auto rh = std::from_chars(b + x + 1, b + text.size(), h);
    if (rw.ec == std::errc{} && rw.ptr == b + x && rh.ec == std::errc{} &&
        rh.ptr == b + text.size() && w > 0 && h > 0) {
      return {w, h};
    }
  }
  throw UsageError("expected WIDTHxHEIGHT with positive integers, got '" + text + "'");
}

void validate_config(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  };
  need(c.n_per_level > 0, "n_per_level must be positive");
  need(c.image_width > 0 && c.image_height > 0, "image_width and image_height must be positive");
  need(c.resize_width > 0 && c.resize_height > 0, "resize dimensions must be positive");
  try {
    thermocrack::validate_train_config(c.train);
    thermocrack::validate_ratios(c.split);
  } catch (const thermocrack::DataError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace crackctl
