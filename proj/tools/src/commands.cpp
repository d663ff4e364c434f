#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "crackctl/cli.hpp"
#include "crackctl/config.hpp"
#include "crackctl/hashing.hpp"
#include "thermocrack/checkpoint.hpp"
#include "thermocrack/fusion.hpp"
#include "thermocrack/metrics.hpp"
#include "thermocrack/png_io.hpp"
#include "thermocrack/preprocess.hpp"
#include "thermocrack/synth.hpp"

namespace crackctl {

namespace fs = std::filesystem;
namespace tc = thermocrack;
using nlohmann::ordered_json;

namespace {

constexpr const char* kRunManifest = "run_manifest.json";

// Values given on the command line; unset ones leave the config alone.
struct Flags {
  std::optional<std::string> config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> data_dir, out_dir, source;
  std::optional<std::size_t> n_per_level, epochs, batch_size;
  std::optional<double> learning_rate;
  std::optional<std::string> resize, model_input, image_size;
  std::optional<std::string> manifest, checkpoint, image, thermal, visible;
  bool paper_formulas = false, json = false, denoise = false, sharpen = false,
       hard_boundaries = false;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config_file, "JSON config file (flags override it)");
  cmd.add_option("--seed", f.seed, "Random seed");
  cmd.add_option("--data-dir", f.data_dir, "Base directory for relative inputs");
  cmd.add_option("--out-dir", f.out_dir, "Output directory");
  cmd.add_flag("--json", f.json, "Machine-readable output");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (f.config_file) c = load_config_file(c, *f.config_file);
  if (f.seed) c.seed = c.train.seed = *f.seed;
  if (f.data_dir) c.data_dir = *f.data_dir;
  if (f.out_dir) c.out_dir = *f.out_dir;
  if (f.source) c = apply_config_json(c, {{"source", *f.source}});
  if (f.n_per_level) c.n_per_level = *f.n_per_level;
  if (f.epochs) c.train.epochs = *f.epochs;
  if (f.batch_size) c.train.batch_size = *f.batch_size;
  if (f.learning_rate) c.train.learning_rate = *f.learning_rate;
  if (f.resize) std::tie(c.resize_width, c.resize_height) = parse_size(*f.resize);
  if (f.model_input) std::tie(c.train.model_width, c.train.model_height) = parse_size(*f.model_input);
  if (f.image_size) std::tie(c.image_width, c.image_height) = parse_size(*f.image_size);
  if (f.manifest) c.manifest = *f.manifest;
  if (f.checkpoint) c.checkpoint = *f.checkpoint;
  if (f.image) c.image = *f.image;
  if (f.thermal) c.thermal = *f.thermal;
  if (f.visible) c.visible = *f.visible;
  if (f.paper_formulas) c.paper_formulas = true;
  if (f.json) c.json = true;
  if (f.denoise) c.denoise = true;
  if (f.sharpen) c.sharpen = true;
  if (f.hard_boundaries) c.hard_boundaries = true;
  validate_config(c);
  return c;
}

// Relative inputs resolve against data_dir; they must exist up front.
fs::path input(const RunConfig& c, const fs::path& p, const char* what) {
  if (p.empty()) throw UsageError(std::string("missing required input --") + what);
  const fs::path full = p.is_absolute() || c.data_dir.empty() ? p : c.data_dir / p;
  if (!fs::exists(full)) {
    throw tc::ValidationError(std::string(what) + " not found: " + full.string());
  }
  return full;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw tc::IoError(dir, ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tc::IoError(path, "cannot open for writing");
  out << text;
  if (!out.flush()) throw tc::IoError(path, "write failed");
}

// Records the resolved config and a content hash of every artifact, sorted
// by path so identical runs give identical run manifests.
class RunRecord {
 public:
  RunRecord(std::string command, const RunConfig& config)
      : command_(std::move(command)), config_(config) {}

  void artifact(const fs::path& path) { artifacts_.push_back(path); }

  void write() const {
    std::vector<fs::path> sorted = artifacts_;
    std::sort(sorted.begin(), sorted.end());
    ordered_json list = ordered_json::array();
    for (const fs::path& p : sorted) {
      list.push_back({{"path", fs::relative(p, config_.out_dir).generic_string()},
                      {"bytes", fs::file_size(p)},
                      {"sha256", sha256_file(p)}});
    }
    ordered_json doc;
    doc["command"] = command_;
    doc["seed"] = config_.seed;
    doc["config"] = config_to_json(config_);
    doc["artifacts"] = list;
    write_text(config_.out_dir / kRunManifest, doc.dump(2) + "\n");
  }

 private:
  std::string command_;
  RunConfig config_;
  std::vector<fs::path> artifacts_;
};

void echo_config(std::ostream& out, const RunConfig& c) {
  if (!c.json) out << "config " << config_to_json(c).dump() << "\n";
}

void emit_json(std::ostream& out, const RunConfig& c, ordered_json result) {
  ordered_json doc;
  doc["config"] = config_to_json(c);
  doc["result"] = std::move(result);
  out << doc.dump(2) << "\n";
}

int cmd_synth(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  ensure_dir(c.out_dir);
  tc::SynthOptions opt;
  opt.width = c.image_width;
  opt.height = c.image_height;
  opt.hard_boundaries = c.hard_boundaries;
  const tc::Manifest m = tc::synth_dataset(c.seed, c.n_per_level, c.source, c.out_dir, opt, c.split);

  RunRecord run("synth", c);
  run.artifact(c.out_dir / tc::kManifestFileName);
  for (const tc::SampleRecord& r : m.records) {
    const fs::path stem = fs::path(r.image_path).filename();
    run.artifact(c.out_dir / r.image_path);
    run.artifact(c.out_dir / "thermal" / stem);
    run.artifact(tc::thermal_sidecar_path(c.out_dir / "thermal" / stem));
  }
  run.write();

  const tc::SplitCounts counts = m.counts();
  if (c.json) {
    ordered_json per_level;
    for (tc::CrackLevel l : tc::kAllLevels) {
      const auto& n = counts[tc::level_index(l)];
      per_level[std::to_string(tc::level_number(l))] = {{"train", n[0]}, {"val", n[1]}, {"test", n[2]}};
    }
    emit_json(out, c, {{"samples", m.records.size()},
                       {"manifest", (c.out_dir / tc::kManifestFileName).generic_string()},
                       {"counts", per_level}});
  } else {
    out << "wrote " << m.records.size() << " " << tc::to_string(c.source) << " samples to "
        << c.out_dir.generic_string() << "\n";
    for (tc::CrackLevel l : tc::kAllLevels) {
      const auto& n = counts[tc::level_index(l)];
      out << "  " << tc::level_label(l) << ": train " << n[0] << ", val " << n[1] << ", test "
          << n[2] << "\n";
    }
  }
  return kExitOk;
}

int cmd_fuse(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const fs::path thermal_path = input(c, c.thermal, "thermal");
  const tc::ImageRGB thermal = tc::read_png(thermal_path);
  const tc::ImageRGB visible = tc::read_png(input(c, c.visible, "visible"));
  tc::ImageRGB fused;
  switch (c.source) {
    case tc::SourceKind::Fusion: fused = tc::alpha_fuse(thermal, visible); break;
    case tc::SourceKind::MsxLike: fused = tc::edge_overlay_msx(thermal, visible); break;
    default: throw UsageError("fuse needs --source fusion or --source msx_like");
  }
  ensure_dir(c.out_dir);
  const fs::path dest =
      c.out_dir / (thermal_path.stem().string() + "_" + std::string(tc::to_string(c.source)) + ".png");
  tc::write_png(dest, fused);
  RunRecord run("fuse", c);
  run.artifact(dest);
  run.write();
  if (c.json) emit_json(out, c, {{"output", dest.generic_string()}});
  else out << "wrote " << dest.generic_string() << "\n";
  return kExitOk;
}

int cmd_preprocess(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const fs::path src = input(c, c.image, "image");
  std::vector<fs::path> files;
  if (fs::is_directory(src)) {
    for (const auto& e : fs::directory_iterator(src))
      if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(src);
  }
  ensure_dir(c.out_dir);
  RunRecord run("preprocess", c);
  ordered_json written = ordered_json::array();
  for (const fs::path& f : files) {
    tc::ImageRGB img = tc::resize_bilinear(tc::read_png(f), c.resize_width, c.resize_height);
    if (c.denoise) img = tc::median_denoise(img);
    if (c.sharpen) img = tc::unsharp_sharpen(img);
    const fs::path dest = c.out_dir / f.filename();
    if (fs::exists(dest) && fs::equivalent(dest, f)) {
      throw UsageError("output would overwrite input " + f.string());
    }
    tc::write_png(dest, img);
    run.artifact(dest);
    written.push_back(dest.generic_string());
  }
  run.write();
  if (c.json) emit_json(out, c, {{"outputs", written}});
  else out << "wrote " << files.size() << " image(s) at " << c.resize_width << "x" << c.resize_height
           << " to " << c.out_dir.generic_string() << "\n";
  return kExitOk;
}

int cmd_split(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const fs::path manifest_path = input(c, c.manifest, "manifest");
  tc::Manifest m = tc::load_manifest(manifest_path);
  ensure_dir(c.out_dir);
  // Keep image paths valid relative to the new manifest location.
  const fs::path from = fs::absolute(manifest_path).parent_path();
  const fs::path to = fs::absolute(c.out_dir);
  for (tc::SampleRecord& r : m.records) {
    r.image_path = fs::relative(from / r.image_path, to).generic_string();
  }
  m.seed = c.seed;
  m.records = tc::stratified_split(std::move(m.records), c.split, c.seed);
  const fs::path dest = c.out_dir / tc::kManifestFileName;
  tc::save_manifest(m, dest);
  RunRecord run("split", c);
  run.artifact(dest);
  run.write();
  const tc::SplitCounts counts = m.counts();
  std::size_t totals[3] = {0, 0, 0};
  for (const auto& level : counts)
    for (std::size_t s = 0; s < 3; ++s) totals[s] += level[s];
  if (c.json) emit_json(out, c, {{"manifest", dest.generic_string()},
                                 {"train", totals[0]}, {"val", totals[1]}, {"test", totals[2]}});
  else out << "split " << m.records.size() << " records: train " << totals[0] << ", val "
           << totals[1] << ", test " << totals[2] << "\n";
  return kExitOk;
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const fs::path manifest_path = input(c, c.manifest, "manifest");
  const tc::Manifest m = tc::load_manifest(manifest_path);
  const tc::ArchitectureSpec spec =
      tc::ArchitectureSpec::standard(c.train.model_height, c.train.model_width);
  tc::TrainConfig tcfg = c.train;
  tcfg.seed = c.seed;
  const tc::TrainResult r =
      tc::train(spec, tc::build_network(spec, c.seed), m, manifest_path.parent_path(), tcfg);

  ensure_dir(c.out_dir);
  const fs::path ckpt = c.out_dir / "model.tck1";
  tc::save_checkpoint({spec, r.params}, ckpt);
  ordered_json history = ordered_json::array();
  for (const tc::EpochStats& e : r.history) {
    history.push_back({{"epoch", e.epoch}, {"learning_rate", e.learning_rate},
                       {"train_loss", e.train_loss}, {"val_accuracy", e.val_accuracy}});
  }
  const fs::path hist = c.out_dir / "history.json";
  write_text(hist, history.dump(2) + "\n");
  RunRecord run("train", c);
  run.artifact(ckpt);
  run.artifact(hist);
  run.write();

  if (c.json) {
    emit_json(out, c, {{"checkpoint", ckpt.generic_string()}, {"history", history}});
  } else {
    for (const tc::EpochStats& e : r.history) {
      std::ostringstream line;
      line << std::fixed << std::setprecision(4) << "epoch " << e.epoch << "  lr " << e.learning_rate
           << "  loss " << e.train_loss << "  val_acc " << e.val_accuracy;
      out << line.str() << "\n";
    }
    out << "wrote " << ckpt.generic_string() << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const fs::path manifest_path = input(c, c.manifest, "manifest");
  const tc::Model model = tc::load_checkpoint(input(c, c.checkpoint, "checkpoint"));
  const tc::Manifest m = tc::load_manifest(manifest_path);
  std::map<tc::SourceKind, tc::ConfusionMatrix> matrices;
  for (const tc::SampleRecord& r : m.records) {
    if (r.split != tc::Split::Test) continue;
    const tc::ImageRGB img = tc::read_png(manifest_path.parent_path() / r.image_path);
    matrices[r.source].accumulate(r.level, tc::predict(model, img).level);
  }
  if (matrices.empty()) throw tc::ValidationError(manifest_path.string() + ": test split is empty");
  const tc::FormulaSet formulas =
      c.paper_formulas ? tc::FormulaSet::AsPrinted : tc::FormulaSet::Standard;
  std::map<tc::SourceKind, tc::MetricsReport> reports;
  for (const auto& [source, cm] : matrices) reports[source] = tc::compute_metrics(cm, formulas);

  ensure_dir(c.out_dir);
  const std::string text = tc::render_report(reports);
  const std::string json_text = tc::metrics_json(reports);
  write_text(c.out_dir / "metrics.txt", text);
  write_text(c.out_dir / "metrics.json", json_text);
  RunRecord run("evaluate", c);
  run.artifact(c.out_dir / "metrics.txt");
  run.artifact(c.out_dir / "metrics.json");
  run.write();
  if (c.json) emit_json(out, c, nlohmann::ordered_json::parse(json_text));
  else out << text;
  return kExitOk;
}

int cmd_predict(const RunConfig& c, std::ostream& out) {
  echo_config(out, c);
  const tc::Model model = tc::load_checkpoint(input(c, c.checkpoint, "checkpoint"));
  const tc::Prediction p = tc::predict(model, tc::read_png(input(c, c.image, "image")));
  std::vector<double> probs(p.probabilities.data().begin(), p.probabilities.data().end());
  if (c.json) {
    emit_json(out, c, {{"level", tc::level_number(p.level)},
                       {"label", tc::level_label(p.level)},
                       {"probabilities", probs}});
  } else {
    std::ostringstream line;
    line << std::fixed << std::setprecision(6) << "level " << tc::level_number(p.level) << " ("
         << tc::level_label(p.level) << ")  probabilities";
    for (double v : probs) line << " " << v;
    out << line.str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic thermography crack-severity pipeline", "crackctl"};
  app.require_subcommand(1);
  Flags f;
  std::string command;

  CLI::App* synth = app.add_subcommand("synth", "Generate a labeled synthetic dataset");
  add_common(*synth, f);
  synth->add_option("--source", f.source, "msx_like | fusion | thermal | visible");
  synth->add_option("--n-per-level", f.n_per_level, "Samples per crack level");
  synth->add_option("--image-size", f.image_size, "Sample size WxH (default 160x120)");
  synth->add_flag("--hard-boundaries", f.hard_boundaries, "Sample contrast right up to the class boundaries");

  CLI::App* fuse = app.add_subcommand("fuse", "Blend a thermal render with a visible image");
  add_common(*fuse, f);
  fuse->add_option("--thermal", f.thermal, "Thermal render PNG");
  fuse->add_option("--visible", f.visible, "Visible-light PNG");
  fuse->add_option("--source", f.source, "fusion (50% blend) or msx_like (edge overlay)");

  CLI::App* prep = app.add_subcommand("preprocess", "Resize, denoise and sharpen images");
  add_common(*prep, f);
  prep->add_option("--image", f.image, "PNG file or directory of PNGs");
  prep->add_option("--resize", f.resize, "Target WxH (default 1080x1440)");
  prep->add_flag("--denoise", f.denoise, "3x3 median filter");
  prep->add_flag("--sharpen", f.sharpen, "Unsharp mask");

  CLI::App* split = app.add_subcommand("split", "Reassign stratified train/val/test splits");
  add_common(*split, f);
  split->add_option("--manifest", f.manifest, "Input manifest");

  CLI::App* train = app.add_subcommand("train", "Train the classifier on a manifest");
  add_common(*train, f);
  train->add_option("--manifest", f.manifest, "Dataset manifest");
  train->add_option("--learning-rate", f.learning_rate, "SGD learning rate");
  train->add_option("--epochs", f.epochs, "Training epochs");
  train->add_option("--batch-size", f.batch_size, "Mini-batch size");
  train->add_option("--model-input", f.model_input, "Network input WxH (default 160x120)");

  CLI::App* eval = app.add_subcommand("evaluate", "Score a checkpoint on the test split");
  add_common(*eval, f);
  eval->add_option("--manifest", f.manifest, "Dataset manifest");
  eval->add_option("--checkpoint", f.checkpoint, "Model checkpoint");
  eval->add_flag("--paper-formulas", f.paper_formulas, "Use the accuracy and F formulas as printed");

  CLI::App* pred = app.add_subcommand("predict", "Classify one image");
  add_common(*pred, f);
  pred->add_option("--checkpoint", f.checkpoint, "Model checkpoint");
  pred->add_option("--image", f.image, "PNG to classify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "crackctl: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const RunConfig c = resolve(f);
    if (synth->parsed()) return cmd_synth(c, out);
    if (fuse->parsed()) return cmd_fuse(c, out);
    if (prep->parsed()) return cmd_preprocess(c, out);
    if (split->parsed()) return cmd_split(c, out);
    if (train->parsed()) return cmd_train(c, out);
    if (eval->parsed()) return cmd_evaluate(c, out);
    if (pred->parsed()) return cmd_predict(c, out);
    err << "crackctl: usage error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "crackctl: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tc::IoError& e) {
    err << "crackctl: i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tc::DataError& e) {
    err << "crackctl: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const tc::InvariantError& e) {
    err << "crackctl: internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "crackctl: internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace crackctl
