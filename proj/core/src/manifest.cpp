#include "thermocrack/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thermocrack/error.hpp"

namespace thermocrack {

using ordered_json = nlohmann::ordered_json;

SplitCounts Manifest::counts() const {
  SplitCounts c{};
  for (const SampleRecord& r : records) ++c[level_index(r.level)][static_cast<std::size_t>(r.split)];
  return c;
}

std::vector<SampleRecord> Manifest::in_split(Split split) const {
  std::vector<SampleRecord> out;
  for (const SampleRecord& r : records) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

void validate_manifest(const Manifest& manifest) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const SampleRecord& r = manifest.records[i];
    if (r.image_path.empty()) {
      throw ValidationError("record " + std::to_string(i) + ": empty image path");
    }
    if (!std::isfinite(r.delta_t) || r.delta_t < 0.0) {
      throw ValidationError("record " + std::to_string(i) + " (" + r.image_path +
                            "): delta_t must be finite and non-negative");
    }
    if (classify_delta_t(r.delta_t) != r.level) {
      throw ValidationError("record " + std::to_string(i) + " (" + r.image_path + "): delta_t " +
                            std::to_string(r.delta_t) + " does not classify as level " +
                            std::to_string(level_number(r.level)));
    }
    if (!seen.insert(r.image_path).second) {
      throw ValidationError("duplicate image path '" + r.image_path + "'");
    }
  }
}

namespace {

ordered_json counts_json(const SplitCounts& counts) {
  ordered_json doc = ordered_json::object();
  for (CrackLevel level : kAllLevels) {
    ordered_json row = ordered_json::object();
    for (Split s : {Split::Train, Split::Val, Split::Test}) {
      row[std::string(to_string(s))] = counts[level_index(level)][static_cast<std::size_t>(s)];
    }
    doc[std::to_string(level_number(level))] = row;
  }
  return doc;
}

ordered_json record_json(const SampleRecord& r) {
  ordered_json doc;
  doc["path"] = r.image_path;
  doc["source"] = to_string(r.source);
  doc["level"] = level_number(r.level);
  doc["delta_t"] = r.delta_t;
  doc["split"] = to_string(r.split);
  return doc;
}

template <typename T>
T field(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, std::string("missing key '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(line, std::string("key '") + key + "' has the wrong type");
  }
}

SampleRecord parse_record(const nlohmann::json& obj, std::size_t line) {
  if (!obj.is_object()) throw ParseError(line, "record must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& k = it.key();
    if (k != "path" && k != "source" && k != "level" && k != "delta_t" && k != "split") {
      throw ParseError(line, "unknown key '" + k + "'");
    }
  }
  SampleRecord r;
  r.image_path = field<std::string>(obj, "path", line);
  try {
    r.source = source_kind_from_string(field<std::string>(obj, "source", line));
    r.split = split_from_string(field<std::string>(obj, "split", line));
  } catch (const DomainError& e) {
    throw ParseError(line, e.what());
  }
  const nlohmann::json& level = obj.contains("level") ? obj.at("level") : nlohmann::json();
  if (!level.is_number_integer()) {
    throw ParseError(line, "level must be one of 1, 2, 3, got " + level.dump());
  }
  const auto n = level.get<long long>();
  if (n < 1 || n > 3) {
    throw ParseError(line, "level must be one of 1, 2, 3, got " + std::to_string(n));
  }
  r.level = level_from_number(static_cast<int>(n));
  r.delta_t = field<double>(obj, "delta_t", line);
  return r;
}

}  // namespace

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  validate_manifest(manifest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open manifest for writing");
  ordered_json header;
  header["version"] = Manifest::kVersion;
  header["seed"] = manifest.seed;
  header["counts"] = counts_json(manifest.counts());
  out << header.dump() << '\n';
  for (const SampleRecord& r : manifest.records) out << record_json(r).dump() << '\n';
  out.flush();
  if (!out) throw IoError(path, "failed writing manifest");
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open manifest");

  Manifest manifest;
  std::string text;
  std::size_t line_no = 0;
  bool have_header = false;
  nlohmann::json declared_counts;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!have_header) {
      if (!obj.is_object() || !obj.contains("version")) {
        throw ParseError(line_no, "first line must be the manifest header");
      }
      if (field<int>(obj, "version", line_no) != Manifest::kVersion) {
        throw ParseError(line_no, "unsupported manifest version " + obj.at("version").dump());
      }
      manifest.seed = field<std::uint64_t>(obj, "seed", line_no);
      if (obj.contains("counts")) declared_counts = obj.at("counts");
      have_header = true;
      continue;
    }
    manifest.records.push_back(parse_record(obj, line_no));
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "manifest header missing");

  validate_manifest(manifest);
  if (!declared_counts.is_null()) {
    nlohmann::json actual = nlohmann::json::parse(counts_json(manifest.counts()).dump());
    if (declared_counts != actual) {
      throw ValidationError(path.string() + ": header counts do not match the records");
    }
  }
  return manifest;
}

}  // namespace thermocrack
