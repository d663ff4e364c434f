#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thermocrack/metrics.hpp"

namespace thermocrack {

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

namespace {

std::string cell(std::uint64_t count, std::uint64_t total) {
  return std::to_string(count) + " " +
         format_percent(static_cast<double>(count) / static_cast<double>(total));
}

std::string rate_pair(double rate) {
  return format_percent(rate) + " " + format_percent(1.0 - rate);
}

void pad(std::ostringstream& os, const std::string& s, int width) {
  os << std::left << std::setw(width) << s;
}

}  // namespace

std::string render_report(const std::map<SourceKind, MetricsReport>& reports) {
  std::ostringstream os;
  constexpr int kName = 14, kCol = 12;
  pad(os, "Image Type", kName);
  for (const char* h : {"Accuracy", "Precision", "Recall"}) pad(os, h, kCol);
  os << "F1\n";
  for (const auto& [source, r] : reports) {
    pad(os, std::string(to_string(source)), kName);
    pad(os, format_percent(r.accuracy), kCol);
    pad(os, format_percent(r.macro_precision), kCol);
    pad(os, format_percent(r.macro_recall), kCol);
    os << format_percent(r.macro_f1) << '\n';
  }

  constexpr int kLabel = 18, kCell = 19;
  for (const auto& [source, r] : reports) {
    const std::uint64_t total = r.matrix.total();
    os << "\nConfusion matrix: " << to_string(source) << " (rows actual, columns predicted, N="
       << total << (r.formulas == FormulaSet::AsPrinted ? ", as-printed formulas" : "") << ")\n";
    pad(os, "", kLabel);
    for (CrackLevel level : kAllLevels) pad(os, std::string(level_label(level)), kCell);
    os << "recall\n";
    for (std::size_t a = 0; a < kNumLevels; ++a) {
      pad(os, std::string(level_label(level_from_index(a))), kLabel);
      for (std::size_t p = 0; p < kNumLevels; ++p) pad(os, cell(r.matrix.at(a, p), total), kCell);
      os << rate_pair(r.per_class[a].recall) << '\n';
    }
    pad(os, "precision", kLabel);
    for (std::size_t p = 0; p < kNumLevels; ++p) pad(os, rate_pair(r.per_class[p].precision), kCell);
    os << rate_pair(r.accuracy) << '\n';
    if (!r.undefined.empty()) {
      os << "undefined (0/0 reported as 0):";
      for (const std::string& u : r.undefined) os << ' ' << u;
      os << '\n';
    }
  }
  return os.str();
}

std::string metrics_json(const std::map<SourceKind, MetricsReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [source, r] : reports) {
    nlohmann::ordered_json entry;
    entry["formulas"] = r.formulas == FormulaSet::Standard ? "standard" : "as_printed";
    entry["total"] = r.matrix.total();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.matrix.counts()) rows.push_back(row);
    entry["confusion_matrix"] = rows;
    entry["accuracy"] = r.accuracy;
    entry["macro_accuracy"] = r.macro_accuracy;
    entry["macro_precision"] = r.macro_precision;
    entry["macro_recall"] = r.macro_recall;
    entry["macro_f1"] = r.macro_f1;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < kNumLevels; ++k) {
      const ClassMetrics& m = r.per_class[k];
      nlohmann::ordered_json c;
      c["level"] = k + 1;
      c["label"] = level_label(level_from_index(k));
      c["tp"] = m.tp;
      c["fp"] = m.fp;
      c["fn"] = m.fn;
      c["tn"] = m.tn;
      c["accuracy"] = m.accuracy;
      c["precision"] = m.precision;
      c["recall"] = m.recall;
      c["f1"] = m.f1;
      classes.push_back(c);
    }
    entry["per_class"] = classes;
    entry["undefined"] = r.undefined;
    doc[std::string(to_string(source))] = entry;
  }
  return doc.dump(2) + "\n";
}

}  // namespace thermocrack
