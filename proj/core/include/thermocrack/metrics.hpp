#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thermocrack/crack_level.hpp"

namespace thermocrack {

// 3x3 counts; rows are the actual level, columns the predicted level.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<std::uint64_t, kNumLevels>, kNumLevels>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  void accumulate(CrackLevel actual, CrackLevel predicted) noexcept {
    ++counts_[level_index(actual)][level_index(predicted)];
  }
  // Cell-wise sum; associative and commutative, so evaluation shards can be
  // merged in any order.
  void merge(const ConfusionMatrix& other) noexcept;

  std::uint64_t at(std::size_t actual, std::size_t predicted) const noexcept {
    return counts_[actual][predicted];
  }
  const Counts& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t row_sum(std::size_t actual) const noexcept;
  std::uint64_t column_sum(std::size_t predicted) const noexcept;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  Counts counts_{};
};

// Standard: accuracy = (TP + TN) / N, F1 = 2PR / (P + R).
// AsPrinted: accuracy = (TP + FN) / N, F = PR / (P + R), kept only to show
// how far the literal formulas drift from the standard ones.
enum class FormulaSet { Standard, AsPrinted };

struct ClassMetrics {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  double accuracy = 0.0;  // one-vs-rest
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

struct MetricsReport {
  ConfusionMatrix matrix;
  FormulaSet formulas = FormulaSet::Standard;
  std::array<ClassMetrics, kNumLevels> per_class{};
  double accuracy = 0.0;  // trace / total (standard); mean per-class value (as printed)
  double macro_accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  // One entry per 0/0 ratio that was replaced by 0, e.g. "precision[2nd_degree_crack]".
  std::vector<std::string> undefined;
};

// Throws DomainError on an empty matrix.
MetricsReport compute_metrics(const ConfusionMatrix& matrix,
                              FormulaSet formulas = FormulaSet::Standard);

// Comparative table (Image Type | Accuracy | Precision | Recall | F1) followed
// by each source's confusion matrix with count and percent-of-total cells.
std::string render_report(const std::map<SourceKind, MetricsReport>& reports);

// Machine-readable counterpart of render_report: one object per source token.
std::string metrics_json(const std::map<SourceKind, MetricsReport>& reports);

// "96.83%"
std::string format_percent(double fraction);

}  // namespace thermocrack
