#include "thermocrack/metrics.hpp"

#include "thermocrack/error.hpp"

namespace thermocrack {

void ConfusionMatrix::merge(const ConfusionMatrix& other) noexcept {
  for (std::size_t a = 0; a < kNumLevels; ++a)
    for (std::size_t p = 0; p < kNumLevels; ++p) counts_[a][p] += other.counts_[a][p];
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& row : counts_)
    for (std::uint64_t v : row) n += v;
  return n;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < kNumLevels; ++k) n += counts_[k][k];
  return n;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t actual) const noexcept {
  std::uint64_t n = 0;
  for (std::uint64_t v : counts_[actual]) n += v;
  return n;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t predicted) const noexcept {
  std::uint64_t n = 0;
  for (const auto& row : counts_) n += row[predicted];
  return n;
}

namespace {

// num / den, with 0/0 -> 0 and `undefined` raised.
double ratio(double num, double den, bool& undefined) {
  if (den == 0.0) {
    undefined = true;
    return 0.0;
  }
  return num / den;
}

}  // namespace

MetricsReport compute_metrics(const ConfusionMatrix& matrix, FormulaSet formulas) {
  const std::uint64_t total = matrix.total();
  if (total == 0) throw DomainError("compute_metrics: confusion matrix is empty");

  MetricsReport report;
  report.matrix = matrix;
  report.formulas = formulas;
  const double n = static_cast<double>(total);

  for (std::size_t k = 0; k < kNumLevels; ++k) {
    ClassMetrics& m = report.per_class[k];
    m.tp = matrix.at(k, k);
    m.fp = matrix.column_sum(k) - m.tp;
    m.fn = matrix.row_sum(k) - m.tp;
    m.tn = total - m.tp - m.fp - m.fn;

    const auto tp = static_cast<double>(m.tp);
    m.precision = ratio(tp, tp + static_cast<double>(m.fp), m.precision_undefined);
    m.recall = ratio(tp, tp + static_cast<double>(m.fn), m.recall_undefined);
    if (formulas == FormulaSet::Standard) {
      m.accuracy = (tp + static_cast<double>(m.tn)) / n;
      m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall, m.f1_undefined);
    } else {
      m.accuracy = (tp + static_cast<double>(m.fn)) / n;
      m.f1 = ratio(m.precision * m.recall, m.precision + m.recall, m.f1_undefined);
    }

    const std::string label(level_label(level_from_index(k)));
    if (m.precision_undefined) report.undefined.push_back("precision[" + label + "]");
    if (m.recall_undefined) report.undefined.push_back("recall[" + label + "]");
    if (m.f1_undefined) report.undefined.push_back("f1[" + label + "]");

    report.macro_accuracy += m.accuracy;
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
  }
  report.macro_accuracy /= kNumLevels;
  report.macro_precision /= kNumLevels;
  report.macro_recall /= kNumLevels;
  report.macro_f1 /= kNumLevels;
  report.accuracy = formulas == FormulaSet::Standard
                        ? static_cast<double>(matrix.trace()) / n
                        : report.macro_accuracy;
  return report;
}

}  // namespace thermocrack
