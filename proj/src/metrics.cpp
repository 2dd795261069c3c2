#include "ehyclus/metrics.hpp"

#include <string>

#include "ehyclus/error.hpp"

namespace ehyclus {

namespace {

void check_lengths(const Partition& pred, const Partition& truth) {
  if (pred.size() != truth.size()) {
    throw ArgumentError("partitions differ in length (" + std::to_string(pred.size()) +
                        " vs " + std::to_string(truth.size()) + ")");
  }
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

Eigen::MatrixXi confusion_matrix(const Partition& pred, const Partition& truth) {
  check_lengths(pred, truth);
  Eigen::MatrixXi table = Eigen::MatrixXi::Zero(truth.k(), pred.k());
  for (std::size_t i = 0; i < pred.size(); ++i) ++table(truth[i] - 1, pred[i] - 1);
  return table;
}

PairCounts pair_counts(const Partition& pred, const Partition& truth) {
  const Eigen::MatrixXi table = confusion_matrix(pred, truth);
  PairCounts counts;
  for (Eigen::Index a = 0; a < table.rows(); ++a) {
    for (Eigen::Index b = 0; b < table.cols(); ++b) {
      counts.same_both += choose2(table(a, b));
    }
  }
  for (Eigen::Index b = 0; b < table.cols(); ++b) {
    counts.same_pred += choose2(table.col(b).sum());
  }
  for (Eigen::Index a = 0; a < table.rows(); ++a) {
    counts.same_truth += choose2(table.row(a).sum());
  }
  counts.total = choose2(static_cast<double>(pred.size()));
  return counts;
}

EvaluationReport evaluate(const Partition& pred, const Partition& truth) {
  check_lengths(pred, truth);
  if (pred.size() < 2) throw ArgumentError("evaluation needs at least 2 observations");
  const Eigen::MatrixXi table = confusion_matrix(pred, truth);
  const PairCounts counts = pair_counts(pred, truth);

  EvaluationReport report;
  double majority = 0.0;
  for (Eigen::Index b = 0; b < table.cols(); ++b) majority += table.col(b).maxCoeff();
  report.purity = majority / static_cast<double>(pred.size());

  const double agree =
      counts.total - counts.same_pred - counts.same_truth + 2.0 * counts.same_both;
  report.rand_index = agree / counts.total;

  if (counts.same_pred > 0.0 && counts.same_truth > 0.0 && counts.same_both > 0.0) {
    const double precision = counts.same_both / counts.same_pred;
    const double recall = counts.same_both / counts.same_truth;
    report.f_measure = 2.0 * precision * recall / (precision + recall);
  }
  return report;
}

}  // namespace ehyclus
