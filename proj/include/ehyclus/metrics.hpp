#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ehyclus/functional_sample.hpp"

namespace ehyclus {

struct EvaluationReport {
  double purity = 0.0;
  /// Pairwise F1: harmonic mean of pair precision and pair recall.
  double f_measure = 0.0;
  double rand_index = 0.0;
  /// Filled in by the caller.
  double elapsed_seconds = 0.0;
};

/// Pair counts behind the pairwise metrics.
struct PairCounts {
  double same_both = 0.0;   // co-clustered in pred and truth
  double same_pred = 0.0;   // co-clustered in pred
  double same_truth = 0.0;  // co-clustered in truth
  double total = 0.0;       // n choose 2
};

/// Rows index truth classes, columns predicted clusters.
Eigen::MatrixXi confusion_matrix(const Partition& pred, const Partition& truth);

PairCounts pair_counts(const Partition& pred, const Partition& truth);

/// Requires equal lengths and n >= 2. F-measure is 0 when either partition
/// has no co-clustered pair.
EvaluationReport evaluate(const Partition& pred, const Partition& truth);

}  // namespace ehyclus
