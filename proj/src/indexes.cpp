#include "ehyclus/indexes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "ehyclus/error.hpp"
#include "ehyclus/parallel.hpp"

namespace ehyclus {

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::EI: return "EI";
    case IndexKind::HI: return "HI";
    case IndexKind::MEI: return "MEI";
    case IndexKind::MHI: return "MHI";
    case IndexKind::wMEI: return "wMEI";
    case IndexKind::wMHI: return "wMHI";
  }
  return "?";
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ArgumentError("weight vector is empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ArgumentError("weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ArgumentError("weights must sum to 1, got " + std::to_string(sum));
  }
}

WeightVector WeightVector::uniform(std::size_t n_dims) {
  if (n_dims == 0) throw ArgumentError("uniform weights need n_dims >= 1");
  return WeightVector(
      std::vector<double>(n_dims, 1.0 / static_cast<double>(n_dims)));
}

namespace {

enum class Side { above, below };

std::vector<std::size_t> all_dims(std::size_t p) {
  std::vector<std::size_t> dims(p);
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  return dims;
}

// Fenwick tree over ranks 1..size.
class CountTree {
 public:
  explicit CountTree(std::size_t size) : tree_(size + 1, 0) {}
  void add(std::size_t rank) {
    for (; rank < tree_.size(); rank += rank & (~rank + 1)) ++tree_[rank];
  }
  std::int64_t prefix(std::size_t rank) const {
    std::int64_t total = 0;
    for (; rank > 0; rank -= rank & (~rank + 1)) total += tree_[rank];
    return total;
  }
  void clear() { std::fill(tree_.begin(), tree_.end(), 0); }

 private:
  std::vector<std::int64_t> tree_;
};

// totals[x] = sum over curves i and grid points j of
// [x_i(t_j) >= x(t_j) in every component] (Side::above) or <= (Side::below).
// Integer counts, so every evaluation order gives the same result.
std::vector<std::int64_t> pointwise_dominance_totals(
    const FunctionalSample& sample, Side side) {
  const std::size_t n = sample.n_curves();
  const std::size_t p = sample.n_dims();
  const std::size_t m = sample.n_points();
  const double sign = side == Side::above ? 1.0 : -1.0;
  std::vector<std::int64_t> totals(n, 0);

  if (p == 1) {
    std::vector<double> column(n);
    std::vector<double> sorted(n);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) column[i] = sign * sample.value(i, 0, j);
      sorted = column;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t x = 0; x < n; ++x) {
        auto below = std::lower_bound(sorted.begin(), sorted.end(), column[x]);
        totals[x] += static_cast<std::int64_t>(sorted.end() - below);
      }
    }
    return totals;
  }

  if (p == 2) {
    // Two-dimensional dominance counting per grid point: sweep by the first
    // component in decreasing order, query the second with a Fenwick tree.
    std::vector<double> first(n), second(n), second_sorted(n);
    std::vector<std::size_t> order(n), rank(n);
    CountTree tree(n);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = sign * sample.value(i, 0, j);
        second[i] = sign * sample.value(i, 1, j);
      }
      second_sorted = second;
      std::sort(second_sorted.begin(), second_sorted.end());
      for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::size_t>(
                      std::lower_bound(second_sorted.begin(), second_sorted.end(),
                                       second[i]) -
                      second_sorted.begin()) +
                  1;
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return first[a] > first[b];
      });
      tree.clear();
      std::int64_t inserted = 0;
      for (std::size_t start = 0; start < n;) {
        std::size_t stop = start;
        while (stop < n && first[order[stop]] == first[order[start]]) ++stop;
        for (std::size_t g = start; g < stop; ++g) tree.add(rank[order[g]]);
        inserted += static_cast<std::int64_t>(stop - start);
        for (std::size_t g = start; g < stop; ++g) {
          const std::size_t x = order[g];
          totals[x] += inserted - tree.prefix(rank[x] - 1);
        }
        start = stop;
      }
    }
    return totals;
  }

  parallel_for(n, [&](std::size_t x) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        bool holds = true;
        for (std::size_t k = 0; k < p && holds; ++k) {
          holds = sign * sample.value(i, k, j) >= sign * sample.value(x, k, j);
        }
        count += holds ? 1 : 0;
      }
    }
    totals[x] = count;
  });
  return totals;
}

// counts[x] = number of curves i with x_i >= x (or <=) at every grid point
// and in every component.
std::vector<std::int64_t> whole_curve_dominance_counts(
    const FunctionalSample& sample, Side side) {
  const std::size_t n = sample.n_curves();
  const std::size_t p = sample.n_dims();
  const std::size_t m = sample.n_points();
  const double sign = side == Side::above ? 1.0 : -1.0;
  std::vector<std::int64_t> counts(n, 0);
  parallel_for(n, [&](std::size_t x) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool holds = true;
      for (std::size_t k = 0; k < p && holds; ++k) {
        auto ci = sample.component(i, k);
        auto cx = sample.component(x, k);
        for (std::size_t j = 0; j < m && holds; ++j) {
          holds = sign * ci[j] >= sign * cx[j];
        }
      }
      count += holds ? 1 : 0;
    }
    counts[x] = count;
  });
  return counts;
}

}  // namespace

EpiHypoPair ei_hi(const FunctionalSample& sample) {
  const auto n = static_cast<double>(sample.n_curves());
  const auto above = whole_curve_dominance_counts(sample, Side::above);
  const auto below = whole_curve_dominance_counts(sample, Side::below);
  EpiHypoPair result{{{}, IndexKind::EI, all_dims(sample.n_dims())},
                     {{}, IndexKind::HI, all_dims(sample.n_dims())}};
  result.epigraph.values.reserve(above.size());
  result.hypograph.values.reserve(below.size());
  for (std::size_t x = 0; x < above.size(); ++x) {
    result.epigraph.values.push_back(1.0 - static_cast<double>(above[x]) / n);
    result.hypograph.values.push_back(static_cast<double>(below[x]) / n);
  }
  return result;
}

EpiHypoPair mei_mhi(const FunctionalSample& sample) {
  const double cells = static_cast<double>(sample.n_curves()) *
                       static_cast<double>(sample.n_points());
  const auto above = pointwise_dominance_totals(sample, Side::above);
  const auto below = pointwise_dominance_totals(sample, Side::below);
  EpiHypoPair result{{{}, IndexKind::MEI, all_dims(sample.n_dims())},
                     {{}, IndexKind::MHI, all_dims(sample.n_dims())}};
  result.epigraph.values.reserve(above.size());
  result.hypograph.values.reserve(below.size());
  for (std::size_t x = 0; x < above.size(); ++x) {
    result.epigraph.values.push_back(1.0 - static_cast<double>(above[x]) / cells);
    result.hypograph.values.push_back(static_cast<double>(below[x]) / cells);
  }
  return result;
}

EpiHypoPair weighted_mei_mhi(const FunctionalSample& sample,
                             const WeightVector& weights) {
  const std::size_t p = sample.n_dims();
  if (weights.size() != p) {
    throw DimensionError("weighted_mei_mhi: " + std::to_string(weights.size()) +
                         " weights for " + std::to_string(p) + " dimensions");
  }
  const std::size_t n = sample.n_curves();
  EpiHypoPair result{{std::vector<double>(n, 0.0), IndexKind::wMEI, {}},
                     {std::vector<double>(n, 0.0), IndexKind::wMHI, {}}};
  for (std::size_t k = 0; k < p; ++k) {
    if (weights[k] == 0.0) continue;
    const std::size_t dim[] = {k};
    const EpiHypoPair univariate = mei_mhi(restrict_dims(sample, dim));
    for (std::size_t x = 0; x < n; ++x) {
      result.epigraph.values[x] += weights[k] * univariate.epigraph.values[x];
      result.hypograph.values[x] += weights[k] * univariate.hypograph.values[x];
    }
    result.epigraph.dims_used.push_back(k);
    result.hypograph.dims_used.push_back(k);
  }
  return result;
}

WeightVector covariance_weights(const FunctionalSample& sample) {
  const std::size_t n = sample.n_curves();
  const std::size_t p = sample.n_dims();
  const std::size_t m = sample.n_points();
  if (n < 2) throw ArgumentError("covariance_weights needs at least 2 curves");

  std::vector<double> inverse_eigen(p);
  for (std::size_t k = 0; k < p; ++k) {
    Eigen::MatrixXd centered(static_cast<Eigen::Index>(n),
                             static_cast<Eigen::Index>(m));
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto comp = sample.component(i, k);
      for (std::size_t j = 0; j < m; ++j) {
        centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = comp[j];
        scale = std::max(scale, comp[j] * comp[j]);
      }
    }
    centered.rowwise() -= centered.colwise().mean();
    // The m x m covariance and the n x n Gram matrix share their nonzero
    // spectrum; decompose the smaller one.
    const Eigen::MatrixXd product =
        (n <= m ? Eigen::MatrixXd(centered * centered.transpose())
                : Eigen::MatrixXd(centered.transpose() * centered)) /
        static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        product, Eigen::EigenvaluesOnly);
    const double largest = solver.eigenvalues().maxCoeff();
    const double floor = 1e-12 * std::max(1.0, scale);
    if (!(largest > floor)) {
      throw DegeneracyError("covariance_weights: dimension " + std::to_string(k) +
                            " has no variance (largest eigenvalue " +
                            std::to_string(largest) + ")");
    }
    inverse_eigen[k] = 1.0 / largest;
  }
  const double total = std::accumulate(inverse_eigen.begin(), inverse_eigen.end(), 0.0);
  for (double& q : inverse_eigen) q /= total;
  return WeightVector(std::move(inverse_eigen));
}

EpiHypoPair subset_mei_mhi(const FunctionalSample& sample,
                           std::span<const std::size_t> dims) {
  EpiHypoPair result = mei_mhi(restrict_dims(sample, dims));
  result.epigraph.dims_used.assign(dims.begin(), dims.end());
  result.hypograph.dims_used.assign(dims.begin(), dims.end());
  return result;
}

std::vector<double> relation_residual(const FunctionalSample& sample) {
  const std::size_t p = sample.n_dims();
  const std::size_t n = sample.n_curves();
  if (p > 20) throw ArgumentError("relation_residual: too many dimensions");
  const double parity_p = (p % 2 == 0) ? 1.0 : -1.0;  // (-1)^p

  const EpiHypoPair joint = mei_mhi(sample);
  std::vector<double> rhs(n, -parity_p / static_cast<double>(n));

  const std::uint32_t full = (1u << p) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < p; ++k) {
      if (mask & (1u << k)) dims.push_back(k);
    }
    // (-1)^{r+p+1}
    const double sign = ((dims.size() + p + 1) % 2 == 0) ? 1.0 : -1.0;
    const EpiHypoPair subset = subset_mei_mhi(sample, dims);
    for (std::size_t x = 0; x < n; ++x) rhs[x] += sign * subset.hypograph.values[x];
  }

  std::vector<double> residual(n);
  for (std::size_t x = 0; x < n; ++x) {
    residual[x] = joint.hypograph.values[x] + parity_p * joint.epigraph.values[x] -
                  rhs[x];
  }
  return residual;
}

}  // namespace ehyclus
