#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ehyclus/functional_sample.hpp"

namespace ehyclus {

enum class IndexKind { EI, HI, MEI, MHI, wMEI, wMHI };

std::string_view to_string(IndexKind kind);

/// One index value per curve, all in [0, 1].
struct IndexVector {
  std::vector<double> values;
  IndexKind kind;
  std::vector<std::size_t> dims_used;  // 0-based
};

/// Epigraph-type and hypograph-type index of the same family.
struct EpiHypoPair {
  IndexVector epigraph;
  IndexVector hypograph;
};

/// Nonnegative per-dimension weights summing to one (within 1e-12).
/// Zero entries are allowed; those dimensions simply drop out.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);
  static WeightVector uniform(std::size_t n_dims);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }

 private:
  std::vector<double> weights_;
};

/// Joint EI/HI: share of curves lying entirely above (resp. below) each curve
/// in every component at once. Equal values count as above and as below, and
/// every curve belongs to its own sample, so EI <= 1 - 1/n and HI >= 1/n.
EpiHypoPair ei_hi(const FunctionalSample& sample);

/// Joint MEI/MHI: average over sample curves of the share of grid points at
/// which all components lie above (resp. below). For p = 1 this is the
/// univariate MEI/MHI.
EpiHypoPair mei_mhi(const FunctionalSample& sample);

/// Weighted average of univariate MEI/MHI per dimension (uMEI/uMHI for
/// uniform weights, cMEI/cMHI for covariance_weights).
EpiHypoPair weighted_mei_mhi(const FunctionalSample& sample,
                             const WeightVector& weights);

/// rho_k proportional to 1 / (largest eigenvalue of the sample covariance of
/// dimension k on the grid). Requires n >= 2; throws DegeneracyError when a
/// dimension has (numerically) no variance.
WeightVector covariance_weights(const FunctionalSample& sample);

/// Joint MEI/MHI of the sample restricted to `dims` (0-based).
EpiHypoPair subset_mei_mhi(const FunctionalSample& sample,
                           std::span<const std::size_t> dims);

/// Per-curve residual of the MEI/MHI relation over all proper subsets of
/// dimensions:
///   [MHI + (-1)^p MEI] - [sum_{S proper, nonempty} (-1)^{|S|+p+1} MHI_S
///                         + (-1)^{p+1} / n].
/// Vanishes whenever no two distinct curves tie at a grid point in any
/// dimension; ties leave a nonzero remainder.
std::vector<double> relation_residual(const FunctionalSample& sample);

}  // namespace ehyclus
