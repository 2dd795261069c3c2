#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ehyclus/functional_sample.hpp"

namespace ehyclus {

/// Clamped B-spline basis with uniformly spaced interior knots.
class BSplineBasis {
 public:
  /// `order` is the polynomial order (4 = cubic). Requires
  /// n_basis >= order >= 2 and lo < hi.
  BSplineBasis(double lo, double hi, std::size_t n_basis, int order = 4);

  int order() const { return order_; }
  std::size_t n_basis() const { return n_basis_; }
  std::span<const double> knots() const { return knots_; }
  double lower() const { return knots_.front(); }
  double upper() const { return knots_.back(); }

  /// Values of the `deriv`-th derivative of every basis function at t,
  /// written to `out` (size n_basis). Points outside [lo, hi] are clamped.
  void evaluate(double t, int deriv, std::span<double> out) const;

  /// Collocation matrix: row j holds the `deriv`-th derivatives at t[j].
  Eigen::MatrixXd design(std::span<const double> t, int deriv = 0) const;

 private:
  std::size_t find_span(double t) const;

  int order_;
  std::size_t n_basis_;
  std::vector<double> knots_;
};

/// Least-squares B-spline fit of every component of every curve.
struct SmoothedSample {
  std::size_t n_curves;
  std::size_t n_dims;
  BSplineBasis basis;
  Grid grid;
  /// n_basis x (n_curves * n_dims); column i * n_dims + k holds the
  /// coefficients of component k of curve i.
  Eigen::MatrixXd coefficients;
  std::optional<std::vector<int>> labels;
};

inline constexpr std::size_t kDefaultBasisCount = 35;

/// Ordinary least squares fit with a shared design matrix.
/// Throws ArgumentError when m < n_basis and NumericalError when the design
/// matrix is rank deficient.
SmoothedSample fit_bspline(const FunctionalSample& sample,
                           std::size_t n_basis = kDefaultBasisCount,
                           int order = 4);

/// Evaluates the fitted curves (deriv_order 0) or their analytic
/// derivatives on the original grid. deriv_order must not exceed
/// order - 2.
FunctionalSample eval_derivative(const SmoothedSample& smoothed,
                                 int deriv_order);

}  // namespace ehyclus
