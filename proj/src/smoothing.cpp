#include "ehyclus/smoothing.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "ehyclus/error.hpp"

namespace ehyclus {

BSplineBasis::BSplineBasis(double lo, double hi, std::size_t n_basis, int order)
    : order_(order), n_basis_(n_basis) {
  if (order_ < 2) throw ArgumentError("B-spline order must be >= 2");
  if (n_basis_ < static_cast<std::size_t>(order_)) {
    throw ArgumentError("B-spline basis needs n_basis >= order (" +
                        std::to_string(n_basis_) + " < " +
                        std::to_string(order_) + ")");
  }
  if (!(lo < hi)) throw ArgumentError("B-spline interval must satisfy lo < hi");

  const std::size_t interior = n_basis_ - static_cast<std::size_t>(order_);
  knots_.reserve(n_basis_ + static_cast<std::size_t>(order_));
  knots_.insert(knots_.end(), static_cast<std::size_t>(order_), lo);
  for (std::size_t b = 1; b <= interior; ++b) {
    knots_.push_back(lo + (hi - lo) * static_cast<double>(b) /
                              static_cast<double>(interior + 1));
  }
  knots_.insert(knots_.end(), static_cast<std::size_t>(order_), hi);
}

std::size_t BSplineBasis::find_span(double t) const {
  const std::size_t degree = static_cast<std::size_t>(order_ - 1);
  if (t >= knots_[n_basis_]) return n_basis_ - 1;
  if (t <= knots_[degree]) return degree;
  // Last index s with knots[s] <= t.
  auto it = std::upper_bound(knots_.begin() + static_cast<long>(degree),
                             knots_.begin() + static_cast<long>(n_basis_) + 1, t);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

// Cox-de Boor triangle with derivative recursion (Piegl & Tiller, A2.3).
void BSplineBasis::evaluate(double t, int deriv, std::span<double> out) const {
  if (out.size() != n_basis_) {
    throw DimensionError("evaluate: output span has wrong size");
  }
  std::fill(out.begin(), out.end(), 0.0);
  if (deriv < 0) throw ArgumentError("derivative order must be >= 0");
  if (deriv >= order_) return;

  t = std::clamp(t, lower(), upper());
  const int p = order_ - 1;
  const std::size_t span = find_span(t);

  std::vector<double> left(static_cast<std::size_t>(p + 1));
  std::vector<double> right(static_cast<std::size_t>(p + 1));
  // ndu(j, r): basis values in the upper triangle, knot differences below.
  Eigen::MatrixXd ndu(p + 1, p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - knots_[span + 1 - static_cast<std::size_t>(j)];
    right[j] = knots_[span + static_cast<std::size_t>(j)] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(deriv + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= deriv; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= deriv; ++k) {
    ders.row(k) *= factor;
    factor *= (p - k);
  }

  const std::size_t first = span - static_cast<std::size_t>(p);
  for (int r = 0; r <= p; ++r) {
    out[first + static_cast<std::size_t>(r)] = ders(deriv, r);
  }
}

Eigen::MatrixXd BSplineBasis::design(std::span<const double> t, int deriv) const {
  Eigen::MatrixXd result(static_cast<Eigen::Index>(t.size()),
                         static_cast<Eigen::Index>(n_basis_));
  std::vector<double> row(n_basis_);
  for (std::size_t j = 0; j < t.size(); ++j) {
    evaluate(t[j], deriv, row);
    for (std::size_t b = 0; b < n_basis_; ++b) {
      result(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b)) = row[b];
    }
  }
  return result;
}

SmoothedSample fit_bspline(const FunctionalSample& sample, std::size_t n_basis,
                           int order) {
  const std::size_t m = sample.n_points();
  if (m < n_basis) {
    throw ArgumentError("fit_bspline: " + std::to_string(m) +
                        " grid points cannot determine " +
                        std::to_string(n_basis) + " basis coefficients");
  }
  BSplineBasis basis(sample.grid().front(), sample.grid().back(), n_basis,
                     order);
  const Eigen::MatrixXd design = basis.design(sample.grid().points());

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(n_basis)) {
    std::ostringstream msg;
    msg << "fit_bspline: design matrix is rank deficient (rank " << qr.rank()
        << " of " << n_basis << ", order " << order << ", " << m
        << " grid points on [" << basis.lower() << ", " << basis.upper()
        << "]); some basis functions have no support on the grid";
    throw NumericalError(msg.str());
  }

  const std::size_t columns = sample.n_curves() * sample.n_dims();
  // Values are stored curve-major, so each component is one column.
  Eigen::Map<const Eigen::MatrixXd> observations(
      sample.values().data(), static_cast<Eigen::Index>(m),
      static_cast<Eigen::Index>(columns));
  Eigen::MatrixXd coefficients = qr.solve(observations);

  return SmoothedSample{sample.n_curves(), sample.n_dims(), std::move(basis),
                        sample.grid(),     std::move(coefficients),
                        sample.labels()};
}

FunctionalSample eval_derivative(const SmoothedSample& smoothed,
                                 int deriv_order) {
  if (deriv_order < 0 || deriv_order > smoothed.basis.order() - 2) {
    throw ArgumentError("eval_derivative: derivative order " +
                        std::to_string(deriv_order) +
                        " unsupported for a basis of order " +
                        std::to_string(smoothed.basis.order()));
  }
  const Eigen::MatrixXd design =
      smoothed.basis.design(smoothed.grid.points(), deriv_order);
  const Eigen::MatrixXd evaluated = design * smoothed.coefficients;
  std::vector<double> values(evaluated.data(),
                             evaluated.data() + evaluated.size());
  return FunctionalSample(smoothed.n_curves, smoothed.n_dims, smoothed.grid,
                          std::move(values), smoothed.labels);
}

}  // namespace ehyclus
