#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ehyclus {

/// Strictly increasing evaluation grid shared by every curve of a sample.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// `count` equidistant points from `first` to `last` inclusive.
  static Grid equidistant(double first, double last, std::size_t count);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double operator[](std::size_t j) const { return points_[j]; }

  /// Length of the interval spanned by the grid.
  double interval_length() const { return points_.back() - points_.front(); }

  bool operator==(const Grid&) const = default;

 private:
  std::vector<double> points_;
};

/// n curves with p components each, evaluated on a common grid of m points.
///
/// Values are stored curve-major: value(i, k, j) lives at (i * p + k) * m + j,
/// so each component of each curve is a contiguous span. Optional ground
/// truth labels use ids 1..K.
class FunctionalSample {
 public:
  FunctionalSample(std::size_t n_curves, std::size_t n_dims, Grid grid,
                   std::vector<double> values,
                   std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t n_curves() const { return n_curves_; }
  std::size_t n_dims() const { return n_dims_; }
  std::size_t n_points() const { return grid_.size(); }
  const Grid& grid() const { return grid_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }

  double value(std::size_t curve, std::size_t dim, std::size_t point) const {
    return values_[(curve * n_dims_ + dim) * grid_.size() + point];
  }

  std::span<const double> component(std::size_t curve, std::size_t dim) const {
    return {values_.data() + (curve * n_dims_ + dim) * grid_.size(),
            grid_.size()};
  }

  std::span<const double> values() const { return values_; }

  /// Copy of this sample with different (or no) labels.
  FunctionalSample with_labels(std::optional<std::vector<int>> labels) const;

  bool operator==(const FunctionalSample&) const = default;

 private:
  std::size_t n_curves_;
  std::size_t n_dims_;
  Grid grid_;
  std::vector<double> values_;
  std::optional<std::vector<int>> labels_;
};

/// Cluster assignment with ids in 1..k.
class Partition {
 public:
  Partition(std::vector<int> assignment, int k);

  /// Partition whose ids are renumbered 1, 2, ... in order of first
  /// appearance; k is the number of distinct ids.
  static Partition canonical(std::span<const int> ids);

  std::span<const int> assignment() const { return assignment_; }
  int k() const { return k_; }
  std::size_t size() const { return assignment_.size(); }
  int operator[](std::size_t i) const { return assignment_[i]; }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> assignment_;
  int k_;
};

/// Share of grid points where `mask` holds; the discrete stand-in for
/// lambda({t : condition}) / lambda(I).
double fraction_of_grid(const std::vector<bool>& mask, const Grid& grid);

/// Sample restricted to the given 0-based dimensions, in the given order.
FunctionalSample restrict_dims(const FunctionalSample& sample,
                               std::span<const std::size_t> dims);

}  // namespace ehyclus
