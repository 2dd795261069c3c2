#include "ehyclus/functional_sample.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ehyclus/error.hpp"

namespace ehyclus {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw ArgumentError("grid needs at least 2 points, got " +
                        std::to_string(points_.size()));
  }
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!std::isfinite(points_[j])) {
      throw ArgumentError("grid point " + std::to_string(j) + " is not finite");
    }
    if (j > 0 && !(points_[j] > points_[j - 1])) {
      throw ArgumentError("grid is not strictly increasing at point " +
                          std::to_string(j));
    }
  }
}

Grid Grid::equidistant(double first, double last, std::size_t count) {
  if (count < 2) throw ArgumentError("equidistant grid needs count >= 2");
  std::vector<double> pts(count);
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    pts[j] = first + step * static_cast<double>(j);
  }
  pts.back() = last;
  return Grid(std::move(pts));
}

FunctionalSample::FunctionalSample(std::size_t n_curves, std::size_t n_dims,
                                   Grid grid, std::vector<double> values,
                                   std::optional<std::vector<int>> labels)
    : n_curves_(n_curves),
      n_dims_(n_dims),
      grid_(std::move(grid)),
      values_(std::move(values)),
      labels_(std::move(labels)) {
  if (n_curves_ == 0) throw ArgumentError("sample needs at least one curve");
  if (n_dims_ == 0) throw ArgumentError("sample needs at least one dimension");
  if (values_.size() != n_curves_ * n_dims_ * grid_.size()) {
    throw DimensionError("sample values: expected " +
                         std::to_string(n_curves_ * n_dims_ * grid_.size()) +
                         " entries, got " + std::to_string(values_.size()));
  }
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx])) {
      const std::size_t m = grid_.size();
      throw ArgumentError("non-finite value at curve " +
                          std::to_string(idx / (m * n_dims_)) + ", dim " +
                          std::to_string((idx / m) % n_dims_) + ", point " +
                          std::to_string(idx % m));
    }
  }
  if (labels_) {
    if (labels_->size() != n_curves_) {
      throw DimensionError("labels: expected " + std::to_string(n_curves_) +
                           " entries, got " + std::to_string(labels_->size()));
    }
    for (int label : *labels_) {
      if (label < 1) throw ArgumentError("labels must be >= 1");
    }
  }
}

FunctionalSample FunctionalSample::with_labels(
    std::optional<std::vector<int>> labels) const {
  return FunctionalSample(n_curves_, n_dims_, grid_, values_,
                          std::move(labels));
}

Partition::Partition(std::vector<int> assignment, int k)
    : assignment_(std::move(assignment)), k_(k) {
  if (k_ < 1) throw ArgumentError("partition needs k >= 1");
  for (int id : assignment_) {
    if (id < 1 || id > k_) {
      throw ArgumentError("partition id " + std::to_string(id) +
                          " outside 1.." + std::to_string(k_));
    }
  }
}

Partition Partition::canonical(std::span<const int> ids) {
  std::map<int, int> renumber;
  std::vector<int> out;
  out.reserve(ids.size());
  for (int id : ids) {
    auto [it, inserted] =
        renumber.try_emplace(id, static_cast<int>(renumber.size()) + 1);
    out.push_back(it->second);
  }
  const int k = std::max<int>(1, static_cast<int>(renumber.size()));
  return Partition(std::move(out), k);
}

double fraction_of_grid(const std::vector<bool>& mask, const Grid& grid) {
  if (mask.size() != grid.size()) {
    throw DimensionError("mask has " + std::to_string(mask.size()) +
                         " entries for a grid of " +
                         std::to_string(grid.size()) + " points");
  }
  const auto hits = std::count(mask.begin(), mask.end(), true);
  return static_cast<double>(hits) / static_cast<double>(mask.size());
}

FunctionalSample restrict_dims(const FunctionalSample& sample,
                               std::span<const std::size_t> dims) {
  if (dims.empty()) throw ArgumentError("restrict_dims: empty dimension set");
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (dims[a] >= sample.n_dims()) {
      throw ArgumentError("restrict_dims: dimension " +
                          std::to_string(dims[a]) + " out of range 0.." +
                          std::to_string(sample.n_dims() - 1));
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (dims[a] == dims[b]) {
        throw ArgumentError("restrict_dims: repeated dimension " +
                            std::to_string(dims[a]));
      }
    }
  }
  const std::size_t m = sample.n_points();
  std::vector<double> values;
  values.reserve(sample.n_curves() * dims.size() * m);
  for (std::size_t i = 0; i < sample.n_curves(); ++i) {
    for (std::size_t k : dims) {
      auto comp = sample.component(i, k);
      values.insert(values.end(), comp.begin(), comp.end());
    }
  }
  return FunctionalSample(sample.n_curves(), dims.size(), sample.grid(),
                          std::move(values), sample.labels());
}

}  // namespace ehyclus
