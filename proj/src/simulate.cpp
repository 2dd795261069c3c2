#include "ehyclus/simulate.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "ehyclus/error.hpp"
#include "ehyclus/parallel.hpp"
#include "ehyclus/random.hpp"

namespace ehyclus {

namespace {

// Stream ids keep datasets apart when the same seed is reused.
enum : std::uint64_t { kDs1 = 1, kDs2 = 2, kDs3 = 3, kDs4 = 4 };

using CurveFill = std::function<void(std::size_t curve, Rng& rng, double* dim1,
                                     double* dim2)>;

// Fills n curves of two components, each from its own derived stream.
FunctionalSample build(std::uint64_t dataset, std::uint64_t seed,
                       std::size_t groups, std::size_t per_group, Grid grid,
                       const CurveFill& fill) {
  const std::size_t n = groups * per_group;
  const std::size_t m = grid.size();
  std::vector<double> values(n * 2 * m);
  std::vector<int> labels(n);
  parallel_for(n, [&](std::size_t i) {
    Rng rng(derive_seed(seed, {dataset, i}));
    fill(i, rng, values.data() + (2 * i) * m, values.data() + (2 * i + 1) * m);
  });
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i / per_group) + 1;
  return FunctionalSample(n, 2, std::move(grid), std::move(values), std::move(labels));
}

}  // namespace

double ds1_rho(int k) {
  if (k < 1) throw ArgumentError("ds1_rho: k must be >= 1");
  const double d = k + 1.0;
  return k <= 3 ? 1.0 / d : 1.0 / (d * d);
}

double ds1_theta(int k, double t) {
  if (k < 1) throw ArgumentError("ds1_theta: k must be >= 1");
  if (t < 0.0 || t > 1.0) return 0.0;
  if (k == 1) return 1.0;
  if (k % 2 == 0) return std::numbers::sqrt2 * std::sin(k * std::numbers::pi * t);
  return std::numbers::sqrt2 * std::cos((k - 1) * std::numbers::pi * t);
}

FunctionalSample gen_ds1(std::uint64_t seed, const SimulationOptions& options) {
  constexpr int terms = 100;
  Grid grid = Grid::equidistant(0.0, 1.0, 150);
  const std::size_t m = grid.size();
  // scaled[k][j] = sqrt(rho_k) theta_k(t_j)
  std::vector<std::vector<double>> scaled(terms, std::vector<double>(m));
  std::vector<double> shift(m, 0.0);
  for (int k = 1; k <= terms; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      scaled[k - 1][j] = std::sqrt(ds1_rho(k)) * ds1_theta(k, grid[j]);
      if (k >= 4) shift[j] += scaled[k - 1][j];
    }
  }
  // Cholesky factor of [[1, .5], [.5, 1]].
  const double l21 = 0.5;
  const double l22 = std::sqrt(0.75);

  return build(kDs1, seed, 2, 50, grid,
               [&](std::size_t i, Rng& rng, double* x1, double* x2) {
                 const bool second = i >= 50;
                 for (std::size_t j = 0; j < m; ++j) {
                   const double t = grid[j];
                   x1[j] = t * (1.0 - t) + (second ? shift[j] : 0.0);
                   x2[j] = 4.0 * t * t * (1.0 - t) + (second ? shift[j] : 0.0);
                 }
                 if (!options.random_coefficients) return;
                 std::normal_distribution<double> normal(0.0, 1.0);
                 for (int k = 0; k < terms; ++k) {
                   const double a = normal(rng);
                   const double b = normal(rng);
                   const double z1 = a;
                   const double z2 = l21 * a + l22 * b;
                   for (std::size_t j = 0; j < m; ++j) {
                     x1[j] += z1 * scaled[k][j];
                     x2[j] += z2 * scaled[k][j];
                   }
                 }
               });
}

FunctionalSample gen_ds2(std::uint64_t seed, const SimulationOptions& options) {
  Grid grid = Grid::equidistant(1.0, 21.0, 1001);
  const std::size_t m = grid.size();
  struct Moments {
    double mean;
    double variance;
  };
  const Moments laws[3] = {{0.5, 1.0 / 12.0}, {0.0, 1.0 / 12.0}, {0.0, 2.0 / 3.0}};

  return build(kDs2, seed, 2, 50, grid,
               [&](std::size_t i, Rng& rng, double* x1, double* x2) {
                 double u[3] = {0.0, 0.0, 0.0};
                 for (int c = 0; c < 3; ++c) {
                   if (!options.random_coefficients) {
                     u[c] = laws[c].mean;
                   } else if (options.ds2_law == CoefficientLaw::gaussian) {
                     std::normal_distribution<double> draw(laws[c].mean,
                                                           std::sqrt(laws[c].variance));
                     u[c] = draw(rng);
                   } else {
                     const double half = std::sqrt(3.0 * laws[c].variance);
                     std::uniform_real_distribution<double> draw(laws[c].mean - half,
                                                                 laws[c].mean + half);
                     u[c] = draw(rng);
                   }
                 }
                 const bool first = i < 50;
                 const double sd1 = std::sqrt(first ? 0.1 : 10.0);
                 const double sd2 = std::sqrt(0.5);
                 std::normal_distribution<double> noise(0.0, 1.0);
                 for (std::size_t j = 0; j < m; ++j) {
                   const double t = grid[j];
                   const double h1 = tent(t, 6.0, 11.0);
                   const double h2 = tent(t, 6.0, 7.0);
                   const double h3 = tent(t, 6.0, 15.0);
                   if (first) {
                     x1[j] = -5.0 + t / 2.0 + u[1] * h3 + u[2] * h2;
                     x2[j] = -5.0 + t / 2.0 + u[0] * h1 + u[1] * h2 + u[2] * h3;
                   } else {
                     x1[j] = u[2] * h2;
                     x2[j] = u[0] * h1 + u[2] * h3;
                   }
                 }
                 if (!options.noise) return;
                 for (std::size_t j = 0; j < m; ++j) x1[j] += sd1 * noise(rng);
                 for (std::size_t j = 0; j < m; ++j) x2[j] += sd2 * noise(rng);
               });
}

namespace {

// Four-group tent designs shared by ds3 and ds4: component value
// U + (a - U) * h(t) + eps(t) with (a, h) per group and component.
struct TentTerm {
  double amplitude;
  double width;
  double center;
};

FunctionalSample tent_dataset(std::uint64_t dataset, std::uint64_t seed,
                              std::size_t per_group,
                              const TentTerm (&design)[4][2],
                              const SimulationOptions& options) {
  Grid grid = Grid::equidistant(1.0, 21.0, 101);
  const std::size_t m = grid.size();
  return build(dataset, seed, 4, per_group, grid,
               [&](std::size_t i, Rng& rng, double* x1, double* x2) {
                 const std::size_t group = i / per_group;
                 double u = 0.0;
                 if (options.random_coefficients) {
                   std::uniform_real_distribution<double> draw(0.0, 0.1);
                   u = draw(rng);
                 }
                 double* out[2] = {x1, x2};
                 for (int c = 0; c < 2; ++c) {
                   const TentTerm& term = design[group][c];
                   for (std::size_t j = 0; j < m; ++j) {
                     out[c][j] = u + (term.amplitude - u) *
                                         tent(grid[j], term.width, term.center);
                   }
                 }
                 if (!options.noise) return;
                 std::normal_distribution<double> noise(0.0, 0.5);
                 for (int c = 0; c < 2; ++c) {
                   for (std::size_t j = 0; j < m; ++j) out[c][j] += noise(rng);
                 }
               });
}

}  // namespace

FunctionalSample gen_ds3(std::uint64_t seed, const SimulationOptions& options) {
  static constexpr TentTerm design[4][2] = {
      {{1.0, 6.0, 7.0}, {0.5, 6.0, 7.0}},
      {{1.0, 6.0, 15.0}, {0.5, 6.0, 15.0}},
      {{0.5, 6.0, 7.0}, {1.0, 6.0, 7.0}},
      {{0.5, 6.0, 15.0}, {1.0, 6.0, 15.0}},
  };
  return tent_dataset(kDs3, seed, 250, design, options);
}

FunctionalSample gen_ds4(std::uint64_t seed, const SimulationOptions& options) {
  static constexpr TentTerm design[4][2] = {
      {{1.5, 3.0, 7.0}, {1.0, 3.0, 7.0}},
      {{1.0, 6.0, 15.0}, {0.5, 6.0, 15.0}},
      {{1.0, 3.0, 7.0}, {1.0, 6.0, 15.0}},
      {{0.5, 6.0, 15.0}, {0.5, 3.0, 7.0}},
  };
  return tent_dataset(kDs4, seed, 25, design, options);
}

const std::vector<std::string>& dataset_catalog() {
  static const std::vector<std::string> names = {"ds1", "ds2", "ds3", "ds4"};
  return names;
}

FunctionalSample generate(std::string_view dataset, std::uint64_t seed,
                          const SimulationOptions& options) {
  if (dataset == "ds1") return gen_ds1(seed, options);
  if (dataset == "ds2") return gen_ds2(seed, options);
  if (dataset == "ds3") return gen_ds3(seed, options);
  if (dataset == "ds4") return gen_ds4(seed, options);
  throw ArgumentError("unknown dataset '" + std::string(dataset) +
                      "'; valid datasets: ds1 ds2 ds3 ds4");
}

std::size_t dataset_groups(std::string_view dataset) {
  if (dataset == "ds1" || dataset == "ds2") return 2;
  if (dataset == "ds3" || dataset == "ds4") return 4;
  throw ArgumentError("unknown dataset '" + std::string(dataset) +
                      "'; valid datasets: ds1 ds2 ds3 ds4");
}

}  // namespace ehyclus
