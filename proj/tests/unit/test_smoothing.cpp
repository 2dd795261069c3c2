#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ehyclus/error.hpp"
#include "ehyclus/smoothing.hpp"

using namespace ehyclus;

namespace {

template <typename F>
FunctionalSample sample_of(F f, std::size_t m = 150, double lo = 0.0, double hi = 1.0) {
  Grid grid = Grid::equidistant(lo, hi, m);
  std::vector<double> values;
  for (double t : grid.points()) values.push_back(f(t));
  return FunctionalSample(1, 1, grid, std::move(values));
}

double max_error(const FunctionalSample& s, auto expected, std::size_t trim = 0) {
  double worst = 0.0;
  for (std::size_t j = trim; j + trim < s.n_points(); ++j) {
    worst = std::max(worst, std::abs(s.value(0, 0, j) - expected(s.grid()[j])));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("smoothing");

TEST_CASE("knot vector") {
  const BSplineBasis basis(0.0, 1.0, 35, 4);
  const auto knots = basis.knots();
  REQUIRE(knots.size() == 39);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(knots[i] == 0.0);
    CHECK(knots[knots.size() - 1 - i] == 1.0);
  }
  for (std::size_t i = 4; i < 35; ++i) {
    CHECK(knots[i] > 0.0);
    CHECK(knots[i] < 1.0);
    CHECK(knots[i] > knots[i - 1]);
  }
  CHECK_THROWS_AS(BSplineBasis(0.0, 1.0, 3, 4), ArgumentError);
  CHECK_THROWS_AS(BSplineBasis(1.0, 1.0, 10, 4), ArgumentError);
}

TEST_CASE("partition of unity and derivative sums") {
  const BSplineBasis basis(1.0, 21.0, 35, 4);
  std::vector<double> row(35);
  for (double t : {1.0, 3.3, 11.0, 20.999, 21.0}) {
    basis.evaluate(t, 0, row);
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    basis.evaluate(t, 1, row);
    sum = 0.0;
    for (double v : row) sum += v;
    CHECK(std::abs(sum) < 1e-10);
  }
}

TEST_CASE("cubic is reproduced") {
  auto q = [](double t) { return t * t * t - t; };
  const auto fit = fit_bspline(sample_of(q), 35, 4);
  CHECK(max_error(eval_derivative(fit, 0), q) < 1e-8);
  CHECK(max_error(eval_derivative(fit, 1), [](double t) { return 3 * t * t - 1; }) < 1e-6);
  CHECK(max_error(eval_derivative(fit, 2), [](double t) { return 6 * t; }) < 1e-4);
}

TEST_CASE("constant curve") {
  const auto fit = fit_bspline(sample_of([](double) { return 5.0; }));
  CHECK(max_error(eval_derivative(fit, 0), [](double) { return 5.0; }) < 1e-10);
  CHECK(max_error(eval_derivative(fit, 1), [](double) { return 0.0; }) < 1e-8);
}

TEST_CASE("square has derivative 2t") {
  const auto fit = fit_bspline(sample_of([](double t) { return t * t; }));
  CHECK(max_error(eval_derivative(fit, 1), [](double t) { return 2 * t; }, 1) < 1e-6);
}

TEST_CASE("sine and its second derivative") {
  constexpr double pi = std::numbers::pi;
  auto f = [](double t) { return std::sin(2 * pi * t); };
  const auto fit = fit_bspline(sample_of(f));
  CHECK(max_error(eval_derivative(fit, 0), f) < 1e-5);

  const FunctionalSample d2 = eval_derivative(fit, 2);
  double worst = 0.0;
  for (std::size_t j = 10; j + 10 < d2.n_points(); ++j) {
    const double t = d2.grid()[j];
    const double truth = -4 * pi * pi * std::sin(2 * pi * t);
    worst = std::max(worst, std::abs(d2.value(0, 0, j) - truth) / (4 * pi * pi));
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(fit_bspline(sample_of([](double t) { return t; }, 20), 35), ArgumentError);
  const auto fit = fit_bspline(sample_of([](double t) { return t; }));
  CHECK_THROWS_AS(eval_derivative(fit, 3), ArgumentError);
  CHECK_THROWS_AS(eval_derivative(fit, -1), ArgumentError);

  // Clustered grid: most basis functions see no data.
  std::vector<double> t;
  for (int j = 0; j < 40; ++j) t.push_back(j * 1e-3);
  t.push_back(1.0);
  std::vector<double> values(t.size(), 1.0);
  const FunctionalSample clustered(1, 1, Grid(t), values);
  CHECK_THROWS_AS(fit_bspline(clustered, 35), NumericalError);
}

TEST_CASE("fits every curve and dimension with one design") {
  Grid grid = Grid::equidistant(0.0, 1.0, 60);
  std::vector<double> values;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 2; ++k) {
      for (double s : grid.points()) values.push_back((i + 1) * s + k);
    }
  }
  const FunctionalSample sample(3, 2, grid, values, std::vector<int>{1, 1, 2});
  const auto fit = fit_bspline(sample, 20);
  const FunctionalSample back = eval_derivative(fit, 0);
  CHECK(back.labels() == sample.labels());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t j = 0; j < 60; ++j) {
        CHECK(back.value(i, k, j) == doctest::Approx(sample.value(i, k, j)).epsilon(1e-9));
      }
    }
  }
}

TEST_SUITE_END();
