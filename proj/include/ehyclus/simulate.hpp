#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ehyclus/functional_sample.hpp"

namespace ehyclus {

/// Law of the DS2 random coefficients. The printed (a, b) pairs are read as
/// (mean, variance); `uniform` draws uniforms with the same two moments.
enum class CoefficientLaw { gaussian, uniform };

struct SimulationOptions {
  /// White noise on every grid point.
  bool noise = true;
  /// Random coefficients (Z_k for ds1, U terms for ds2-ds4). With both
  /// switches off the generators return their template curves.
  bool random_coefficients = true;
  CoefficientLaw ds2_law = CoefficientLaw::gaussian;
};

/// (c - |t - d|)_+
inline double tent(double t, double c, double d) {
  const double v = c - (t < d ? d - t : t - d);
  return v > 0.0 ? v : 0.0;
}

/// Eigenvalue sequence of the ds1 expansion (k >= 1).
double ds1_rho(int k);
/// Orthonormal basis of the ds1 expansion on [0, 1] (k >= 1).
double ds1_theta(int k, double t);

/// Two groups of 50 bivariate curves on 150 points of [0, 1].
FunctionalSample gen_ds1(std::uint64_t seed, const SimulationOptions& options = {});
/// Two groups of 50 bivariate curves on 1001 points of [1, 21].
FunctionalSample gen_ds2(std::uint64_t seed, const SimulationOptions& options = {});
/// Four groups of 250 bivariate curves on 101 points of [1, 21].
FunctionalSample gen_ds3(std::uint64_t seed, const SimulationOptions& options = {});
/// Four groups of 25 bivariate curves on 101 points of [1, 21].
FunctionalSample gen_ds4(std::uint64_t seed, const SimulationOptions& options = {});

/// Dispatch on "ds1".."ds4"; anything else is an ArgumentError.
FunctionalSample generate(std::string_view dataset, std::uint64_t seed,
                          const SimulationOptions& options = {});

/// Number of true groups of a named dataset.
std::size_t dataset_groups(std::string_view dataset);

const std::vector<std::string>& dataset_catalog();

}  // namespace ehyclus
