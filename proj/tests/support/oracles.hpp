// Slow reference implementations used to check the library.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ehyclus/functional_sample.hpp"
#include "ehyclus/indexes.hpp"
#include "ehyclus/metrics.hpp"

namespace oracle {

using ehyclus::FunctionalSample;
using ehyclus::Partition;

/// Continuous draws, so no two curves tie at a grid point (almost surely).
inline FunctionalSample random_sample(std::mt19937_64& rng, std::size_t n, std::size_t p,
                                      std::size_t m) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(n * p * m);
  for (double& v : values) v = normal(rng);
  return FunctionalSample(n, p, ehyclus::Grid::equidistant(0.0, 1.0, m), std::move(values));
}

/// Values drawn from a handful of integers, so ties are frequent.
inline FunctionalSample tied_sample(std::mt19937_64& rng, std::size_t n, std::size_t p,
                                    std::size_t m) {
  std::uniform_int_distribution<int> level(0, 3);
  std::vector<double> values(n * p * m);
  for (double& v : values) v = level(rng);
  return FunctionalSample(n, p, ehyclus::Grid::equidistant(0.0, 1.0, m), std::move(values));
}

/// Direct triple loop over (curve, sample curve, grid point).
inline ehyclus::EpiHypoPair mei_mhi(const FunctionalSample& s) {
  const std::size_t n = s.n_curves(), p = s.n_dims(), m = s.n_points();
  ehyclus::EpiHypoPair out{{{}, ehyclus::IndexKind::MEI, {}},
                           {{}, ehyclus::IndexKind::MHI, {}}};
  for (std::size_t x = 0; x < n; ++x) {
    std::int64_t above = 0, below = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        bool all_ge = true, all_le = true;
        for (std::size_t k = 0; k < p; ++k) {
          all_ge = all_ge && s.value(i, k, j) >= s.value(x, k, j);
          all_le = all_le && s.value(i, k, j) <= s.value(x, k, j);
        }
        above += all_ge;
        below += all_le;
      }
    }
    const double cells = static_cast<double>(n) * static_cast<double>(m);
    out.epigraph.values.push_back(1.0 - static_cast<double>(above) / cells);
    out.hypograph.values.push_back(static_cast<double>(below) / cells);
  }
  return out;
}

inline ehyclus::EpiHypoPair ei_hi(const FunctionalSample& s) {
  const std::size_t n = s.n_curves(), p = s.n_dims(), m = s.n_points();
  ehyclus::EpiHypoPair out{{{}, ehyclus::IndexKind::EI, {}},
                           {{}, ehyclus::IndexKind::HI, {}}};
  for (std::size_t x = 0; x < n; ++x) {
    std::int64_t above = 0, below = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool all_ge = true, all_le = true;
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
          all_ge = all_ge && s.value(i, k, j) >= s.value(x, k, j);
          all_le = all_le && s.value(i, k, j) <= s.value(x, k, j);
        }
      }
      above += all_ge;
      below += all_le;
    }
    out.epigraph.values.push_back(1.0 - static_cast<double>(above) / static_cast<double>(n));
    out.hypograph.values.push_back(static_cast<double>(below) / static_cast<double>(n));
  }
  return out;
}

/// Weighted univariate indexes, accumulated in dimension order.
inline ehyclus::EpiHypoPair weighted(const FunctionalSample& s,
                                     const std::vector<double>& w) {
  const std::size_t n = s.n_curves();
  ehyclus::EpiHypoPair out{{std::vector<double>(n, 0.0), ehyclus::IndexKind::wMEI, {}},
                           {std::vector<double>(n, 0.0), ehyclus::IndexKind::wMHI, {}}};
  for (std::size_t k = 0; k < s.n_dims(); ++k) {
    if (w[k] == 0.0) continue;
    const std::size_t dim[] = {k};
    const auto uni = oracle::mei_mhi(ehyclus::restrict_dims(s, dim));
    for (std::size_t x = 0; x < n; ++x) {
      out.epigraph.values[x] += w[k] * uni.epigraph.values[x];
      out.hypograph.values[x] += w[k] * uni.hypograph.values[x];
    }
  }
  return out;
}

struct PairMetrics {
  double purity, f_measure, rand_index;
};

/// Enumerates every unordered pair.
inline PairMetrics pair_metrics(const Partition& pred, const Partition& truth) {
  const std::size_t n = pred.size();
  std::int64_t agree = 0, both = 0, in_pred = 0, in_truth = 0, pairs = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool sp = pred[a] == pred[b];
      const bool st = truth[a] == truth[b];
      agree += sp == st;
      both += sp && st;
      in_pred += sp;
      in_truth += st;
      ++pairs;
    }
  }
  double majority = 0.0;
  for (int c = 1; c <= pred.k(); ++c) {
    std::vector<int> counts(static_cast<std::size_t>(truth.k()) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (pred[i] == c) ++counts[static_cast<std::size_t>(truth[i])];
    }
    int best = 0;
    for (int v : counts) best = std::max(best, v);
    majority += best;
  }
  PairMetrics out{majority / static_cast<double>(n), 0.0,
                  static_cast<double>(agree) / static_cast<double>(pairs)};
  if (both > 0 && in_pred > 0 && in_truth > 0) {
    const double precision = static_cast<double>(both) / static_cast<double>(in_pred);
    const double recall = static_cast<double>(both) / static_cast<double>(in_truth);
    out.f_measure = 2.0 * precision * recall / (precision + recall);
  }
  return out;
}

inline Partition random_partition(std::mt19937_64& rng, std::size_t n, int k) {
  std::uniform_int_distribution<int> draw(1, k);
  std::vector<int> ids(n);
  for (int& id : ids) id = draw(rng);
  return Partition::canonical(ids);
}

}  // namespace oracle
