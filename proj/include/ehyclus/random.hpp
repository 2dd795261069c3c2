#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ehyclus {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of an independent stream identified by `path` below `base`.
/// Streams with different paths do not share state, so work split over
/// threads draws the same numbers as a sequential run.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = mix64(base);
  for (std::uint64_t step : path) state = mix64(state ^ mix64(step + 1));
  return state;
}

using Rng = std::mt19937_64;

}  // namespace ehyclus
