#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "wiener/errors.hpp"
#include "wiener/instance.hpp"

namespace wiener {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased uniform draw from [0, n) by rejection; deterministic for a fixed
// generator stream, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0ULL - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

// Uniform draw from (0, 1] with 53-bit resolution.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace detail

// A random instance: the degree sequence of a uniformly random labeled tree
// (one extra degree per occurrence in a random length n-2 sequence over the
// vertices), weights independent uniform on (0, 1]. With enforce_monotone the
// weights landing on internal vertices are sorted so that larger weights go
// with larger degrees. Deterministic for fixed (n, seed).
inline Instance random_instance(int n, std::uint64_t seed, bool enforce_monotone) {
  if (n < 4) fail(errc::too_small, "random instances need n >= 4");
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::vector<int> degrees(n, 1);
  for (int t = 0; t < n - 2; ++t) {
    ++degrees[detail::uniform_below(rng, static_cast<std::uint64_t>(n))];
  }
  std::vector<double> weights(n);
  for (double& w : weights) w = detail::uniform_unit(rng);
  if (enforce_monotone) {
    // Sort the internal-vertex weights descending and hand them back to the
    // internal slots in descending degree order.
    std::vector<int> internal_slots;
    for (int i = 0; i < n; ++i) {
      if (degrees[i] > 1) internal_slots.push_back(i);
    }
    std::vector<double> internal_weights;
    internal_weights.reserve(internal_slots.size());
    for (int i : internal_slots) internal_weights.push_back(weights[i]);
    std::sort(internal_weights.begin(), internal_weights.end(), std::greater<double>());
    std::vector<int> by_degree = internal_slots;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return degrees[a] > degrees[b]; });
    for (std::size_t t = 0; t < by_degree.size(); ++t) {
      weights[by_degree[t]] = internal_weights[t];
    }
  }
  return Instance::validate(weights, degrees);
}

}  // namespace wiener
