#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "slipmhd/initial_data.hpp"

namespace slipmhd::test {

inline constexpr double kPi = std::numbers::pi;

inline GridPtr cube(int n, double L = 2.0 * kPi) { return make_grid(n, n, n, L, L, L); }

inline Field noise(const GridPtr& g, Parity p, std::uint64_t seed, bool zero_mean = false) {
  std::mt19937_64 rng(seed);
  RandomSpec spec;
  spec.zero_mean_h = zero_mean;
  return random_field(g, p, rng, spec);
}

inline VectorField solenoidal(const GridPtr& g, std::uint64_t seed, bool zero_mean = false) {
  std::mt19937_64 rng(seed);
  RandomSpec spec;
  spec.zero_mean_h = zero_mean;
  return random_solenoidal(g, rng, spec);
}

inline double max_diff(const RealArray& a, const RealArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace slipmhd::test
