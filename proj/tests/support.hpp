#pragma once

// Hand-rolled generators for the property tests.

#include <numeric>
#include <random>
#include <vector>

#include "spinal/algebra.hpp"
#include "spinal/sampling.hpp"

namespace spinal::testing {

inline int uniform_int(int lo, int hi, Rng& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Params random_params(Rng& rng) {
  static const std::vector<std::pair<int, int>> shapes = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2},
                                                          {4, 1}, {4, 2}, {5, 1}, {5, 2}, {6, 2}};
  const auto& [d, m] = shapes[static_cast<std::size_t>(uniform_int(0, static_cast<int>(shapes.size()) - 1, rng))];
  return make_params(d, m);
}

inline BElement random_b(const Params& params, Rng& rng) {
  BElement b;
  for (int i = 0; i < params.m; ++i) b.coords.push_back(static_cast<Residue>(uniform_int(0, params.d - 1, rng)));
  return b;
}

inline Epimorphism random_epi(const Params& params, Rng& rng) {
  for (;;) {
    Epimorphism pi;
    int g = params.d;
    for (int i = 0; i < params.m; ++i) {
      const int c = uniform_int(0, params.d - 1, rng);
      pi.coeffs.push_back(static_cast<Residue>(c));
      g = std::gcd(g, c);
    }
    if (g == 1) return pi;
  }
}

/// A random valid group; sequences failing the kernel condition are redrawn.
inline SpinalGroup random_group(Rng& rng) {
  for (;;) {
    const auto params = random_params(rng);
    std::vector<Epimorphism> pre, per;
    const int pre_len = uniform_int(0, 2, rng);
    const int per_len = uniform_int(1, 3, rng);
    for (int i = 0; i < pre_len; ++i) pre.push_back(random_epi(params, rng));
    for (int i = 0; i < per_len; ++i) per.push_back(random_epi(params, rng));
    try {
      return make_group(params, pre, per);
    } catch (const InvalidOmega&) {
    }
  }
}

} // namespace spinal::testing
