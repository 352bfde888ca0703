#pragma once

// Random eventually periodic boundary points for property tests and the
// verification suites.

#include <cstddef>
#include <random>

#include "spinal/words.hpp"

namespace spinal {

using Rng = std::mt19937_64;

struct PointShape {
  std::size_t max_preperiod = 4;
  std::size_t max_period = 3;
  /// Probability of drawing each letter from {0, d-1} instead of all of X.
  double edge_letter_bias = 0.3;
};

BoundaryPoint random_point(int d, Rng& rng, const PointShape& shape = {});

/// A random point with the same zeros and the same (d-1)-suffix length in every
/// finite block as xi, so compatible with xi.
BoundaryPoint random_compatible(const BoundaryPoint& xi, int d, Rng& rng);

/// xi with one letter among the first `window` positions replaced by a
/// different random letter.
BoundaryPoint random_mutation(const BoundaryPoint& xi, int d, Rng& rng, std::size_t window);

/// A random point of Cof(xi) differing from xi at most in the first `window` letters.
BoundaryPoint random_cofinal(const BoundaryPoint& xi, int d, Rng& rng, std::size_t window);

} // namespace spinal
