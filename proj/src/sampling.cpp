#include "spinal/sampling.hpp"

#include <numeric>

namespace spinal {

namespace {

Letter uniform_letter(int lo, int hi, Rng& rng) {
  return static_cast<Letter>(std::uniform_int_distribution<int>(lo, hi)(rng));
}

Letter random_letter(int d, Rng& rng, double bias) {
  if (std::bernoulli_distribution(bias)(rng))
    return std::bernoulli_distribution(0.5)(rng) ? 0 : static_cast<Letter>(d - 1);
  return uniform_letter(0, d - 1, rng);
}

FiniteWord random_word(std::size_t n, int d, Rng& rng, double bias) {
  FiniteWord w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_letter(d, rng, bias));
  return w;
}

} // namespace

BoundaryPoint random_point(int d, Rng& rng, const PointShape& shape) {
  const auto pre = std::uniform_int_distribution<std::size_t>(0, shape.max_preperiod)(rng);
  const auto per = std::uniform_int_distribution<std::size_t>(1, shape.max_period)(rng);
  return canonicalize(random_word(pre, d, rng, shape.edge_letter_bias),
                      random_word(per, d, rng, shape.edge_letter_bias));
}

BoundaryPoint random_compatible(const BoundaryPoint& xi, int d, Rng& rng) {
  const std::size_t start = xi.preperiod().size();
  const std::size_t period = xi.period().size();
  const std::size_t length = start + period;
  const auto top = static_cast<Letter>(d - 1);

  // Rewrite positions [0, start + period) and repeat the rewritten period.
  FiniteWord out = xi.prefix(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (xi.letter_at(i) == 0) continue;
    // Look ahead to the end of the block; blocks in the tail end within one period.
    std::optional<std::size_t> end;
    for (std::size_t j = i; j < i + length + 1; ++j) {
      if (xi.letter_at(j) == 0) {
        end = j;
        break;
      }
    }
    if (!end) {
      out[i] = uniform_letter(1, d - 1, rng);
      continue;
    }
    std::size_t last_free = *end;
    while (last_free > i && xi.letter_at(last_free - 1) == top) --last_free;
    if (last_free == i) {
      out[i] = top;
    } else if (last_free == i + 1) {
      out[i] = uniform_letter(1, d - 2, rng);
    } else {
      out[i] = uniform_letter(1, d - 1, rng);
    }
  }
  return canonicalize(out.prefix(start), out.suffix_from(start));
}

BoundaryPoint random_mutation(const BoundaryPoint& xi, int d, Rng& rng, std::size_t window) {
  const auto pos = std::uniform_int_distribution<std::size_t>(0, window - 1)(rng);
  const Letter old = xi.letter_at(pos);
  const Letter fresh = static_cast<Letter>((old + uniform_letter(1, d - 1, rng)) % static_cast<Letter>(d));
  return with_letter(xi, pos, fresh);
}

BoundaryPoint random_cofinal(const BoundaryPoint& xi, int d, Rng& rng, std::size_t window) {
  const auto k = std::uniform_int_distribution<std::size_t>(0, window)(rng);
  return prepend(random_word(k, d, rng, 0.0), shift(xi, k));
}

} // namespace spinal
