#pragma once

// Action of the spinal generating set S = A u B \ {1} on finite words and on
// boundary points.

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "spinal/algebra.hpp"
#include "spinal/words.hpp"

namespace spinal {

/// a^j with 1 <= j <= d-1.
struct RotA {
  Residue j = 1;
  friend auto operator<=>(const RotA&, const RotA&) = default;
};

/// b_omega for a nonzero b in B.
struct SpinalB {
  BElement b;
  friend auto operator<=>(const SpinalB&, const SpinalB&) = default;
};

using GeneratorLabel = std::variant<RotA, SpinalB>;

bool is_rotation(const GeneratorLabel& s);
void check_label(const Params& params, const GeneratorLabel& s);

/// a, a^2, ..., a^(d-1), then the nonzero elements of B in index order.
std::vector<GeneratorLabel> generators(const Params& params);

/// "a^j" or "b=(c1,...,cm)".
std::string format_label(const GeneratorLabel& s);
GeneratorLabel parse_label(const std::string& text);

FiniteWord act_a(const Params& params, Residue j, const FiniteWord& w);
BoundaryPoint act_a(const Params& params, Residue j, const BoundaryPoint& xi);

FiniteWord act_b(const SpinalGroup& group, const BElement& b, const FiniteWord& w);
BoundaryPoint act_b(const SpinalGroup& group, const BElement& b, const BoundaryPoint& xi);

FiniteWord act(const SpinalGroup& group, const GeneratorLabel& s, const FiniteWord& w);
BoundaryPoint act(const SpinalGroup& group, const GeneratorLabel& s, const BoundaryPoint& xi);

/// The r with xi = (d-1)^r 0 ..., if xi has such a prefix.
std::optional<std::size_t> spine_exit(const BoundaryPoint& xi, int d);

/// True iff b fixes xi.
bool fixed_by(const SpinalGroup& group, const BElement& b, const BoundaryPoint& xi);
/// True iff every b in B fixes xi, i.e. xi has no prefix (d-1)^r 0.
bool fixed_by_B(const SpinalGroup& group, const BoundaryPoint& xi);

} // namespace spinal
