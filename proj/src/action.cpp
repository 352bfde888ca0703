#include "spinal/action.hpp"

#include <algorithm>

namespace spinal {

namespace {

Letter add_mod(Letter x, Residue j, int d) {
  return static_cast<Letter>((static_cast<std::uint64_t>(x) + j) % static_cast<std::uint64_t>(d));
}

void check_rotation(const Params& params, Residue j) {
  if (j < 1 || j >= static_cast<Residue>(params.d))
    throw ParameterError("rotation exponent must lie in [1, d-1]");
}

void check_spinal(const Params& params, const BElement& b) {
  check_b_element(params, b);
  if (b.is_zero()) throw ParameterError("spinal generator b must be nonzero");
}

} // namespace

bool is_rotation(const GeneratorLabel& s) { return std::holds_alternative<RotA>(s); }

void check_label(const Params& params, const GeneratorLabel& s) {
  if (const auto* a = std::get_if<RotA>(&s)) {
    check_rotation(params, a->j);
  } else {
    check_spinal(params, std::get<SpinalB>(s).b);
  }
}

std::vector<GeneratorLabel> generators(const Params& params) {
  std::vector<GeneratorLabel> out;
  out.reserve(params.generator_count());
  for (int j = 1; j < params.d; ++j) out.emplace_back(RotA{static_cast<Residue>(j)});
  for (auto& b : nonzero_b_elements(params)) out.emplace_back(SpinalB{std::move(b)});
  return out;
}

std::string format_label(const GeneratorLabel& s) {
  if (const auto* a = std::get_if<RotA>(&s)) return "a^" + std::to_string(a->j);
  return "b=" + format_residues(std::get<SpinalB>(s).b.coords);
}

GeneratorLabel parse_label(const std::string& text) {
  if (text.rfind("a^", 0) == 0) {
    try {
      std::size_t used = 0;
      const auto j = std::stoul(text.substr(2), &used);
      if (used + 2 == text.size()) return RotA{static_cast<Residue>(j)};
    } catch (const std::exception&) {
    }
    throw ParseError("bad rotation label '" + text + "'");
  }
  if (text.rfind("b=", 0) == 0) return SpinalB{BElement{parse_residues(text.substr(2))}};
  throw ParseError("unknown generator label '" + text + "'");
}

FiniteWord act_a(const Params& params, Residue j, const FiniteWord& w) {
  check_rotation(params, j);
  if (w.empty()) throw ParameterError("a acts on nonempty words only");
  FiniteWord out = w;
  out[0] = add_mod(out[0], j, params.d);
  return out;
}

BoundaryPoint act_a(const Params& params, Residue j, const BoundaryPoint& xi) {
  check_rotation(params, j);
  return with_letter(xi, 0, add_mod(xi.letter_at(0), j, params.d));
}

FiniteWord act_b(const SpinalGroup& group, const BElement& b, const FiniteWord& w) {
  check_spinal(group.params, b);
  const auto top = static_cast<Letter>(group.params.d - 1);
  std::size_t r = 0;
  while (r < w.size() && w[r] == top) ++r;
  // Needs the prefix (d-1)^r 0 and one more letter to move.
  if (r + 1 >= w.size() || w[r] != 0) return w;
  FiniteWord out = w;
  out[r + 1] = add_mod(out[r + 1], eval_epi(group.params, group.omega.at(r), b), group.params.d);
  return out;
}

std::optional<std::size_t> spine_exit(const BoundaryPoint& xi, int d) {
  if (cofinal_with_spine(xi, d) && std::all_of(xi.preperiod().letters().begin(),
                                               xi.preperiod().letters().end(),
                                               [d](Letter x) { return x == static_cast<Letter>(d - 1); }))
    return std::nullopt;
  const auto top = static_cast<Letter>(d - 1);
  std::size_t r = 0;
  while (xi.letter_at(r) == top) ++r;
  if (xi.letter_at(r) != 0) return std::nullopt;
  return r;
}

BoundaryPoint act_b(const SpinalGroup& group, const BElement& b, const BoundaryPoint& xi) {
  check_spinal(group.params, b);
  const auto r = spine_exit(xi, group.params.d);
  if (!r) return xi;
  const Residue j = eval_epi(group.params, group.omega.at(*r), b);
  if (j == 0) return xi;
  return with_letter(xi, *r + 1, add_mod(xi.letter_at(*r + 1), j, group.params.d));
}

FiniteWord act(const SpinalGroup& group, const GeneratorLabel& s, const FiniteWord& w) {
  if (const auto* a = std::get_if<RotA>(&s)) return act_a(group.params, a->j, w);
  return act_b(group, std::get<SpinalB>(s).b, w);
}

BoundaryPoint act(const SpinalGroup& group, const GeneratorLabel& s, const BoundaryPoint& xi) {
  if (const auto* a = std::get_if<RotA>(&s)) return act_a(group.params, a->j, xi);
  return act_b(group, std::get<SpinalB>(s).b, xi);
}

bool fixed_by(const SpinalGroup& group, const BElement& b, const BoundaryPoint& xi) {
  check_spinal(group.params, b);
  const auto r = spine_exit(xi, group.params.d);
  return !r || eval_epi(group.params, group.omega.at(*r), b) == 0;
}

bool fixed_by_B(const SpinalGroup& group, const BoundaryPoint& xi) {
  // Each omega_r is onto, so some b moves any point with a (d-1)^r 0 prefix.
  return !spine_exit(xi, group.params.d).has_value();
}

} // namespace spinal
