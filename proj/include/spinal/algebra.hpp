#pragma once

// Groups A = Z/d and B = (Z/d)^m, epimorphisms B -> A, eventually periodic
// epimorphism sequences, and the spinal groups they define.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinal/error.hpp"

namespace spinal {

using Residue = std::uint32_t;

/// Guard on d^m (kernel enumeration) and on other brute-force searches.
inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

struct Params {
  int d = 2;
  int m = 1;

  /// Number of elements of B, d^m.
  std::uint64_t b_order() const;
  /// |S| = (d - 1) + (d^m - 1).
  std::size_t generator_count() const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Checks d >= 2, m >= 1 and d^m within the enumeration guard.
Params make_params(int d, int m);

struct BElement {
  std::vector<Residue> coords;

  bool is_zero() const;
  friend auto operator<=>(const BElement&, const BElement&) = default;
};

/// pi(b) = a^(sum coeffs_i * b_i mod d).
struct Epimorphism {
  std::vector<Residue> coeffs;

  friend auto operator<=>(const Epimorphism&, const Epimorphism&) = default;
};

/// Every element of B in index order; index = sum coords_i * d^i.
std::vector<BElement> b_elements(const Params& params);
/// B without the identity, same order as b_elements.
std::vector<BElement> nonzero_b_elements(const Params& params);
BElement b_from_index(const Params& params, std::uint64_t index);
std::uint64_t b_index(const Params& params, const BElement& b);

void check_b_element(const Params& params, const BElement& b);
/// Throws ParameterError unless the coefficients define a surjection onto Z/d.
void check_epimorphism(const Params& params, const Epimorphism& pi);

Residue eval_epi(const Params& params, const Epimorphism& pi, const BElement& b);
std::vector<BElement> kernel(const Params& params, const Epimorphism& pi);

class OmegaSequence {
public:
  OmegaSequence() = default;
  OmegaSequence(std::vector<Epimorphism> preperiod, std::vector<Epimorphism> period);

  const std::vector<Epimorphism>& preperiod() const { return preperiod_; }
  const std::vector<Epimorphism>& period() const { return period_; }

  /// omega_n for any n >= 0.
  const Epimorphism& at(std::size_t n) const;
  /// True when pi occurs in the period, i.e. infinitely often.
  bool recurs(const Epimorphism& pi) const;

  friend bool operator==(const OmegaSequence&, const OmegaSequence&) = default;

private:
  std::vector<Epimorphism> preperiod_;
  std::vector<Epimorphism> period_;
};

/// Builds the sequence after checking that, for every i, the kernels of
/// omega_j (j >= i) intersect trivially. Throws InvalidOmega with the
/// smallest failing i.
OmegaSequence validate_omega(const Params& params, std::vector<Epimorphism> preperiod,
                             std::vector<Epimorphism> period);

/// Drops omega_0; rotates the period when the preperiod is empty.
OmegaSequence shift_omega(const OmegaSequence& omega);

struct SpinalGroup {
  Params params;
  OmegaSequence omega;

  friend bool operator==(const SpinalGroup&, const SpinalGroup&) = default;
};

SpinalGroup make_group(const Params& params, std::vector<Epimorphism> preperiod,
                       std::vector<Epimorphism> period);

/// Automorphism of B as an m x m matrix acting on column vectors.
struct AutB {
  std::vector<std::vector<Residue>> matrix;

  friend bool operator==(const AutB&, const AutB&) = default;
};

AutB identity_aut(const Params& params);
Residue determinant_mod(const Params& params, const AutB& rho);
bool is_invertible(const Params& params, const AutB& rho);
/// Linear form pi composed with rho: b -> pi(rho b).
Epimorphism compose(const Params& params, const Epimorphism& pi, const AutB& rho);
AutB multiply(const Params& params, const AutB& lhs, const AutB& rhs);

/// Finds rho with omega_n = omega_0 o rho^n for all n, by exhaustive search
/// over invertible matrices in lexicographic entry order.
std::optional<AutB> detect_self_similar(const SpinalGroup& group);

using PresetArgs = std::map<std::string, std::string>;

/// Named groups: dihedral, grigorchuk, fabrykowski-gupta, grigorchuk-p, sunic.
///
/// grigorchuk-p takes `p`, `per` and optionally `pre`; the lists are comma
/// separated tokens, `i` for pi_i (b -> a, c -> a^i) and `pi` for
/// (b -> 1, c -> a).
/// sunic takes `p`, optional `m` (default 1), `alpha` as `(c1,...,cm)`
/// (default (0,...,0,1)) and `rho` as `((r11,...),(r21,...),...)`
/// (default identity); omega_i = alpha o rho^i.
SpinalGroup preset(const std::string& name, const PresetArgs& args = {});
std::vector<std::string> preset_names();

/// `d=<int>;m=<int>;pre=<epi-list>;per=<epi-list>`, whitespace ignored.
SpinalGroup parse_group_spec(const std::string& text);
std::string format_group_spec(const SpinalGroup& group);

std::string format_residues(const std::vector<Residue>& values);
std::vector<Residue> parse_residues(const std::string& text);
AutB parse_matrix(const std::string& text);
std::string format_matrix(const AutB& rho);

} // namespace spinal
