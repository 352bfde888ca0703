#pragma once

// Compatibility of boundary points, the explicit isomorphism phi between
// compatible Schreier graphs, and rooted isomorphism deciders for finite balls.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "spinal/boundary.hpp"

namespace spinal {

/// xi = w_0 0 w_1 0 ... split at its zeros. The blocks are
/// prefix_blocks, then periodic_blocks repeated forever. If the tail has no
/// zero the repetition is replaced by one infinite block, infinite_tail.
struct BlockDecomposition {
  std::vector<FiniteWord> prefix_blocks;
  std::vector<FiniteWord> periodic_blocks;
  std::optional<BoundaryPoint> infinite_tail;

  bool is_finite(std::size_t k) const;
  /// Block k; throws PreconditionError for the infinite block.
  const FiniteWord& block(std::size_t k) const;
};

BlockDecomposition zero_blocks(const BoundaryPoint& xi);

/// Length of the maximal (d-1)-suffix of a word over X \ {0}.
std::size_t y_class(const FiniteWord& w, int d);

struct CompatibilityVerdict {
  bool compatible = true;
  /// First block where the two points differ structurally.
  std::optional<std::size_t> witness_block;
  /// Letter position of that difference: the first position where exactly one
  /// point has a 0, or the last letter of the first block whose (d-1)-suffix
  /// lengths disagree at its end.
  std::optional<std::size_t> witness_position;
};

CompatibilityVerdict compatible(const BoundaryPoint& xi, const BoundaryPoint& eta, int d);

/// phi_{xi,eta}(xi_prime). Throws PreconditionError unless xi_prime is cofinal with xi.
BoundaryPoint phi(const BoundaryPoint& xi, const BoundaryPoint& eta, const BoundaryPoint& xi_prime);

/// Undirected edge counts of an unlabeled multigraph: loops[v] directed loops
/// at v, pairs[{u, v}] directed edges between u < v in either direction.
struct UndirectedCounts {
  std::vector<std::size_t> loops;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairs;
};

UndirectedCounts undirected_counts(const LabeledMultigraph& g);

/// Maps ball(xi, r) through phi and checks it is a bijection onto ball(eta, r)
/// preserving undirected edge and loop counts. Requires xi ~ eta.
bool verify_phi_ball(const SpinalGroup& group, const BoundaryPoint& xi, const BoundaryPoint& eta,
                     std::size_t r);

using VertexMap = std::vector<std::size_t>;

/// The label-preserving rooted isomorphism g1 -> g2, if one exists. Throws
/// PreconditionError if some vertex has two out-edges with the same label.
std::optional<VertexMap> iso_labeled_rooted(const RootedGraph& g1, const RootedGraph& g2);

constexpr std::size_t kUnlabeledGuard = 2000;

/// A root-preserving isomorphism of the undirected unlabeled multigraphs, if one
/// exists. Throws GuardError above kUnlabeledGuard vertices.
std::optional<VertexMap> iso_unlabeled_rooted(const RootedGraph& g1, const RootedGraph& g2);

enum class WitnessStatus { Found, NoneWithinHorizon, NoneExists };

struct UnrootedWitness {
  WitnessStatus status = WitnessStatus::NoneWithinHorizon;
  std::optional<BoundaryPoint> eta_prime;
};

/// Searches eta' = w sigma^k(eta) with w in X^k, k <= k_max (k ascending,
/// w lexicographic) for the first eta' compatible with xi. NoneExists means the
/// tails of xi and eta never agree structurally, so no eta' in Cof(eta) works.
UnrootedWitness unrooted_witness(const BoundaryPoint& xi, const BoundaryPoint& eta,
                                 std::size_t k_max, int d);

} // namespace spinal
