#pragma once

// Finite pieces of the boundary Schreier graphs Gamma_xi: balls, the copies
// Delta and blocks Lambda, ends, and balls of the limit graphs.

#include <cstddef>
#include <map>
#include <vector>

#include "spinal/graph.hpp"

namespace spinal {

enum class EndsClass { One = 1, Two = 2 };

constexpr std::size_t kBallGuard = 1'000'000;

/// Graph distance from the nearest source, for every point of Cof(sources)
/// within `radius`. Walks the orbit using every generator.
std::map<BoundaryPoint, std::size_t> orbit_distances(const SpinalGroup& group,
                                                     const std::vector<BoundaryPoint>& sources,
                                                     std::size_t radius);

/// Induced subgraph of Gamma_xi on the given vertices, loops included.
LabeledMultigraph induced_subgraph(const SpinalGroup& group,
                                   const std::vector<BoundaryPoint>& vertices);

/// Ball of radius r around xi in Gamma_xi, rooted at xi (vertex 0). Vertices are
/// listed in BFS order.
RootedGraph ball(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t r);

/// Graph distance of every vertex from the root of g (undirected, labels ignored).
std::vector<std::size_t> root_distances(const RootedGraph& g);

/// X^n sigma^n(xi) with the loops of Def. Delta removed. Vertex i carries
/// level_word(i, n) followed by sigma^n(xi).
RootedGraph delta(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n);

/// The d points (d-1)^n 0 i sigma^(n+2)(xi) with the B-edges among them.
LabeledMultigraph lambda_sub(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n);

/// Checks that the radius 2^(n+1)-1 neighbourhood of Lambda^n_xi is
/// Delta^(n+2)_xi, and that the radius 2^k-1 neighbourhood is
/// X^k (d-1)^(n-k) 0 X sigma^(n+2)(xi) for k <= n.
bool verify_ball_identities(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n);

EndsClass ends_class(const BoundaryPoint& xi, int d);

/// Components of ball(xi, R) minus ball(xi, r) that reach distance R.
std::size_t annulus_components(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t r,
                               std::size_t R);

/// annulus_components for each R in Rs (increasing, all > r), from one search.
std::vector<std::size_t> annulus_profile(const SpinalGroup& group, const BoundaryPoint& xi,
                                         std::size_t r, const std::vector<std::size_t>& Rs);

struct AnnulusEstimate {
  std::size_t components = 0;
  std::size_t R = 0;
};

constexpr std::size_t kAnnulusWindow = 3;

/// Counts at R = r + 8, r + 16, r + 32, ... up to max_R. The result is the count
/// at the largest R; GuardError unless the last kAnnulusWindow counts agree.
AnnulusEstimate stable_annulus_components(const SpinalGroup& group, const BoundaryPoint& xi,
                                          std::size_t r, std::size_t max_R);

/// Ball of radius r in the limit graph on Cof((d-1)^inf) x X, rooted at
/// ((d-1)^inf, 0). pi must recur in the period of omega.
RootedGraph limit_ball(const SpinalGroup& group, const Epimorphism& pi, std::size_t r);

bool sch_continuous_at(const BoundaryPoint& xi, int d);

} // namespace spinal
