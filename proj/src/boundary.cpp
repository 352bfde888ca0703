#include "spinal/boundary.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

namespace spinal {

namespace {

struct CoverPointHash {
  std::size_t operator()(const CoverPoint& p) const noexcept {
    return BoundaryPointHash{}(p.point) * 7 + p.sheet;
  }
};

template <class Node, class Hash>
struct Exploration {
  std::vector<Node> order;
  std::vector<std::size_t> dist;
  std::unordered_map<Node, std::size_t, Hash> index;
};

// Breadth-first search from several sources; step(node) lists (label, target).
template <class Node, class Hash, class Step>
Exploration<Node, Hash> explore(const std::vector<Node>& sources, std::size_t radius, Step step) {
  Exploration<Node, Hash> ex;
  auto visit = [&ex](const Node& node, std::size_t dist) {
    if (ex.index.count(node)) return;
    if (ex.order.size() >= kBallGuard) throw GuardError("ball exceeds 10^6 vertices");
    ex.index.emplace(node, ex.order.size());
    ex.order.push_back(node);
    ex.dist.push_back(dist);
  };
  for (const auto& s : sources) visit(s, 0);
  for (std::size_t head = 0; head < ex.order.size(); ++head) {
    if (ex.dist[head] >= radius) continue;
    const Node current = ex.order[head];
    const std::size_t next = ex.dist[head] + 1;
    for (const auto& [label, target] : step(current)) visit(target, next);
  }
  return ex;
}

template <class Node, class Hash, class Step>
LabeledMultigraph assemble(const Params& params, const Exploration<Node, Hash>& ex, Step step) {
  LabeledMultigraph g(params);
  for (const auto& node : ex.order) g.add_vertex(node);
  for (std::size_t v = 0; v < ex.order.size(); ++v) {
    for (const auto& [label, target] : step(ex.order[v])) {
      auto it = ex.index.find(target);
      if (it != ex.index.end()) g.add_edge(v, it->second, label);
    }
  }
  return g;
}

auto orbit_step(const SpinalGroup& group) {
  return [&group, labels = generators(group.params)](const BoundaryPoint& xi) {
    std::vector<std::pair<GeneratorLabel, BoundaryPoint>> out;
    out.reserve(labels.size());
    for (const auto& s : labels) out.emplace_back(s, act(group, s, xi));
    return out;
  };
}

using OrbitExploration = Exploration<BoundaryPoint, BoundaryPointHash>;

OrbitExploration explore_orbit(const SpinalGroup& group, const std::vector<BoundaryPoint>& sources,
                               std::size_t radius) {
  return explore<BoundaryPoint, BoundaryPointHash>(sources, radius, orbit_step(group));
}

void check_level_guard(int d, std::size_t n) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= static_cast<std::uint64_t>(d);
    if (size > kBallGuard) throw GuardError("d^n exceeds 10^6");
  }
}

std::size_t pow_size(std::size_t base, std::size_t e) {
  std::size_t out = 1;
  while (e--) out *= base;
  return out;
}

std::size_t two_pow_minus_one(std::size_t k) {
  if (k >= 40) throw GuardError("radius 2^k - 1 too large");
  return (std::size_t{1} << k) - 1;
}

FiniteWord spine_exit_word(Letter top, std::size_t n) {
  FiniteWord w = FiniteWord::repeat(top, n);
  w.push_back(0);
  return w;
}

} // namespace

std::map<BoundaryPoint, std::size_t> orbit_distances(const SpinalGroup& group,
                                                     const std::vector<BoundaryPoint>& sources,
                                                     std::size_t radius) {
  const auto ex = explore_orbit(group, sources, radius);
  std::map<BoundaryPoint, std::size_t> out;
  for (std::size_t i = 0; i < ex.order.size(); ++i) out.emplace(ex.order[i], ex.dist[i]);
  return out;
}

LabeledMultigraph induced_subgraph(const SpinalGroup& group,
                                   const std::vector<BoundaryPoint>& vertices) {
  OrbitExploration ex;
  for (const auto& v : vertices) {
    if (!ex.index.emplace(v, ex.order.size()).second) throw ParameterError("repeated vertex");
    ex.order.push_back(v);
    ex.dist.push_back(0);
  }
  return assemble(group.params, ex, orbit_step(group));
}

RootedGraph ball(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t r) {
  const auto ex = explore_orbit(group, {xi}, r);
  return RootedGraph{assemble(group.params, ex, orbit_step(group)), 0};
}

std::vector<std::size_t> root_distances(const RootedGraph& g) {
  const auto adj = g.graph.simple_adjacency();
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(adj.size(), unseen);
  std::deque<std::size_t> queue{g.root};
  dist[g.root] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : adj[v]) {
      if (dist[u] != unseen) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

RootedGraph delta(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n) {
  if (n < 1) throw ParameterError("delta needs n >= 1");
  const int d = group.params.d;
  check_level_guard(d, n);
  const BoundaryPoint tail = shift(xi, n);
  const std::size_t size = pow_size(static_cast<std::size_t>(d), n);
  std::vector<BoundaryPoint> vertices;
  vertices.reserve(size);
  for (std::size_t i = 0; i < size; ++i) vertices.push_back(prepend(level_word(i, n, d), tail));

  RootedGraph out{induced_subgraph(group, vertices), level_index(xi.prefix(n), d)};
  const auto top = static_cast<Letter>(d - 1);
  out.graph.remove_loops_at(level_index(spine_exit_word(top, n - 1), d));
  if (!fixed_by_B(group, tail)) out.graph.remove_loops_at(level_index(FiniteWord::repeat(top, n), d));
  return out;
}

LabeledMultigraph lambda_sub(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n) {
  const int d = group.params.d;
  check_level_guard(d, n + 2);
  const BoundaryPoint tail = shift(xi, n + 2);
  const FiniteWord head = spine_exit_word(static_cast<Letter>(d - 1), n);
  std::vector<BoundaryPoint> vertices;
  for (int i = 0; i < d; ++i) {
    FiniteWord w = head;
    w.push_back(static_cast<Letter>(i));
    vertices.push_back(prepend(w, tail));
  }
  const auto full = induced_subgraph(group, vertices);
  LabeledMultigraph out(group.params);
  for (const auto& p : full.payloads()) out.add_vertex(p);
  for (const auto& e : full.edges())
    if (!is_rotation(e.label)) out.add_edge(e.src, e.dst, e.label);
  return out;
}

bool verify_ball_identities(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t n) {
  const int d = group.params.d;
  const auto du = static_cast<std::size_t>(d);
  check_level_guard(d, n + 2);
  const BoundaryPoint tail = shift(xi, n + 2);
  const auto top = static_cast<Letter>(d - 1);

  std::vector<BoundaryPoint> sources;
  const auto block = lambda_sub(group, xi, n);
  for (const auto& p : block.payloads()) sources.push_back(std::get<BoundaryPoint>(p));
  const auto ex = explore_orbit(group, sources, two_pow_minus_one(n + 1));

  auto within = [&ex](std::size_t radius) {
    std::set<BoundaryPoint> out;
    for (std::size_t i = 0; i < ex.order.size(); ++i)
      if (ex.dist[i] <= radius) out.insert(ex.order[i]);
    return out;
  };

  std::set<BoundaryPoint> delta_set;
  for (std::size_t i = 0; i < pow_size(du, n + 2); ++i) delta_set.insert(prepend(level_word(i, n + 2, d), tail));
  if (within(two_pow_minus_one(n + 1)) != delta_set) return false;

  for (std::size_t k = 0; k <= n; ++k) {
    std::set<BoundaryPoint> expected;
    for (std::size_t u = 0; u < pow_size(du, k); ++u) {
      for (std::size_t i = 0; i < du; ++i) {
        FiniteWord w = level_word(u, k, d);
        w += spine_exit_word(top, n - k);
        w.push_back(static_cast<Letter>(i));
        expected.insert(prepend(w, tail));
      }
    }
    if (within(two_pow_minus_one(k)) != expected) return false;
  }
  return true;
}

EndsClass ends_class(const BoundaryPoint& xi, int d) {
  const auto top = static_cast<Letter>(d - 1);
  const auto& period = xi.period().letters();
  const bool two_letter_tail =
      std::all_of(period.begin(), period.end(), [top](Letter x) { return x == 0 || x == top; });
  return two_letter_tail && !cofinal_with_spine(xi, d) ? EndsClass::Two : EndsClass::One;
}

std::vector<std::size_t> annulus_profile(const SpinalGroup& group, const BoundaryPoint& xi,
                                         std::size_t r, const std::vector<std::size_t>& Rs) {
  if (Rs.empty()) return {};
  if (!std::is_sorted(Rs.begin(), Rs.end()) || Rs.front() <= r)
    throw ParameterError("annulus needs r < R with radii in increasing order");
  const auto ex = explore_orbit(group, {xi}, Rs.back());
  const auto step = orbit_step(group);

  // Vertices arrive in BFS order, so an incremental union-find sees every
  // annulus edge once both ends are present.
  std::vector<std::size_t> parent(ex.order.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> out;
  std::size_t v = 0;
  for (std::size_t R : Rs) {
    for (; v < ex.order.size() && ex.dist[v] <= R; ++v) {
      if (ex.dist[v] <= r) continue;
      for (const auto& [label, target] : step(ex.order[v])) {
        auto it = ex.index.find(target);
        if (it == ex.index.end() || it->second > v || ex.dist[it->second] <= r) continue;
        parent[find(v)] = find(it->second);
      }
    }
    std::set<std::size_t> reaching;
    for (std::size_t u = v; u-- > 0 && ex.dist[u] == R;) reaching.insert(find(u));
    out.push_back(reaching.size());
  }
  return out;
}

std::size_t annulus_components(const SpinalGroup& group, const BoundaryPoint& xi, std::size_t r,
                               std::size_t R) {
  return annulus_profile(group, xi, r, {R}).front();
}

AnnulusEstimate stable_annulus_components(const SpinalGroup& group, const BoundaryPoint& xi,
                                          std::size_t r, std::size_t max_R) {
  std::vector<std::size_t> Rs;
  for (std::size_t gap = 8; r + gap <= max_R; gap *= 2) Rs.push_back(r + gap);
  if (Rs.size() < kAnnulusWindow) throw GuardError("max_R too small for the annulus window");
  const auto counts = annulus_profile(group, xi, r, Rs);
  const std::size_t last = counts.back();
  for (std::size_t i = counts.size() - kAnnulusWindow; i < counts.size(); ++i)
    if (counts[i] != last)
      throw GuardError("annulus count did not stabilise below R=" + std::to_string(max_R));
  return AnnulusEstimate{last, Rs.back()};
}

RootedGraph limit_ball(const SpinalGroup& group, const Epimorphism& pi, std::size_t r) {
  const auto& params = group.params;
  check_epimorphism(params, pi);
  if (params.d == 2 && params.m == 1) throw UnsupportedError("limit graphs need (d, m) != (2, 1)");
  if (!group.omega.recurs(pi)) throw PreconditionError("pi does not recur in omega");

  const BoundaryPoint spine = constant_point(static_cast<Letter>(params.d - 1));
  const auto labels = generators(params);
  auto step = [&](const CoverPoint& v) {
    std::vector<std::pair<GeneratorLabel, CoverPoint>> out;
    out.reserve(labels.size());
    for (const auto& s : labels) {
      if (v.point != spine || is_rotation(s)) {
        out.emplace_back(s, CoverPoint{act(group, s, v.point), v.sheet});
      } else {
        const Residue shift_by = eval_epi(params, pi, std::get<SpinalB>(s).b);
        out.emplace_back(s, CoverPoint{spine, static_cast<Letter>((v.sheet + shift_by) %
                                                                   static_cast<Residue>(params.d))});
      }
    }
    return out;
  };
  const auto ex = explore<CoverPoint, CoverPointHash>({CoverPoint{spine, 0}}, r, step);
  return RootedGraph{assemble(params, ex, step), 0};
}

bool sch_continuous_at(const BoundaryPoint& xi, int d) { return !cofinal_with_spine(xi, d); }

} // namespace spinal
