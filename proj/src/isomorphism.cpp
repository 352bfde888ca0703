#include "spinal/isomorphism.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace spinal {

namespace {

std::vector<FiniteWord> split_at_zeros(const std::vector<Letter>& letters) {
  std::vector<FiniteWord> blocks;
  FiniteWord current;
  for (Letter x : letters) {
    if (x == 0) {
      blocks.push_back(std::move(current));
      current = FiniteWord{};
    } else {
      current.push_back(x);
    }
  }
  return blocks;
}

struct Horizon {
  std::size_t start = 0;  // both points are periodic from here on
  std::size_t period = 1; // with this common period
};

Horizon horizon(const BoundaryPoint& xi, const BoundaryPoint& eta) {
  return Horizon{std::max(xi.preperiod().size(), eta.preperiod().size()),
                 std::lcm(xi.period().size(), eta.period().size())};
}

// y_class of the letters [start, end) of xi.
std::size_t y_class_at(const BoundaryPoint& xi, std::size_t start, std::size_t end, int d) {
  std::size_t m = 0;
  while (end - m > start && xi.letter_at(end - m - 1) == static_cast<Letter>(d - 1)) ++m;
  return m;
}

} // namespace

bool BlockDecomposition::is_finite(std::size_t k) const {
  return k < prefix_blocks.size() || !periodic_blocks.empty();
}

const FiniteWord& BlockDecomposition::block(std::size_t k) const {
  if (k < prefix_blocks.size()) return prefix_blocks[k];
  if (periodic_blocks.empty()) throw PreconditionError("block " + std::to_string(k) + " is not finite");
  return periodic_blocks[(k - prefix_blocks.size()) % periodic_blocks.size()];
}

BlockDecomposition zero_blocks(const BoundaryPoint& xi) {
  const auto& u = xi.preperiod().letters();
  const auto& v = xi.period().letters();
  BlockDecomposition out;
  const auto first_zero = std::find(v.begin(), v.end(), Letter{0});
  if (first_zero == v.end()) {
    out.prefix_blocks = split_at_zeros(u);
    const auto last_zero = std::find(u.rbegin(), u.rend(), Letter{0});
    const std::size_t rest = static_cast<std::size_t>(u.rend() - last_zero);
    out.infinite_tail = canonicalize(xi.preperiod().suffix_from(rest), xi.period());
    return out;
  }
  // Cut just after the first zero of the periodic part.
  const std::size_t cut = u.size() + static_cast<std::size_t>(first_zero - v.begin()) + 1;
  out.prefix_blocks = split_at_zeros(xi.prefix(cut).letters());
  out.periodic_blocks = split_at_zeros(shift(xi, cut).prefix(v.size()).letters());
  return out;
}

std::size_t y_class(const FiniteWord& w, int d) {
  if (std::find(w.letters().begin(), w.letters().end(), Letter{0}) != w.letters().end())
    throw ParameterError("y_class needs a word without zeros");
  std::size_t m = 0;
  while (m < w.size() && w[w.size() - 1 - m] == static_cast<Letter>(d - 1)) ++m;
  return m;
}

CompatibilityVerdict compatible(const BoundaryPoint& xi, const BoundaryPoint& eta, int d) {
  const auto h = horizon(xi, eta);
  // Zero positions are periodic after h.start, so [0, start + period) decides them.
  std::size_t block = 0;
  for (std::size_t i = 0; i < h.start + h.period; ++i) {
    const bool z1 = xi.letter_at(i) == 0;
    const bool z2 = eta.letter_at(i) == 0;
    if (z1 != z2) return CompatibilityVerdict{false, block, i};
    if (z1) ++block;
  }
  // Every block starting before start + period ends before start + 2 period.
  block = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < h.start + 2 * h.period; ++i) {
    if (xi.letter_at(i) != 0) continue;
    if (y_class_at(xi, begin, i, d) != y_class_at(eta, begin, i, d))
      return CompatibilityVerdict{false, block, i - 1};
    ++block;
    begin = i + 1;
  }
  return CompatibilityVerdict{};
}

BoundaryPoint phi(const BoundaryPoint& xi, const BoundaryPoint& eta, const BoundaryPoint& xi_prime) {
  if (xi_prime == xi) return eta;
  const auto R = discrepancy(xi, xi_prime);
  if (!R) throw PreconditionError("phi needs a point cofinal with xi");
  FiniteWord head = xi_prime.prefix(*R);
  const Letter a = xi.letter_at(*R - 1);
  const Letter b = eta.letter_at(*R - 1);
  Letter& last = head[*R - 1];
  if (last == a) {
    last = b;
  } else if (last == b) {
    last = a;
  }
  return prepend(head, shift(eta, *R));
}

UndirectedCounts undirected_counts(const LabeledMultigraph& g) {
  UndirectedCounts out;
  out.loops.assign(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    if (e.src == e.dst) {
      ++out.loops[e.src];
    } else {
      ++out.pairs[{std::min(e.src, e.dst), std::max(e.src, e.dst)}];
    }
  }
  return out;
}

bool verify_phi_ball(const SpinalGroup& group, const BoundaryPoint& xi, const BoundaryPoint& eta,
                     std::size_t r) {
  if (!compatible(xi, eta, group.params.d).compatible)
    throw PreconditionError("phi is only an isomorphism for compatible points");
  const auto b1 = ball(group, xi, r);
  const auto b2 = ball(group, eta, r);
  if (b1.graph.vertex_count() != b2.graph.vertex_count()) return false;

  std::map<BoundaryPoint, std::size_t> index2;
  for (std::size_t v = 0; v < b2.graph.vertex_count(); ++v)
    index2.emplace(std::get<BoundaryPoint>(b2.graph.payload(v)), v);

  VertexMap image(b1.graph.vertex_count());
  std::vector<bool> hit(b2.graph.vertex_count(), false);
  for (std::size_t v = 0; v < b1.graph.vertex_count(); ++v) {
    auto it = index2.find(phi(xi, eta, std::get<BoundaryPoint>(b1.graph.payload(v))));
    if (it == index2.end() || hit[it->second]) return false;
    hit[it->second] = true;
    image[v] = it->second;
  }
  if (image[b1.root] != b2.root) return false;

  const auto c1 = undirected_counts(b1.graph);
  const auto c2 = undirected_counts(b2.graph);
  for (std::size_t v = 0; v < image.size(); ++v)
    if (c1.loops[v] != c2.loops[image[v]]) return false;
  if (c1.pairs.size() != c2.pairs.size()) return false;
  for (const auto& [pair, count] : c1.pairs) {
    const auto a = image[pair.first];
    const auto b = image[pair.second];
    auto it = c2.pairs.find({std::min(a, b), std::max(a, b)});
    if (it == c2.pairs.end() || it->second != count) return false;
  }
  return true;
}

namespace {

using LabelMap = std::map<GeneratorLabel, std::size_t>;

// Per vertex: label -> out-neighbour and label -> in-neighbour.
std::pair<std::vector<LabelMap>, std::vector<LabelMap>> label_maps(const LabeledMultigraph& g) {
  std::vector<LabelMap> out(g.vertex_count());
  std::vector<LabelMap> in(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (!out[e.src].emplace(e.label, e.dst).second || !in[e.dst].emplace(e.label, e.src).second)
      throw PreconditionError("graph is not deterministic: label " + format_label(e.label) +
                              " repeats at a vertex");
  }
  return {out, in};
}

} // namespace

std::optional<VertexMap> iso_labeled_rooted(const RootedGraph& g1, const RootedGraph& g2) {
  const auto [out1, in1] = label_maps(g1.graph);
  const auto [out2, in2] = label_maps(g2.graph);
  const std::size_t n = g1.graph.vertex_count();
  if (n != g2.graph.vertex_count() || g1.graph.edge_count() != g2.graph.edge_count()) return std::nullopt;

  constexpr auto unset = static_cast<std::size_t>(-1);
  VertexMap forward(n, unset);
  VertexMap backward(n, unset);
  std::deque<std::size_t> queue;
  auto bind = [&](std::size_t u, std::size_t v) {
    if (forward[u] == unset && backward[v] == unset) {
      forward[u] = v;
      backward[v] = u;
      queue.push_back(u);
      return true;
    }
    return forward[u] == v && backward[v] == u;
  };
  auto match = [&bind](const LabelMap& m1, const LabelMap& m2) {
    if (m1.size() != m2.size()) return false;
    for (auto it1 = m1.begin(), it2 = m2.begin(); it1 != m1.end(); ++it1, ++it2)
      if (it1->first != it2->first || !bind(it1->second, it2->second)) return false;
    return true;
  };

  bind(g1.root, g2.root);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    const auto v = forward[u];
    if (!match(out1[u], out2[v]) || !match(in1[u], in2[v])) return std::nullopt;
  }
  if (std::find(forward.begin(), forward.end(), unset) != forward.end()) return std::nullopt;
  return forward;
}

namespace {

struct JointGraph {
  std::size_t n1 = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj; // (neighbour, multiplicity)
};

JointGraph join(const LabeledMultigraph& g1, const LabeledMultigraph& g2) {
  JointGraph j;
  j.n1 = g1.vertex_count();
  j.n = j.n1 + g2.vertex_count();
  j.adj.resize(j.n);
  auto add = [&j](const UndirectedCounts& c, std::size_t offset) {
    for (const auto& [pair, count] : c.pairs) {
      j.adj[pair.first + offset].emplace_back(pair.second + offset, count);
      j.adj[pair.second + offset].emplace_back(pair.first + offset, count);
    }
  };
  add(undirected_counts(g1), 0);
  add(undirected_counts(g2), j.n1);
  return j;
}

using Colouring = std::vector<std::size_t>;

std::size_t class_count(const Colouring& c) {
  std::vector<std::size_t> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

// Colour refinement until the partition stops splitting. Colour ids are
// assigned from sorted signatures, so equal structure gets equal ids on both sides.
void refine(const JointGraph& j, Colouring& colour) {
  std::size_t classes = class_count(colour);
  while (true) {
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
    std::vector<Signature> sig(j.n);
    for (std::size_t v = 0; v < j.n; ++v) {
      sig[v].first = colour[v];
      for (const auto& [u, w] : j.adj[v]) sig[v].second.emplace_back(colour[u], w);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<Signature, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (std::size_t v = 0; v < j.n; ++v) colour[v] = ids[sig[v]];
    if (ids.size() == classes) return;
    classes = ids.size();
  }
}

bool balanced(const JointGraph& j, const Colouring& colour) {
  std::map<std::size_t, long> balance;
  for (std::size_t v = 0; v < j.n; ++v) balance[colour[v]] += v < j.n1 ? 1 : -1;
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

std::optional<VertexMap> search(const JointGraph& j, Colouring colour) {
  refine(j, colour);
  if (!balanced(j, colour)) return std::nullopt;

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t v = 0; v < j.n; ++v) members[colour[v]].push_back(v);
  const std::vector<std::size_t>* target = nullptr;
  for (const auto& [c, vs] : members)
    if (vs.size() > 2 && (!target || vs.size() < target->size())) target = &vs;

  if (!target) {
    VertexMap map(j.n1);
    for (const auto& [c, vs] : members) map[vs[0]] = vs[1] - j.n1;
    return map;
  }
  const std::size_t x = target->front();
  const std::size_t fresh = *std::max_element(colour.begin(), colour.end()) + 1;
  for (std::size_t y : *target) {
    if (y < j.n1) continue;
    Colouring next = colour;
    next[x] = fresh;
    next[y] = fresh;
    if (auto found = search(j, std::move(next))) return found;
  }
  return std::nullopt;
}

bool is_isomorphism(const UndirectedCounts& c1, const UndirectedCounts& c2, const VertexMap& map) {
  for (std::size_t v = 0; v < map.size(); ++v)
    if (c1.loops[v] != c2.loops[map[v]]) return false;
  if (c1.pairs.size() != c2.pairs.size()) return false;
  for (const auto& [pair, count] : c1.pairs) {
    const auto a = map[pair.first];
    const auto b = map[pair.second];
    auto it = c2.pairs.find({std::min(a, b), std::max(a, b)});
    if (it == c2.pairs.end() || it->second != count) return false;
  }
  return true;
}

} // namespace

std::optional<VertexMap> iso_unlabeled_rooted(const RootedGraph& g1, const RootedGraph& g2) {
  if (g1.graph.vertex_count() > kUnlabeledGuard || g2.graph.vertex_count() > kUnlabeledGuard)
    throw GuardError("unlabeled isomorphism is limited to " + std::to_string(kUnlabeledGuard) +
                     " vertices");
  if (g1.graph.vertex_count() != g2.graph.vertex_count()) return std::nullopt;

  const auto c1 = undirected_counts(g1.graph);
  const auto c2 = undirected_counts(g2.graph);
  const auto j = join(g1.graph, g2.graph);

  // Initial colour: root flag and loop count.
  Colouring colour(j.n);
  for (std::size_t v = 0; v < j.n; ++v) {
    const bool first = v < j.n1;
    const std::size_t local = first ? v : v - j.n1;
    const bool root = local == (first ? g1.root : g2.root);
    const std::size_t loops = first ? c1.loops[local] : c2.loops[local];
    colour[v] = 2 * loops + (root ? 1 : 0);
  }
  auto map = search(j, std::move(colour));
  if (!map || (*map)[g1.root] != g2.root || !is_isomorphism(c1, c2, *map)) return std::nullopt;
  return map;
}

namespace {

// True iff zero positions agree from the horizon on, and so do the
// (d-1)-suffix lengths of all blocks lying beyond it.
bool tails_agree(const BoundaryPoint& xi, const BoundaryPoint& eta, int d) {
  const auto h = horizon(xi, eta);
  std::optional<std::size_t> first_zero;
  for (std::size_t i = h.start; i < h.start + h.period; ++i) {
    const bool z1 = xi.letter_at(i) == 0;
    if (z1 != (eta.letter_at(i) == 0)) return false;
    if (z1 && !first_zero) first_zero = i;
  }
  if (!first_zero) return true;
  std::size_t begin = *first_zero + 1;
  for (std::size_t i = begin; i <= *first_zero + h.period; ++i) {
    if (xi.letter_at(i) != 0) continue;
    if (y_class_at(xi, begin, i, d) != y_class_at(eta, begin, i, d)) return false;
    begin = i + 1;
  }
  return true;
}

} // namespace

UnrootedWitness unrooted_witness(const BoundaryPoint& xi, const BoundaryPoint& eta,
                                 std::size_t k_max, int d) {
  if (!tails_agree(xi, eta, d)) return UnrootedWitness{WitnessStatus::NoneExists, std::nullopt};
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t k = 0; k <= k_max; ++k) {
    total += level;
    if (total > kBallGuard) throw GuardError("witness search exceeds 10^6 candidates");
    level *= static_cast<std::uint64_t>(d);
  }
  for (std::size_t k = 0; k <= k_max; ++k) {
    const BoundaryPoint tail = shift(eta, k);
    FiniteWord w = FiniteWord::repeat(0, k);
    while (true) {
      const BoundaryPoint candidate = prepend(w, tail);
      if (compatible(xi, candidate, d).compatible) return UnrootedWitness{WitnessStatus::Found, candidate};
      // Next word in lexicographic order.
      std::size_t i = k;
      while (i > 0 && w[i - 1] == static_cast<Letter>(d - 1)) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return UnrootedWitness{WitnessStatus::NoneWithinHorizon, std::nullopt};
}

} // namespace spinal
