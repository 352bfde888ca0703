#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spinal/isomorphism.hpp"
#include "support.hpp"

using namespace spinal;

namespace {

constexpr std::size_t kHorizon = 120;

// Compatibility read letter by letter up to a fixed horizon.
bool oracle_compatible(const BoundaryPoint& xi, const BoundaryPoint& eta, int d) {
  const auto top = static_cast<Letter>(d - 1);
  std::size_t suffix_xi = 0, suffix_eta = 0;
  for (std::size_t n = 0; n < kHorizon; ++n) {
    const Letter x = xi.letter_at(n), y = eta.letter_at(n);
    if ((x == 0) != (y == 0)) return false;
    if (x == 0) {
      if (suffix_xi != suffix_eta) return false;
      suffix_xi = suffix_eta = 0;
      continue;
    }
    suffix_xi = x == top ? suffix_xi + 1 : 0;
    suffix_eta = y == top ? suffix_eta + 1 : 0;
  }
  return true;
}

// Out-walk profile: for every word in the generators up to length r + 1,
// the index of the vertex reached. Equal profiles mean labeled rooted
// isomorphic radius-r balls.
std::vector<long> walk_profile(const SpinalGroup& g, const BoundaryPoint& xi, std::size_t r) {
  const auto s = generators(g.params);
  std::map<BoundaryPoint, long> id{{xi, 0}};
  std::vector<long> out{0};
  std::vector<BoundaryPoint> layer{xi};
  for (std::size_t len = 1; len <= r + 1; ++len) {
    std::vector<BoundaryPoint> next;
    for (const auto& p : layer)
      for (const auto& label : s) {
        const auto q = act(g, label, p);
        next.push_back(q);
        if (auto it = id.find(q); it != id.end()) {
          out.push_back(it->second);
        } else if (len <= r) {
          const long k = static_cast<long>(id.size());
          id.emplace(q, k);
          out.push_back(k);
        } else {
          out.push_back(-1);
        }
      }
    layer = std::move(next);
  }
  return out;
}

// Small random rooted multigraph on n vertices; labels are irrelevant here.
RootedGraph random_multigraph(std::size_t n, Rng& rng) {
  RootedGraph g{LabeledMultigraph(make_params(2, 1)), 0};
  for (std::size_t v = 0; v < n; ++v) g.graph.add_vertex(Payload{});
  const int edges = spinal::testing::uniform_int(static_cast<int>(n), static_cast<int>(2 * n + 2), rng);
  for (int e = 0; e < edges; ++e) {
    const auto u = static_cast<std::size_t>(spinal::testing::uniform_int(0, static_cast<int>(n) - 1, rng));
    const auto v = static_cast<std::size_t>(spinal::testing::uniform_int(0, static_cast<int>(n) - 1, rng));
    g.graph.add_edge(u, v, RotA{1});
  }
  return g;
}

RootedGraph permuted(const RootedGraph& g, const std::vector<std::size_t>& perm, Rng& rng) {
  RootedGraph out{LabeledMultigraph(g.graph.params()), perm[g.root]};
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v) out.graph.add_vertex(Payload{});
  for (const auto& e : g.graph.edges()) {
    // Orientation is irrelevant for the unlabeled check.
    if (std::bernoulli_distribution(0.5)(rng))
      out.graph.add_edge(perm[e.src], perm[e.dst], e.label);
    else
      out.graph.add_edge(perm[e.dst], perm[e.src], e.label);
  }
  return out;
}

bool brute_force_iso(const RootedGraph& g1, const RootedGraph& g2) {
  const std::size_t n = g1.graph.vertex_count();
  if (n != g2.graph.vertex_count()) return false;
  const auto c1 = undirected_counts(g1.graph);
  const auto c2 = undirected_counts(g2.graph);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    if (perm[g1.root] != g2.root) continue;
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) ok = c1.loops[v] == c2.loops[perm[v]];
    if (!ok) continue;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mapped;
    for (const auto& [uv, c] : c1.pairs) {
      const auto a = perm[uv.first], b = perm[uv.second];
      mapped[{std::min(a, b), std::max(a, b)}] = c;
    }
    if (mapped == c2.pairs) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool is_unlabeled_iso(const RootedGraph& g1, const RootedGraph& g2, const VertexMap& map) {
  if (map.size() != g1.graph.vertex_count() || map[g1.root] != g2.root) return false;
  if (std::set<std::size_t>(map.begin(), map.end()).size() != map.size()) return false;
  const auto c1 = undirected_counts(g1.graph);
  const auto c2 = undirected_counts(g2.graph);
  for (std::size_t v = 0; v < map.size(); ++v)
    if (c1.loops[v] != c2.loops[map[v]]) return false;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mapped;
  for (const auto& [uv, c] : c1.pairs) {
    const auto a = map[uv.first], b = map[uv.second];
    mapped[{std::min(a, b), std::max(a, b)}] = c;
  }
  return mapped == c2.pairs;
}

BoundaryPoint reassemble(const BlockDecomposition& blocks, std::size_t count) {
  FiniteWord w;
  for (std::size_t k = 0; k < count; ++k) {
    if (!blocks.is_finite(k)) return prepend(w, *blocks.infinite_tail);
    w += blocks.block(k);
    w.push_back(0);
  }
  return canonicalize(w, FiniteWord{0});
}

} // namespace

TEST_CASE("zero_blocks examples") {
  const auto a = zero_blocks(parse_point("1(0)", 3));
  CHECK(a.block(0) == FiniteWord{1});
  for (std::size_t k = 1; k < 6; ++k) CHECK(a.block(k).empty());

  const auto b = zero_blocks(parse_point("(21)", 3));
  CHECK_FALSE(b.is_finite(0));
  CHECK(*b.infinite_tail == parse_point("(21)", 3));
  CHECK_THROWS_AS(b.block(0), PreconditionError);

  const auto c = zero_blocks(parse_point("120(12)", 3));
  CHECK(c.block(0) == (FiniteWord{1, 2}));
  CHECK_FALSE(c.is_finite(1));
  CHECK(*c.infinite_tail == parse_point("(12)", 3));
}

TEST_CASE("property: blocks reassemble to the point") {
  Rng rng(61);
  for (int t = 0; t < 500; ++t) {
    const int d = spinal::testing::uniform_int(2, 5, rng);
    const auto xi = random_point(d, rng);
    const auto blocks = zero_blocks(xi);
    FiniteWord w;
    std::size_t k = 0;
    for (; k < 40 && blocks.is_finite(k); ++k) {
      for (auto x : blocks.block(k).letters()) CHECK(x != 0);
      w += blocks.block(k);
      w.push_back(0);
    }
    CHECK(w == xi.prefix(w.size()));
    if (k < 40) CHECK(prepend(w, *blocks.infinite_tail) == xi);
  }
  CHECK(reassemble(zero_blocks(parse_point("1(0)", 3)), 5) == parse_point("1(0)", 3));
}

TEST_CASE("y_class examples") {
  CHECK(y_class(FiniteWord{1}, 3) == 0);
  CHECK(y_class(FiniteWord{2, 2}, 3) == 2);
  CHECK(y_class(FiniteWord{1, 2}, 3) == 1);
  CHECK(y_class(FiniteWord{}, 3) == 0);
}

TEST_CASE("compatible examples") {
  const auto xi = parse_point("12(0201)", 3);
  CHECK(compatible(xi, xi, 3).compatible);
  CHECK(compatible(parse_point("1(0)", 5), parse_point("3(0)", 5), 5).compatible);
  const auto v = compatible(parse_point("1(0)", 3), parse_point("2(0)", 3), 3);
  CHECK_FALSE(v.compatible);
  CHECK(v.witness_block == 0);
  CHECK(v.witness_position == 0);
  const auto z = compatible(parse_point("11(0)", 3), parse_point("1(0)", 3), 3);
  CHECK_FALSE(z.compatible);
  CHECK(z.witness_block == 0);
  CHECK(z.witness_position == 1);
}

TEST_CASE("property: compatible matches the letter-by-letter oracle") {
  Rng rng(62);
  for (int t = 0; t < 3000; ++t) {
    const int d = t % 2 == 0 ? 3 : 5;
    const auto xi = random_point(d, rng, {3, 3, 0.5});
    BoundaryPoint eta;
    switch (t % 3) {
    case 0: eta = random_compatible(xi, d, rng); break;
    case 1: eta = random_mutation(xi, d, rng, 4); break;
    default: eta = random_point(d, rng, {3, 3, 0.5}); break;
    }
    const auto v = compatible(xi, eta, d);
    CHECK(v.compatible == oracle_compatible(xi, eta, d));
    CHECK(v.witness_block.has_value() == !v.compatible);
    CHECK(v.witness_position.has_value() == !v.compatible);
    if (t % 3 == 0) CHECK(v.compatible);
    if (!v.compatible) {
      // Everything before the witness position agrees structurally.
      const auto p = *v.witness_position;
      for (std::size_t n = 0; n < p; ++n) CHECK((xi.letter_at(n) == 0) == (eta.letter_at(n) == 0));
    }
  }
}

TEST_CASE("property: compatible is an equivalence relation") {
  Rng rng(63);
  for (int t = 0; t < 500; ++t) {
    const int d = t % 2 == 0 ? 3 : 4;
    const auto a = random_point(d, rng, {2, 2, 0.6});
    const auto b = t % 4 == 0 ? random_point(d, rng, {2, 2, 0.6}) : random_compatible(a, d, rng);
    const auto c = t % 5 == 0 ? random_point(d, rng, {2, 2, 0.6}) : random_compatible(b, d, rng);
    CHECK(compatible(a, a, d).compatible);
    CHECK(compatible(a, b, d).compatible == compatible(b, a, d).compatible);
    if (compatible(a, b, d).compatible && compatible(b, c, d).compatible) CHECK(compatible(a, c, d).compatible);
  }
}

TEST_CASE("phi examples") {
  const auto xi = parse_point("1(0)", 5);
  const auto eta = parse_point("3(0)", 5);
  CHECK(phi(xi, eta, xi) == eta);
  CHECK(phi(xi, eta, parse_point("4(0)", 5)) == parse_point("4(0)", 5));
  CHECK(phi(xi, eta, parse_point("12(0)", 5)) == parse_point("12(0)", 5));
  CHECK_THROWS_AS(phi(xi, eta, parse_point("(1)", 5)), PreconditionError);
}

TEST_CASE("property: phi round-trip and cofinality") {
  Rng rng(64);
  for (int t = 0; t < 400; ++t) {
    const int d = t % 2 == 0 ? 3 : 5;
    const auto xi = random_point(d, rng);
    const auto eta = random_compatible(xi, d, rng);
    const auto xi_prime = random_cofinal(xi, d, rng, 6);
    const auto image = phi(xi, eta, xi_prime);
    CHECK(cofinal(image, eta));
    CHECK(phi(eta, xi, image) == xi_prime);
  }
}

TEST_CASE("property: phi maps Lambda blocks onto Lambda blocks") {
  Rng rng(65);
  for (int t = 0; t < 100; ++t) {
    const int d = t % 2 == 0 ? 3 : 5;
    const auto g = d == 3 ? preset("fabrykowski-gupta") : preset("sunic", {{"p", "5"}});
    const auto xi = random_point(d, rng);
    const auto eta = random_compatible(xi, d, rng);
    for (std::size_t n = 0; n <= 3; ++n) {
      std::set<BoundaryPoint> image, target;
      const auto from = lambda_sub(g, xi, n);
      const auto to = lambda_sub(g, eta, n);
      for (const auto& p : from.payloads()) image.insert(phi(xi, eta, std::get<BoundaryPoint>(p)));
      for (const auto& p : to.payloads()) target.insert(std::get<BoundaryPoint>(p));
      CHECK(image == target);
    }
  }
}

TEST_CASE("verify_phi_ball") {
  const auto fg = preset("fabrykowski-gupta");
  const auto xi = parse_point("12(0)", 3);
  CHECK(verify_phi_ball(fg, xi, xi, 7));
  const auto s5 = preset("sunic", {{"p", "5"}});
  CHECK(verify_phi_ball(s5, parse_point("1(0)", 5), parse_point("3(0)", 5), 15));
  CHECK_THROWS_AS(verify_phi_ball(fg, parse_point("1(0)", 3), parse_point("2(0)", 3), 3), PreconditionError);
}

TEST_CASE("undirected_counts") {
  RootedGraph g{LabeledMultigraph(make_params(2, 1)), 0};
  g.graph.add_vertex(Payload{});
  g.graph.add_vertex(Payload{});
  g.graph.add_edge(0, 1, RotA{1});
  g.graph.add_edge(1, 0, RotA{1});
  g.graph.add_edge(1, 1, SpinalB{BElement{{1}}});
  const auto c = undirected_counts(g.graph);
  CHECK(c.loops == std::vector<std::size_t>{0, 1});
  CHECK(c.pairs.at({0, 1}) == 2);
}

TEST_CASE("iso_labeled_rooted") {
  const auto fg = preset("fabrykowski-gupta");
  const auto b = ball(fg, parse_point("01(0)", 3), 5);
  const auto self = iso_labeled_rooted(b, b);
  REQUIRE(self.has_value());
  for (std::size_t v = 0; v < self->size(); ++v) CHECK((*self)[v] == v);
  CHECK_FALSE(iso_labeled_rooted(ball(fg, parse_point("(0)", 3), 1), ball(fg, parse_point("1(0)", 3), 1)));

  RootedGraph bad{LabeledMultigraph(make_params(2, 1)), 0};
  bad.graph.add_vertex(Payload{});
  bad.graph.add_vertex(Payload{});
  bad.graph.add_edge(0, 1, RotA{1});
  bad.graph.add_edge(0, 0, RotA{1});
  CHECK_THROWS_AS(iso_labeled_rooted(bad, bad), PreconditionError);
}

TEST_CASE("property: labeled isomorphism agrees with walk profiles") {
  Rng rng(66);
  const std::vector<SpinalGroup> groups = {preset("grigorchuk"), preset("fabrykowski-gupta")};
  for (int t = 0; t < 80; ++t) {
    const auto& g = groups[static_cast<std::size_t>(t) % 2];
    const int d = g.params.d;
    const auto xi = random_point(d, rng);
    const auto eta = random_mutation(xi, d, rng, 6);
    for (std::size_t r : {2, 4}) {
      const bool iso = iso_labeled_rooted(ball(g, xi, r), ball(g, eta, r)).has_value();
      CHECK(iso == (walk_profile(g, xi, r) == walk_profile(g, eta, r)));
    }
  }
}

TEST_CASE("common prefix holds for isomorphic labeled balls when d >= 3") {
  Rng rng(67);
  const auto fg = preset("fabrykowski-gupta");
  std::size_t isomorphic = 0;
  for (int t = 0; t < 60; ++t) {
    const auto xi = random_point(3, rng);
    const auto eta = random_mutation(xi, 3, rng, 5);
    for (std::size_t r : {4, 8}) {
      if (!iso_labeled_rooted(ball(fg, xi, r), ball(fg, eta, r))) continue;
      ++isomorphic;
      const std::size_t k = r == 4 ? 2 : 3;
      CHECK(xi.prefix(k) == eta.prefix(k));
    }
  }
  CHECK(isomorphic > 0);
}

TEST_CASE("common prefix fails for the Grigorchuk group") {
  // Labeled rooted radius-8 balls at these points agree, yet the length-3
  // prefixes 011 and 010 differ.
  const auto grig = preset("grigorchuk");
  const auto xi = parse_point("011(110)", 2);
  const auto eta = parse_point("0(101)", 2);
  CHECK(walk_profile(grig, xi, 8) == walk_profile(grig, eta, 8));
  CHECK(iso_labeled_rooted(ball(grig, xi, 8), ball(grig, eta, 8)).has_value());
  CHECK(xi.prefix(3) != eta.prefix(3));
}

TEST_CASE("iso_unlabeled_rooted examples") {
  RootedGraph a{LabeledMultigraph(make_params(2, 1)), 0};
  a.graph.add_vertex(Payload{});
  a.graph.add_edge(0, 0, RotA{1});
  auto b = a;
  CHECK(iso_unlabeled_rooted(a, b).has_value());
  b.graph.add_edge(0, 0, RotA{1});
  CHECK_FALSE(iso_unlabeled_rooted(a, b).has_value());

  const auto s5 = preset("sunic", {{"p", "5"}});
  const auto g1 = ball(s5, parse_point("1(0)", 5), 7);
  const auto g2 = ball(s5, parse_point("3(0)", 5), 7);
  const auto map = iso_unlabeled_rooted(g1, g2);
  REQUIRE(map.has_value());
  CHECK(is_unlabeled_iso(g1, g2, *map));

  const auto fg = preset("fabrykowski-gupta");
  CHECK_FALSE(iso_unlabeled_rooted(ball(fg, parse_point("1(0)", 3), 7), ball(fg, parse_point("2(0)", 3), 7)));
}

TEST_CASE("property: unlabeled isomorphism agrees with brute force") {
  Rng rng(68);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(spinal::testing::uniform_int(1, 7, rng));
    const auto g1 = random_multigraph(n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto g2 = t % 2 == 0 ? permuted(g1, perm, rng) : random_multigraph(n, rng);
    const auto map = iso_unlabeled_rooted(g1, g2);
    CHECK(map.has_value() == brute_force_iso(g1, g2));
    if (map) CHECK(is_unlabeled_iso(g1, g2, *map));
  }
}

TEST_CASE("property: isomorphic unlabeled balls share zero positions") {
  Rng rng(69);
  const auto fg = preset("fabrykowski-gupta");
  for (int t = 0; t < 40; ++t) {
    const auto xi = random_point(3, rng);
    const auto eta = t % 2 == 0 ? random_compatible(xi, 3, rng) : random_mutation(xi, 3, rng, 2);
    const std::size_t n = 1;
    const std::size_t r = std::size_t{1} << (n + 2);
    if (!iso_unlabeled_rooted(ball(fg, xi, r), ball(fg, eta, r))) continue;
    for (std::size_t i = 0; i <= n; ++i) CHECK((xi.letter_at(i) == 0) == (eta.letter_at(i) == 0));
  }
}

TEST_CASE("property: compatibility decides rooted unlabeled isomorphism for d >= 3") {
  Rng rng(70);
  for (int t = 0; t < 40; ++t) {
    const int d = t % 2 == 0 ? 3 : 5;
    const auto g = d == 3 ? preset("fabrykowski-gupta") : preset("sunic", {{"p", "5"}});
    const auto xi = random_point(d, rng, {2, 2, 0.4});
    const auto eta = t % 4 < 2 ? random_compatible(xi, d, rng) : random_mutation(xi, d, rng, 2);
    const auto v = compatible(xi, eta, d);
    if (v.compatible) {
      const auto g1 = ball(g, xi, 7);
      const auto g2 = ball(g, eta, 7);
      const auto map = iso_unlabeled_rooted(g1, g2);
      REQUIRE(map.has_value());
      CHECK(is_unlabeled_iso(g1, g2, *map));
    } else if (*v.witness_position <= 2) {
      const std::size_t bound = std::size_t{8} << *v.witness_position;
      bool separated = false;
      for (std::size_t r = 1; r <= bound && !separated; ++r)
        separated = !iso_unlabeled_rooted(ball(g, xi, r), ball(g, eta, r)).has_value();
      CHECK(separated);
    }
  }
}

TEST_CASE("d = 2 line structure and rooted balls") {
  const std::vector<SpinalGroup> groups = {preset("grigorchuk"),
                                           preset("sunic", {{"p", "2"}, {"m", "2"}, {"rho", "((0,1),(1,1))"}})};
  Rng rng(71);
  for (const auto& g : groups) {
    const std::size_t half = std::size_t{1} << (g.params.m - 1);
    for (int t = 0; t < 6; ++t) {
      auto xi = random_point(2, rng);
      auto eta = random_point(2, rng);
      if (cofinal_with_spine(xi, 2) || cofinal_with_spine(eta, 2)) continue;
      const auto b1 = ball(g, xi, 12);
      const auto b2 = ball(g, eta, 12);
      CHECK(iso_unlabeled_rooted(b1, b2).has_value());
      const auto dist = root_distances(b1);
      const auto counts = undirected_counts(b1.graph);
      for (std::size_t v = 0; v < b1.graph.vertex_count(); ++v) {
        if (dist[v] >= 12) continue;
        CHECK(counts.loops[v] == half - 1);
        std::vector<std::size_t> multiplicities;
        for (const auto& [uv, c] : counts.pairs)
          if (uv.first == v || uv.second == v) multiplicities.push_back(c);
        std::sort(multiplicities.begin(), multiplicities.end());
        // Each undirected edge is counted once per direction.
        CHECK(multiplicities == std::vector<std::size_t>{2, 2 * half});
      }
    }
  }
}

TEST_CASE("unrooted_witness") {
  const auto xi = parse_point("1(20)", 3);
  const auto same = unrooted_witness(xi, xi, 3, 3);
  CHECK(same.status == WitnessStatus::Found);
  CHECK(same.eta_prime == xi);

  const auto w = unrooted_witness(parse_point("1(0)", 5), parse_point("(0)", 5), 2, 5);
  CHECK(w.status == WitnessStatus::Found);
  CHECK(w.eta_prime == parse_point("1(0)", 5));

  const auto none = unrooted_witness(parse_point("(10)", 3), parse_point("(20)", 3), 6, 3);
  CHECK(none.status == WitnessStatus::NoneExists);
  CHECK_FALSE(none.eta_prime.has_value());

  const auto far = unrooted_witness(parse_point("1111(0)", 3), parse_point("(0)", 3), 2, 3);
  CHECK(far.status == WitnessStatus::NoneWithinHorizon);
}

TEST_CASE("property: unrooted witnesses are compatible and cofinal") {
  Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    const auto xi = random_point(3, rng);
    const auto eta = random_point(3, rng);
    const auto w = unrooted_witness(xi, eta, 4, 3);
    if (w.status != WitnessStatus::Found) continue;
    CHECK(compatible(xi, *w.eta_prime, 3).compatible);
    CHECK(cofinal(*w.eta_prime, eta));
  }
}
