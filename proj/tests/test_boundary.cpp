#include <doctest.h>

#include <map>
#include <set>

#include "spinal/boundary.hpp"
#include "support.hpp"

using namespace spinal;

namespace {

using PointEdge = std::tuple<BoundaryPoint, BoundaryPoint, std::string>;

struct OracleBall {
  std::map<BoundaryPoint, std::size_t> dist;
  std::multiset<PointEdge> edges;
};

// Plain breadth-first search over the orbit, keeping edges between ball vertices.
OracleBall oracle_ball(const SpinalGroup& g, const BoundaryPoint& xi, std::size_t r) {
  OracleBall out;
  out.dist[xi] = 0;
  std::vector<BoundaryPoint> layer{xi};
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<BoundaryPoint> next;
    for (const auto& p : layer)
      for (const auto& s : generators(g.params)) {
        const auto q = act(g, s, p);
        if (out.dist.emplace(q, k).second) next.push_back(q);
      }
    layer = std::move(next);
  }
  for (const auto& [p, k] : out.dist)
    for (const auto& s : generators(g.params)) {
      const auto q = act(g, s, p);
      if (out.dist.count(q)) out.edges.insert({p, q, format_label(s)});
    }
  return out;
}

std::multiset<PointEdge> edges_by_point(const LabeledMultigraph& g) {
  std::multiset<PointEdge> out;
  for (const auto& e : g.edges())
    out.insert({std::get<BoundaryPoint>(g.payload(e.src)), std::get<BoundaryPoint>(g.payload(e.dst)),
                format_label(e.label)});
  return out;
}

std::set<BoundaryPoint> points(const LabeledMultigraph& g) {
  std::set<BoundaryPoint> out;
  for (const auto& p : g.payloads()) out.insert(std::get<BoundaryPoint>(p));
  return out;
}

std::vector<SpinalGroup> groups() {
  return {preset("dihedral"), preset("grigorchuk"), preset("fabrykowski-gupta"), preset("sunic", {{"p", "5"}}),
          preset("grigorchuk-p", {{"p", "3"}, {"per", "0,1,2,pi"}})};
}

} // namespace

TEST_CASE("ball of radius 0") {
  Rng rng(51);
  for (const auto& g : groups()) {
    for (int t = 0; t < 20; ++t) {
      const auto xi = random_point(g.params.d, rng);
      const auto b = ball(g, xi, 0);
      REQUIRE(b.graph.vertex_count() == 1);
      std::size_t fixing = 0;
      for (const auto& s : generators(g.params)) fixing += act(g, s, xi) == xi;
      CHECK(b.graph.loop_count(0) == fixing);
      CHECK(b.graph.edge_count() == fixing);
    }
  }
}

TEST_CASE("Fabrykowski-Gupta balls of radius 1") {
  const auto fg = preset("fabrykowski-gupta");
  const auto b0 = ball(fg, parse_point("(0)", 3), 1);
  std::set<BoundaryPoint> expected;
  for (const auto* s : {"(0)", "1(0)", "2(0)", "01(0)", "02(0)"}) expected.insert(parse_point(s, 3));
  CHECK(points(b0.graph) == expected);
  CHECK(b0.root == 0);
  CHECK(b0.graph.payload(0) == Payload{parse_point("(0)", 3)});

  const auto b1 = ball(fg, parse_point("1(0)", 3), 1);
  CHECK(b1.graph.vertex_count() == 3);
  CHECK(b1.graph.loop_count(b1.root) == 2);
}

TEST_CASE("property: ball matches a plain BFS oracle") {
  Rng rng(52);
  for (const auto& g : groups()) {
    for (int t = 0; t < 15; ++t) {
      const auto xi = random_point(g.params.d, rng);
      const std::size_t r = static_cast<std::size_t>(spinal::testing::uniform_int(0, g.params.d == 5 ? 5 : 9, rng));
      const auto b = ball(g, xi, r);
      const auto oracle = oracle_ball(g, xi, r);
      CHECK(b.graph.vertex_count() == oracle.dist.size());
      CHECK(edges_by_point(b.graph) == oracle.edges);
      const auto dist = root_distances(b);
      for (std::size_t v = 0; v < b.graph.vertex_count(); ++v)
        CHECK(dist[v] == oracle.dist.at(std::get<BoundaryPoint>(b.graph.payload(v))));
      for (std::size_t v = 1; v < dist.size(); ++v) CHECK(dist[v - 1] <= dist[v]);
    }
  }
}

TEST_CASE("property: smaller balls are induced subgraphs of larger ones") {
  Rng rng(53);
  for (const auto& g : groups()) {
    for (int t = 0; t < 10; ++t) {
      const auto xi = random_point(g.params.d, rng);
      const auto big = ball(g, xi, 6);
      const auto small = ball(g, xi, 3);
      std::vector<BoundaryPoint> vertices;
      for (const auto& p : small.graph.payloads()) vertices.push_back(std::get<BoundaryPoint>(p));
      CHECK(edges_by_point(small.graph) == edges_by_point(induced_subgraph(g, vertices)));
      const auto big_edges = edges_by_point(big.graph);
      const auto small_set = points(small.graph);
      std::multiset<PointEdge> restricted;
      for (const auto& e : big_edges)
        if (small_set.count(std::get<0>(e)) && small_set.count(std::get<1>(e))) restricted.insert(e);
      CHECK(restricted == edges_by_point(small.graph));
    }
  }
}

TEST_CASE("orbit_distances") {
  const auto fg = preset("fabrykowski-gupta");
  const auto dist = orbit_distances(fg, {parse_point("(0)", 3)}, 1);
  CHECK(dist.size() == 5);
  CHECK(dist.at(parse_point("01(0)", 3)) == 1);
}

TEST_CASE("delta") {
  const auto fg = preset("fabrykowski-gupta");
  const auto xi = parse_point("1(20)", 3);
  const auto d1 = delta(fg, xi, 1);
  std::set<BoundaryPoint> expected;
  for (Letter i = 0; i < 3; ++i) expected.insert(prepend(FiniteWord{i}, shift(xi, 1)));
  CHECK(points(d1.graph) == expected);
  CHECK(d1.graph.payload(d1.root) == Payload{xi});
  CHECK_THROWS_AS(delta(fg, xi, 0), ParameterError);
}

TEST_CASE("property: position in delta depends on the first n letters only") {
  Rng rng(54);
  const auto g = preset("fabrykowski-gupta");
  for (int t = 0; t < 50; ++t) {
    const auto xi = random_point(3, rng);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto eta = prepend(xi.prefix(n), random_point(3, rng));
      CHECK(delta(g, xi, n).root == delta(g, eta, n).root);
      CHECK(delta(g, xi, n).root == level_index(xi.prefix(n), 3));
    }
  }
}

TEST_CASE("property: delta copies are Gamma_n prime") {
  Rng rng(55);
  for (const auto& g : groups()) {
    const int d = g.params.d;
    for (int t = 0; t < 10; ++t) {
      const auto xi = random_point(d, rng);
      for (std::size_t n = 1; n <= (d == 2 ? 5u : 3u); ++n) {
        auto copy = delta(g, xi, n);
        for (std::size_t v = 0; v < copy.graph.vertex_count(); ++v) {
          const auto& p = std::get<BoundaryPoint>(copy.graph.payload(v));
          CHECK(shift(p, n) == shift(xi, n));
          copy.graph.set_payload(v, p.prefix(n));
        }
        CHECK(equal_labeled(copy.graph, gamma_prime(g, n, fixed_by_B(g, shift(xi, n)))));
      }
    }
  }
}

TEST_CASE("lambda_sub") {
  Rng rng(56);
  for (const auto& g : groups()) {
    const int d = g.params.d;
    for (int t = 0; t < 10; ++t) {
      const auto xi = random_point(d, rng);
      for (std::size_t n = 0; n <= 3; ++n) {
        auto sub = lambda_sub(g, xi, n);
        CHECK(sub.vertex_count() == static_cast<std::size_t>(d));
        for (const auto& e : sub.edges()) CHECK_FALSE(is_rotation(e.label));
        for (std::size_t v = 0; v < sub.vertex_count(); ++v)
          sub.set_payload(v, std::get<BoundaryPoint>(sub.payload(v)).prefix(n + 2).suffix_from(n + 1));
        auto lambda = block_lambda(g.params, g.omega.at(n));
        for (std::size_t v = 0; v < lambda.vertex_count(); ++v)
          lambda.set_payload(v, FiniteWord{static_cast<Letter>(v)});
        CHECK(equal_labeled(sub, lambda));
      }
    }
  }
}

TEST_CASE("ball identities") {
  CHECK(verify_ball_identities(preset("fabrykowski-gupta"), parse_point("(0)", 3), 1));
  CHECK(verify_ball_identities(preset("grigorchuk"), parse_point("(0)", 2), 2));
  Rng rng(57);
  for (const auto& g : groups()) {
    for (int t = 0; t < 5; ++t) {
      const auto xi = random_point(g.params.d, rng);
      // The radius-0 neighbourhood of Lambda is Lambda itself.
      const auto block = lambda_sub(g, xi, 0);
      std::vector<BoundaryPoint> sources;
      for (const auto& p : block.payloads()) sources.push_back(std::get<BoundaryPoint>(p));
      CHECK(orbit_distances(g, sources, 0).size() == static_cast<std::size_t>(g.params.d));
      for (std::size_t n = 0; n <= (g.params.d == 2 ? 4u : 2u); ++n) CHECK(verify_ball_identities(g, xi, n));
    }
  }
}

TEST_CASE("ends_class examples") {
  CHECK(ends_class(parse_point("(2)", 3), 3) == EndsClass::One);
  CHECK(ends_class(parse_point("(0)", 3), 3) == EndsClass::Two);
  CHECK(ends_class(parse_point("(1)", 3), 3) == EndsClass::One);
  CHECK(ends_class(parse_point("12(02)", 3), 3) == EndsClass::Two);
  CHECK(ends_class(parse_point("0(2)", 3), 3) == EndsClass::One);
  CHECK(ends_class(parse_point("(01)", 2), 2) == EndsClass::Two);
}

TEST_CASE("annulus examples") {
  const auto fg = preset("fabrykowski-gupta");
  CHECK(annulus_components(fg, parse_point("(0)", 3), 3, 12) == 2);
  CHECK(annulus_components(fg, parse_point("(2)", 3), 3, 12) == 1);
  CHECK(annulus_components(preset("dihedral"), parse_point("(0)", 2), 1, 8) == 2);
  CHECK_THROWS_AS(annulus_components(fg, parse_point("(0)", 3), 5, 5), ParameterError);
}

TEST_CASE("annulus_profile agrees with separate counts") {
  const auto fg = preset("fabrykowski-gupta");
  const auto xi = parse_point("1(02)", 3);
  const std::vector<std::size_t> Rs = {6, 9, 14, 20};
  const auto profile = annulus_profile(fg, xi, 4, Rs);
  for (std::size_t i = 0; i < Rs.size(); ++i) CHECK(profile[i] == annulus_components(fg, xi, 4, Rs[i]));
}

TEST_CASE("property: stabilised annulus counts agree with ends_class") {
  Rng rng(58);
  const std::vector<SpinalGroup> cases = {preset("grigorchuk"), preset("fabrykowski-gupta"),
                                          preset("sunic", {{"p", "5"}})};
  for (int t = 0; t < 9; ++t) {
    const auto& g = cases[static_cast<std::size_t>(t) % cases.size()];
    const auto xi = random_point(g.params.d, rng, {2, 2, 0.4});
    const std::size_t r = std::size_t{2} << xi.preperiod().size();
    const auto est = stable_annulus_components(g, xi, r, r + 128);
    CHECK(est.components == static_cast<std::size_t>(ends_class(xi, g.params.d)));
  }
  CHECK_THROWS_AS(stable_annulus_components(cases[0], parse_point("(0)", 2), 2, 20), GuardError);
}

TEST_CASE("sch_continuous_at") {
  CHECK(sch_continuous_at(parse_point("(0)", 3), 3));
  CHECK_FALSE(sch_continuous_at(parse_point("(1)", 2), 2));
  CHECK_FALSE(sch_continuous_at(parse_point("01(2)", 3), 3));
}

TEST_CASE("limit_ball") {
  const auto fg = preset("fabrykowski-gupta");
  const auto spine = parse_point("(2)", 3);

  const auto b0 = limit_ball(fg, Epimorphism{{1}}, 0);
  CHECK(b0.graph.vertex_count() == 1);
  CHECK(b0.graph.loop_count(0) == kernel(fg.params, Epimorphism{{1}}).size() - 1);

  const auto grig = preset("grigorchuk");
  for (const auto& pi : grig.omega.period()) {
    const auto g0 = limit_ball(grig, pi, 0);
    CHECK(g0.graph.loop_count(0) == 1);
  }

  const auto b = limit_ball(fg, Epimorphism{{1}}, 6);
  CHECK(b.graph.payload(b.root) == Payload{CoverPoint{spine, 0}});
  std::set<std::pair<std::size_t, std::size_t>> spine_b;
  for (const auto& e : b.graph.edges()) {
    const auto& src = std::get<CoverPoint>(b.graph.payload(e.src));
    const auto& dst = std::get<CoverPoint>(b.graph.payload(e.dst));
    if (is_rotation(e.label)) {
      CHECK(src.sheet == dst.sheet);
      continue;
    }
    if (src.point == spine) {
      CHECK(dst.point == spine);
      CHECK(dst.sheet == (src.sheet + std::get<SpinalB>(e.label).b.coords[0]) % 3);
      spine_b.insert({src.sheet, dst.sheet});
    } else {
      CHECK(dst.point == act(fg, e.label, src.point));
      CHECK(src.sheet == dst.sheet);
    }
  }
  // The Lambda_pi triangle on the three spine sheets.
  CHECK(spine_b.size() == 6);

  // Projection to the first coordinate is d-to-1 on the inner part of the ball.
  const auto dist = root_distances(b);
  std::map<BoundaryPoint, std::set<Letter>> fibres;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    const auto& p = std::get<CoverPoint>(b.graph.payload(v));
    fibres[p.point].insert(p.sheet);
  }
  const auto base = orbit_distances(fg, {spine}, 6);
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    const auto& p = std::get<CoverPoint>(b.graph.payload(v));
    if (dist[v] <= 2) CHECK(fibres[p.point].size() == 3);
    CHECK(base.count(p.point) == 1);
  }

  CHECK_THROWS_AS(limit_ball(preset("dihedral"), Epimorphism{{1}}, 3), UnsupportedError);
  const auto transient = preset("grigorchuk-p", {{"p", "3"}, {"pre", "pi"}, {"per", "0,1,2"}});
  CHECK_THROWS_AS(limit_ball(transient, transient.omega.at(0), 3), PreconditionError);
}

TEST_CASE("balls converge to the limit ball") {
  const auto fg = preset("fabrykowski-gupta");
  const auto limit = limit_ball(fg, Epimorphism{{1}}, 7);
  for (std::size_t k = 5; k <= 8; ++k) {
    const auto b = ball(fg, prepend(FiniteWord::repeat(2, k), parse_point("(0)", 3)), 7);
    CHECK(b.graph.vertex_count() == limit.graph.vertex_count());
    CHECK(b.graph.edge_count() == limit.graph.edge_count());
  }
}
