#include "spinal/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "spinal/isomorphism.hpp"
#include "spinal/sampling.hpp"

namespace spinal {

namespace {

struct NamedGroup {
  std::string label;
  SpinalGroup group;
};

struct LevelCase {
  NamedGroup group;
  std::size_t max_level;
};

std::vector<LevelCase> level_cases() {
  return {{{"dihedral", preset("dihedral")}, 10},
          {{"grigorchuk", preset("grigorchuk")}, 8},
          {{"fabrykowski-gupta", preset("fabrykowski-gupta")}, 6},
          {{"sunic p=5", preset("sunic", {{"p", "5"}})}, 4}};
}

std::vector<NamedGroup> sample_groups() {
  std::vector<NamedGroup> out;
  for (auto& c : level_cases()) out.push_back(std::move(c.group));
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CheckResult make_result(std::string name, bool passed, const std::ostringstream& detail) {
  return CheckResult{std::move(name), passed, detail.str()};
}

// Out-edge counts per target vertex, loops included.
std::map<std::size_t, std::size_t> out_targets(const LabeledMultigraph& g, std::size_t v) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& e : g.edges())
    if (e.src == v) ++out[e.dst];
  return out;
}

std::size_t floor_log2(std::size_t r) {
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= r) ++k;
  return k;
}

} // namespace

CheckResult check_recursion(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  double slowest = 0;
  std::size_t graphs = 0;
  for (const auto& c : level_cases()) {
    for (std::size_t n = 1; n <= c.max_level; ++n) {
      const auto start = std::chrono::steady_clock::now();
      const bool equal = equal_labeled(gamma_direct(c.group.group, n), gamma_recursive(c.group.group, n));
      const double t = seconds_since(start);
      slowest = std::max(slowest, t);
      ++graphs;
      if (!equal || t >= 10.0) {
        ok = false;
        detail << c.group.label << " n=" << n << (equal ? " too slow; " : " differs; ");
      }
    }
  }
  detail << graphs << " levels compared, slowest " << slowest << " s";
  return make_result("recursion", ok, detail);
}

CheckResult check_diameter(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  std::size_t graphs = 0;
  for (const auto& c : level_cases()) {
    for (std::size_t n = 1; n <= c.max_level; ++n) {
      const auto diam = diameter(gamma_direct(c.group.group, n));
      ++graphs;
      if (diam != (std::size_t{1} << n) - 1) {
        ok = false;
        detail << c.group.label << " n=" << n << " diameter " << diam << "; ";
      }
    }
  }
  detail << graphs << " levels checked against 2^n - 1";
  return make_result("diameter", ok, detail);
}

CheckResult check_figures(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;

  const auto grig = preset("grigorchuk");
  const auto g3 = gamma_direct(grig, 3);
  const std::vector<std::string> order = {"110", "010", "000", "100", "101", "001", "011", "111"};
  std::vector<std::size_t> path;
  for (const auto& w : order) path.push_back(level_index(parse_word(w, 2), 2));
  std::set<std::pair<std::size_t, std::size_t>> expected;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    expected.insert({std::min(path[i], path[i + 1]), std::max(path[i], path[i + 1])});
  std::set<std::pair<std::size_t, std::size_t>> actual;
  const auto adj = g3.simple_adjacency();
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (auto u : adj[v])
      if (v < u) actual.insert({v, u});
  if (actual != expected) {
    ok = false;
    detail << "grigorchuk Gamma_3 is not the expected path; ";
  }
  for (auto end : {path.front(), path.back()}) {
    std::size_t b_loops = 0;
    for (const auto& e : g3.edges())
      if (e.src == end && e.dst == end && !is_rotation(e.label)) ++b_loops;
    if (b_loops != 3) {
      ok = false;
      detail << "endpoint " << format_payload(g3.payload(end), 2) << " has " << b_loops << " B-loops; ";
    }
  }

  const auto fg3 = gamma_direct(preset("fabrykowski-gupta"), 3);
  std::set<std::pair<std::size_t, std::size_t>> a_pairs;
  for (const auto& e : fg3.edges())
    if (is_rotation(e.label)) a_pairs.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
  if (fg3.vertex_count() != 27 || a_pairs.size() != 27) {
    ok = false;
    detail << "fabrykowski-gupta Gamma_3 has " << fg3.vertex_count() << " vertices and "
           << a_pairs.size() << " a-pairs; ";
  }
  detail << "grigorchuk path order and end loops, fabrykowski-gupta 27 vertices / 27 a-pairs";
  return make_result("figures", ok, detail);
}

CheckResult check_delta_copies(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;
  std::size_t checks = 0;
  for (const auto& g : sample_groups()) {
    const int d = g.group.params.d;
    for (int t = 0; t < 20; ++t) {
      const auto xi = random_point(d, rng);
      for (std::size_t n = 1; n <= (d > 3 ? 4u : 5u); ++n) {
        auto copy = delta(g.group, xi, n);
        for (std::size_t v = 0; v < copy.graph.vertex_count(); ++v)
          copy.graph.set_payload(v, level_word(v, n, d));
        const auto expected = gamma_prime(g.group, n, fixed_by_B(g.group, shift(xi, n)));
        ++checks;
        if (!equal_labeled(copy.graph, expected) || copy.root != level_index(xi.prefix(n), d)) {
          ok = false;
          detail << g.label << " xi=" << format_point(xi, d) << " n=" << n << "; ";
        }
      }
    }
  }
  detail << checks << " copies compared with Gamma_n'";
  return make_result("delta", ok, detail);
}

CheckResult check_ball_identities(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;
  std::size_t checks = 0;
  for (const auto& g : sample_groups()) {
    const int d = g.group.params.d;
    for (int t = 0; t < 10; ++t) {
      const auto xi = random_point(d, rng);
      for (std::size_t n = 0; n <= (d > 3 ? 3u : 4u); ++n) {
        ++checks;
        if (!verify_ball_identities(g.group, xi, n)) {
          ok = false;
          detail << g.label << " xi=" << format_point(xi, d) << " n=" << n << "; ";
        }
      }
    }
  }
  detail << checks << " neighbourhood identities";
  return make_result("balls", ok, detail);
}

CheckResult check_ends(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;
  const auto fg = preset("fabrykowski-gupta");
  if (ends_class(parse_point("(2)", 3), 3) != EndsClass::One ||
      ends_class(parse_point("(0)", 3), 3) != EndsClass::Two) {
    ok = false;
    detail << "fabrykowski-gupta (2)/(0) misclassified; ";
  }

  const std::vector<NamedGroup> groups = {{"grigorchuk", preset("grigorchuk")},
                                          {"fabrykowski-gupta", fg},
                                          {"sunic p=5", preset("sunic", {{"p", "5"}})}};
  const PointShape shape{2, 2, 0.4};
  std::size_t agree = 0;
  std::size_t two_ended = 0;
  for (int t = 0; t < 21; ++t) {
    const auto& g = groups[static_cast<std::size_t>(t) % groups.size()];
    const int d = g.group.params.d;
    const auto xi = random_point(d, rng, shape);
    const std::size_t r = std::size_t{2} << xi.preperiod().size();
    const auto expected = static_cast<std::size_t>(ends_class(xi, d));
    try {
      const auto est = stable_annulus_components(g.group, xi, r, r + 128);
      if (est.components == expected) {
        ++agree;
        if (expected == 2) ++two_ended;
      } else {
        ok = false;
        detail << g.label << " xi=" << format_point(xi, d) << " annulus " << est.components
               << " vs " << expected << "; ";
      }
    } catch (const GuardError& e) {
      ok = false;
      detail << g.label << " xi=" << format_point(xi, d) << " unstable; ";
    }
  }
  detail << agree << "/21 random points agree (" << two_ended << " two-ended), r = 2^(|pre|+1), R up to r+128";
  return make_result("ends", ok, detail);
}

CheckResult check_isomorphism(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;
  const std::vector<NamedGroup> groups = {{"fabrykowski-gupta", preset("fabrykowski-gupta")},
                                          {"sunic p=5", preset("sunic", {{"p", "5"}})}};
  const std::vector<std::size_t> radii = {1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 25, 31};
  std::size_t compatible_pairs = 0;
  std::size_t separated = 0;
  std::size_t far_differences = 0;
  std::size_t largest_needed = 0;
  for (const auto& g : groups) {
    const int d = g.group.params.d;
    for (int t = 0; t < 60; ++t) {
      const auto xi = random_point(d, rng, {3, 2, 0.4});
      BoundaryPoint eta;
      switch (t % 3) {
      case 0: eta = random_compatible(xi, d, rng); break;
      case 1: eta = random_mutation(xi, d, rng, 3); break;
      default: eta = random_point(d, rng, {3, 2, 0.4}); break;
      }
      const auto verdict = compatible(xi, eta, d);
      if (verdict.compatible) {
        ++compatible_pairs;
        for (std::size_t r : {7, 15, 31}) {
          if (!verify_phi_ball(g.group, xi, eta, r)) {
            ok = false;
            detail << g.label << " phi fails " << format_point(xi, d) << " " << format_point(eta, d)
                   << " r=" << r << "; ";
          }
        }
        continue;
      }
      if (*verdict.witness_position > 2) {
        ++far_differences;
        continue;
      }
      std::optional<std::size_t> found;
      for (std::size_t r : radii) {
        if (!iso_unlabeled_rooted(ball(g.group, xi, r), ball(g.group, eta, r))) {
          found = r;
          break;
        }
      }
      if (found) {
        ++separated;
        largest_needed = std::max(largest_needed, *found);
      } else {
        ok = false;
        detail << g.label << " not separated " << format_point(xi, d) << " " << format_point(eta, d) << "; ";
      }
    }
  }
  if (compatible_pairs == 0 || separated == 0) ok = false;
  detail << compatible_pairs << " compatible pairs (phi checked at r=7,15,31), " << separated
         << " incompatible pairs separated by r<=" << largest_needed << ", " << far_differences
         << " incompatible pairs with difference beyond position 2";
  return make_result("iso", ok, detail);
}

CheckResult check_common_prefix(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;
  const std::vector<NamedGroup> groups = {
      {"fabrykowski-gupta", preset("fabrykowski-gupta")},
      {"sunic p=5", preset("sunic", {{"p", "5"}})},
      {"grigorchuk-p p=3", preset("grigorchuk-p", {{"p", "3"}, {"per", "0,1,2,pi"}})}};
  std::size_t isomorphic = 0;
  std::size_t tested = 0;
  for (const auto& g : groups) {
    const int d = g.group.params.d;
    for (int t = 0; t < 40; ++t) {
      const auto xi = random_point(d, rng);
      // Mostly near neighbours of xi, so that isomorphic balls actually occur.
      const auto eta = t % 4 == 3 ? random_point(d, rng) : random_mutation(xi, d, rng, 6);
      for (std::size_t r : {4, 8, 16}) {
        ++tested;
        if (!iso_labeled_rooted(ball(g.group, xi, r), ball(g.group, eta, r))) continue;
        ++isomorphic;
        const std::size_t k = floor_log2(r);
        if (xi.prefix(k) != eta.prefix(k)) {
          ok = false;
          detail << g.label << " " << format_point(xi, d) << " " << format_point(eta, d) << " r=" << r << "; ";
        }
      }
    }
  }
  if (isomorphic == 0) ok = false;
  detail << isomorphic << "/" << tested << " labeled-isomorphic ball pairs (d>=3), all share the prefix";
  return make_result("prefix", ok, detail);
}

CheckResult check_limits(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  const auto fg = preset("fabrykowski-gupta");
  const auto limit = limit_ball(fg, Epimorphism{{1}}, 7);
  const auto zeros = constant_point(0);
  std::vector<RootedGraph> balls;
  for (std::size_t k = 5; k <= 10; ++k) balls.push_back(ball(fg, prepend(FiniteWord::repeat(2, k), zeros), 7));
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (!iso_labeled_rooted(balls[i], balls[j])) {
        ok = false;
        detail << "k=" << i + 5 << " vs k=" << j + 5 << " differ; ";
      }
    }
    if (!iso_labeled_rooted(balls[i], limit)) {
      ok = false;
      detail << "k=" << i + 5 << " differs from the limit ball; ";
    }
  }
  detail << "radius-7 balls at 2^k(0), k=5..10, and the limit ball (" << limit.graph.vertex_count()
         << " vertices)";
  return make_result("limits", ok, detail);
}

CheckResult check_line(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  const auto b = ball(preset("grigorchuk"), parse_point("(0)", 2), 10);
  const auto dist = root_distances(b);
  std::size_t interior = 0;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    if (dist[v] >= 10) continue;
    ++interior;
    auto targets = out_targets(b.graph, v);
    const std::size_t loops = targets[v];
    targets.erase(v);
    std::vector<std::size_t> counts;
    for (const auto& [u, c] : targets) counts.push_back(c);
    std::sort(counts.begin(), counts.end());
    if (loops != 1 || counts != std::vector<std::size_t>{1, 2}) {
      ok = false;
      detail << format_payload(b.graph.payload(v), 2) << "; ";
    }
  }
  detail << interior << " interior vertices with 1 loop, 1 edge and 2 edges";
  return make_result("line", ok, detail);
}

CheckResult check_self_similarity(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  const std::vector<NamedGroup> yes = {
      {"grigorchuk", preset("grigorchuk")},
      {"fabrykowski-gupta", preset("fabrykowski-gupta")},
      {"dihedral", preset("dihedral")},
      {"sunic p=2", preset("sunic", {{"p", "2"}})},
      {"sunic p=3", preset("sunic", {{"p", "3"}})},
      {"sunic p=5", preset("sunic", {{"p", "5"}})},
      {"sunic p=2 m=2", preset("sunic", {{"p", "2"}, {"m", "2"}, {"rho", "((0,1),(1,1))"}})},
      {"sunic p=3 m=2", preset("sunic", {{"p", "3"}, {"m", "2"}, {"rho", "((0,1),(1,1))"}})}};
  for (const auto& g : yes) {
    if (!detect_self_similar(g.group)) {
      ok = false;
      detail << g.label << " not detected; ";
    }
  }
  const Epimorphism p01{{0, 1}}, p10{{1, 0}}, p11{{1, 1}};
  const auto mixed = make_group(make_params(2, 2), {}, {p01, p01, p10, p11});
  if (detect_self_similar(mixed)) {
    ok = false;
    detail << "(p01,p01,p10,p11) wrongly self-similar; ";
  }
  detail << yes.size() << " self-similar presets detected, (p01,p01,p10,p11) rejected";
  return make_result("selfsim", ok, detail);
}

CheckResult check_validator(std::uint64_t) {
  std::ostringstream detail;
  bool ok = true;
  const std::vector<std::pair<std::string, PresetArgs>> presets = {
      {"dihedral", {}},
      {"grigorchuk", {}},
      {"fabrykowski-gupta", {}},
      {"grigorchuk-p", {{"p", "3"}, {"per", "0,1,2,pi"}}},
      {"sunic", {{"p", "5"}}}};
  for (const auto& [name, args] : presets) {
    try {
      const auto g = preset(name, args);
      validate_omega(g.params, g.omega.preperiod(), g.omega.period());
    } catch (const Error& e) {
      ok = false;
      detail << name << " rejected: " << e.what() << "; ";
    }
  }
  try {
    validate_omega(make_params(2, 2), {}, {Epimorphism{{0, 1}}});
    ok = false;
    detail << "constant p01 accepted; ";
  } catch (const InvalidOmega& e) {
    if (e.index() != 0) {
      ok = false;
      detail << "constant p01 rejected at index " << e.index() << "; ";
    }
  }
  detail << "presets accepted, constant p01 rejected at index 0";
  return make_result("validate", ok, detail);
}

std::vector<std::string> suite_names() {
  return {"all",   "recursion", "diameter", "figures", "delta", "balls",   "ends",
          "iso",   "prefix",    "limits",   "line",    "selfsim", "validate"};
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  using Check = std::function<CheckResult(std::uint64_t)>;
  const std::vector<std::pair<std::string, Check>> checks = {
      {"recursion", check_recursion}, {"diameter", check_diameter},
      {"figures", check_figures},     {"delta", check_delta_copies},
      {"balls", check_ball_identities}, {"ends", check_ends},
      {"iso", check_isomorphism},     {"prefix", check_common_prefix},
      {"limits", check_limits},       {"line", check_line},
      {"selfsim", check_self_similarity}, {"validate", check_validator}};
  std::vector<CheckResult> out;
  for (const auto& [name, check] : checks)
    if (suite == "all" || suite == name) out.push_back(check(seed));
  if (out.empty()) throw ParameterError("unknown suite '" + suite + "'");
  return out;
}

} // namespace spinal
