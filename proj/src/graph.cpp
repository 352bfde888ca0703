#include "spinal/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace spinal {

namespace {

constexpr std::uint64_t kLevelGuard = 1'000'000;

std::size_t checked_level_size(const Params& params, std::size_t n) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= static_cast<std::uint64_t>(params.d);
    if (size > kLevelGuard) throw GuardError("d^n exceeds 10^6");
  }
  return static_cast<std::size_t>(size);
}

std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

} // namespace

std::string format_payload(const Payload& payload, int d) {
  return std::visit(
      [d](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, FiniteWord>) {
          return format_word(p, d);
        } else if constexpr (std::is_same_v<T, BoundaryPoint>) {
          return format_point(p, d);
        } else {
          return format_point(p.point, d) + ":" + std::to_string(p.sheet);
        }
      },
      payload);
}

Payload parse_payload(const std::string& text, int d) {
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const std::string sheet = text.substr(colon + 1);
    if (sheet.empty() || sheet.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad sheet in '" + text + "'");
    const auto i = std::stoul(sheet);
    if (i >= static_cast<unsigned long>(d)) throw ParseError("sheet out of range in '" + text + "'");
    return CoverPoint{parse_point(text.substr(0, colon), d), static_cast<Letter>(i)};
  }
  if (text.find('(') != std::string::npos) return parse_point(text, d);
  return parse_word(text, d);
}

std::size_t LabeledMultigraph::add_vertex(Payload payload) {
  payloads_.push_back(std::move(payload));
  return payloads_.size() - 1;
}

void LabeledMultigraph::add_edge(std::size_t src, std::size_t dst, GeneratorLabel label) {
  if (src >= payloads_.size() || dst >= payloads_.size())
    throw ParameterError("edge endpoint out of range");
  edges_.push_back(Edge{src, dst, std::move(label)});
}

std::optional<std::size_t> LabeledMultigraph::find(const Payload& payload) const {
  auto it = std::find(payloads_.begin(), payloads_.end(), payload);
  if (it == payloads_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - payloads_.begin());
}

void LabeledMultigraph::remove_loops_at(std::size_t v) {
  std::erase_if(edges_, [v](const Edge& e) { return e.src == v && e.dst == v; });
}

std::size_t LabeledMultigraph::loop_count(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.src == v && e.dst == v; }));
}

std::vector<std::vector<std::size_t>> LabeledMultigraph::out_edges() const {
  std::vector<std::vector<std::size_t>> out(payloads_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) out[edges_[i].src].push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> LabeledMultigraph::simple_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(payloads_.size());
  for (const auto& e : edges_) {
    if (e.src == e.dst) continue;
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

LabeledMultigraph block_xi(const Params& params) {
  LabeledMultigraph g(params);
  const auto v = g.add_vertex(FiniteWord{});
  for (auto& b : nonzero_b_elements(params)) g.add_edge(v, v, SpinalB{std::move(b)});
  return g;
}

LabeledMultigraph block_theta(const Params& params) {
  LabeledMultigraph g(params);
  const auto d = static_cast<std::size_t>(params.d);
  for (std::size_t i = 0; i < d; ++i) g.add_vertex(FiniteWord{static_cast<Letter>(i)});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 1; j < d; ++j) g.add_edge(i, (i + j) % d, RotA{static_cast<Residue>(j)});
  return g;
}

LabeledMultigraph block_lambda(const Params& params, const Epimorphism& pi) {
  check_epimorphism(params, pi);
  LabeledMultigraph g(params);
  const auto d = static_cast<std::size_t>(params.d);
  for (std::size_t i = 0; i < d; ++i) g.add_vertex(FiniteWord{static_cast<Letter>(i)});
  const auto bs = nonzero_b_elements(params);
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& b : bs) g.add_edge(i, (i + eval_epi(params, pi, b)) % d, SpinalB{b});
  return g;
}

LabeledMultigraph star(const LabeledMultigraph& lambda, const LabeledMultigraph& gamma,
                       std::size_t v) {
  const auto& params = gamma.params();
  const auto d = static_cast<std::size_t>(params.d);
  if (lambda.vertex_count() != d) throw ParameterError("Star needs a block on exactly d vertices");
  if (v >= gamma.vertex_count()) throw ParameterError("Star glue vertex out of range");

  const std::size_t size = gamma.vertex_count();
  LabeledMultigraph out(params);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t w = 0; w < size; ++w) {
      const auto* word = std::get_if<FiniteWord>(&gamma.payload(w));
      if (!word) throw ParameterError("Star needs word payloads on the copied graph");
      FiniteWord labelled = *word;
      labelled.push_back(static_cast<Letter>(i));
      out.add_vertex(std::move(labelled));
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& e : gamma.edges()) {
      if (e.src == v && e.dst == v) continue;
      out.add_edge(i * size + e.src, i * size + e.dst, e.label);
    }
  }
  // Block vertex i is identified with copy i's glue vertex.
  for (const auto& e : lambda.edges()) out.add_edge(e.src * size + v, e.dst * size + v, e.label);
  return out;
}

std::size_t level_index(const FiniteWord& w, int d) {
  std::size_t index = 0;
  for (std::size_t k = w.size(); k-- > 0;) index = index * static_cast<std::size_t>(d) + w[k];
  return index;
}

FiniteWord level_word(std::size_t index, std::size_t n, int d) {
  FiniteWord w = FiniteWord::repeat(0, n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = static_cast<Letter>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return w;
}

LabeledMultigraph gamma_direct(const SpinalGroup& group, std::size_t n) {
  if (n < 1) throw ParameterError("level must be at least 1");
  const auto& params = group.params;
  const std::size_t size = checked_level_size(params, n);
  const auto labels = generators(params);
  LabeledMultigraph g(params);
  for (std::size_t i = 0; i < size; ++i) g.add_vertex(level_word(i, n, params.d));
  for (std::size_t i = 0; i < size; ++i) {
    const auto& w = std::get<FiniteWord>(g.payload(i));
    for (const auto& s : labels) g.add_edge(i, level_index(act(group, s, w), params.d), s);
  }
  return g;
}

LabeledMultigraph gamma_one_literal(const Params& params) {
  return star(block_theta(params), block_xi(params), 0);
}

LabeledMultigraph gamma_recursive(const SpinalGroup& group, std::size_t n) {
  if (n < 1) throw ParameterError("level must be at least 1");
  const auto& params = group.params;
  checked_level_size(params, n);

  // Base level: Theta with every B element looping at every vertex.
  LabeledMultigraph g = gamma_one_literal(params);
  const auto bs = nonzero_b_elements(params);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (const auto& b : bs) g.add_edge(v, v, SpinalB{b});

  const auto top = static_cast<Letter>(params.d - 1);
  for (std::size_t level = 2; level <= n; ++level) {
    FiniteWord glue = FiniteWord::repeat(top, level - 2);
    glue.push_back(0);
    g = star(block_lambda(params, group.omega.at(level - 2)), g, level_index(glue, params.d));
  }
  return g;
}

LabeledMultigraph gamma_prime(const SpinalGroup& group, std::size_t n, bool fixed_tail) {
  auto g = gamma_direct(group, n);
  const auto top = static_cast<Letter>(group.params.d - 1);
  FiniteWord exit_word = FiniteWord::repeat(top, n - 1);
  exit_word.push_back(0);
  g.remove_loops_at(level_index(exit_word, group.params.d));
  if (!fixed_tail) g.remove_loops_at(level_index(FiniteWord::repeat(top, n), group.params.d));
  return g;
}

namespace {

std::vector<std::size_t> bfs_distances(const std::vector<std::vector<std::size_t>>& adj,
                                       std::size_t source) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(adj.size(), unseen);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
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

} // namespace

bool is_connected(const LabeledMultigraph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = bfs_distances(g.simple_adjacency(), 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t x) { return x == static_cast<std::size_t>(-1); });
}

std::size_t diameter(const LabeledMultigraph& g) {
  const auto adj = g.simple_adjacency();
  std::size_t best = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (auto x : bfs_distances(adj, v)) {
      if (x == static_cast<std::size_t>(-1)) throw PreconditionError("graph is disconnected");
      best = std::max(best, x);
    }
  }
  return best;
}

bool equal_labeled(const LabeledMultigraph& g1, const LabeledMultigraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
  std::map<Payload, std::size_t> index2;
  for (std::size_t v = 0; v < g2.vertex_count(); ++v)
    if (!index2.emplace(g2.payload(v), v).second)
      throw PreconditionError("payloads are not unique in the second graph");

  std::vector<std::size_t> to2(g1.vertex_count());
  std::vector<bool> hit(g2.vertex_count(), false);
  for (std::size_t v = 0; v < g1.vertex_count(); ++v) {
    auto it = index2.find(g1.payload(v));
    if (it == index2.end()) return false;
    if (hit[it->second]) throw PreconditionError("payloads are not unique in the first graph");
    hit[it->second] = true;
    to2[v] = it->second;
  }

  std::vector<Edge> mapped;
  mapped.reserve(g1.edge_count());
  for (const auto& e : g1.edges()) mapped.push_back(Edge{to2[e.src], to2[e.dst], e.label});
  std::vector<Edge> other = g2.edges();
  std::sort(mapped.begin(), mapped.end());
  std::sort(other.begin(), other.end());
  return mapped == other;
}

bool equal_labeled(const RootedGraph& g1, const RootedGraph& g2) {
  return g1.graph.payload(g1.root) == g2.graph.payload(g2.root) && equal_labeled(g1.graph, g2.graph);
}

std::string to_dot(const LabeledMultigraph& g, std::optional<std::size_t> root) {
  const int d = g.params().d;
  std::ostringstream out;
  out << "digraph schreier {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto text = std::holds_alternative<std::monostate>(g.payload(v))
                          ? std::to_string(v)
                          : format_payload(g.payload(v), d);
    out << "  n" << v << " [label=" << quote_dot(text);
    if (root && *root == v) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : g.edges())
    out << "  n" << e.src << " -> n" << e.dst << " [label=" << quote_dot(format_label(e.label))
        << "];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const RootedGraph& g) { return to_dot(g.graph, g.root); }

nlohmann::json to_json(const LabeledMultigraph& g, std::optional<std::size_t> root) {
  const int d = g.params().d;
  nlohmann::json doc;
  doc["d"] = g.params().d;
  doc["m"] = g.params().m;
  auto vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    nlohmann::json word = nullptr;
    if (!std::holds_alternative<std::monostate>(g.payload(v))) word = format_payload(g.payload(v), d);
    vertices.push_back({{"id", v}, {"word", word}});
  }
  doc["vertices"] = std::move(vertices);
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"label", format_label(e.label)}});
  doc["edges"] = std::move(edges);
  doc["root"] = root ? nlohmann::json(*root) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json to_json(const RootedGraph& g) { return to_json(g.graph, g.root); }

ImportedGraph from_json(const nlohmann::json& doc) {
  try {
    const auto params = make_params(doc.at("d").get<int>(), doc.at("m").get<int>());
    ImportedGraph out{LabeledMultigraph(params), std::nullopt};
    const auto& vertices = doc.at("vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& v = vertices[i];
      if (v.at("id").get<std::size_t>() != i) throw ParseError("vertex ids must be 0..n-1 in order");
      const auto& word = v.at("word");
      out.graph.add_vertex(word.is_null() ? Payload{} : parse_payload(word.get<std::string>(), params.d));
    }
    for (const auto& e : doc.at("edges")) {
      auto label = parse_label(e.at("label").get<std::string>());
      check_label(params, label);
      out.graph.add_edge(e.at("src").get<std::size_t>(), e.at("dst").get<std::size_t>(), std::move(label));
    }
    if (!doc.at("root").is_null()) {
      out.root = doc.at("root").get<std::size_t>();
      if (*out.root >= out.graph.vertex_count()) throw ParseError("root out of range");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  }
}

} // namespace spinal
