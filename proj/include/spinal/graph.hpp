#pragma once

// Directed, generator-labelled multigraphs (loops and parallel edges allowed),
// the Star gluing, and the finite Schreier graphs Gamma_n built both directly
// from the action and recursively from blocks.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spinal/action.hpp"
#include "spinal/algebra.hpp"
#include "spinal/words.hpp"

namespace spinal {

/// Vertex of the d-fold cover used by limit graphs: (point, sheet).
struct CoverPoint {
  BoundaryPoint point;
  Letter sheet = 0;
  friend auto operator<=>(const CoverPoint&, const CoverPoint&) = default;
};

using Payload = std::variant<std::monostate, FiniteWord, BoundaryPoint, CoverPoint>;

std::string format_payload(const Payload& payload, int d);
Payload parse_payload(const std::string& text, int d);

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  GeneratorLabel label;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class LabeledMultigraph {
public:
  LabeledMultigraph() = default;
  explicit LabeledMultigraph(Params params) : params_(params) {}

  const Params& params() const { return params_; }

  std::size_t add_vertex(Payload payload);
  void add_edge(std::size_t src, std::size_t dst, GeneratorLabel label);

  std::size_t vertex_count() const { return payloads_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Payload& payload(std::size_t v) const { return payloads_.at(v); }
  void set_payload(std::size_t v, Payload payload) { payloads_.at(v) = std::move(payload); }
  const std::vector<Payload>& payloads() const { return payloads_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// First vertex carrying this payload.
  std::optional<std::size_t> find(const Payload& payload) const;

  /// Drops every loop at v.
  void remove_loops_at(std::size_t v);
  std::size_t loop_count(std::size_t v) const;

  /// Out-edge indices per vertex.
  std::vector<std::vector<std::size_t>> out_edges() const;
  /// Neighbour lists of the undirected simple graph underneath (no loops).
  std::vector<std::vector<std::size_t>> simple_adjacency() const;

private:
  Params params_;
  std::vector<Payload> payloads_;
  std::vector<Edge> edges_;
};

struct RootedGraph {
  LabeledMultigraph graph;
  std::size_t root = 0;
};

/// One vertex (the empty word) with a loop for every nonzero b.
LabeledMultigraph block_xi(const Params& params);
/// d vertices, an a^j edge i -> i+j for every i and 1 <= j <= d-1.
LabeledMultigraph block_theta(const Params& params);
/// d vertices, a b edge i -> i + pi(b) for every nonzero b (loops for Ker pi).
LabeledMultigraph block_lambda(const Params& params, const Epimorphism& pi);

/// d copies of gamma with the loops at v removed; copy i's v is glued to
/// lambda's vertex i and copy i's vertex w carries the word w i.
LabeledMultigraph star(const LabeledMultigraph& lambda, const LabeledMultigraph& gamma,
                       std::size_t v);

/// Index of a level-n word in gamma_direct / gamma_recursive: sum w_k d^k.
std::size_t level_index(const FiniteWord& w, int d);
FiniteWord level_word(std::size_t index, std::size_t n, int d);

LabeledMultigraph gamma_direct(const SpinalGroup& group, std::size_t n);
LabeledMultigraph gamma_recursive(const SpinalGroup& group, std::size_t n);
/// Gamma_1 exactly as the literal Star(Theta, Xi, empty word); it has no B-loops.
LabeledMultigraph gamma_one_literal(const Params& params);
/// Gamma_n without loops at (d-1)^(n-1) 0, and without loops at (d-1)^n
/// unless fixed_tail.
LabeledMultigraph gamma_prime(const SpinalGroup& group, std::size_t n, bool fixed_tail);

/// Largest eccentricity in the undirected simple graph. Throws on disconnected input.
std::size_t diameter(const LabeledMultigraph& g);
bool is_connected(const LabeledMultigraph& g);

/// True iff matching vertices by payload makes the labelled directed edge
/// multisets identical. Payloads must be unique within each graph.
bool equal_labeled(const LabeledMultigraph& g1, const LabeledMultigraph& g2);
bool equal_labeled(const RootedGraph& g1, const RootedGraph& g2);

std::string to_dot(const LabeledMultigraph& g, std::optional<std::size_t> root = std::nullopt);
std::string to_dot(const RootedGraph& g);
nlohmann::json to_json(const LabeledMultigraph& g, std::optional<std::size_t> root = std::nullopt);
nlohmann::json to_json(const RootedGraph& g);

struct ImportedGraph {
  LabeledMultigraph graph;
  std::optional<std::size_t> root;
};

ImportedGraph from_json(const nlohmann::json& doc);

} // namespace spinal
