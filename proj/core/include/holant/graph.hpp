#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holant/common.hpp"

namespace holant {

struct Edge {
  int u = 0;  // smaller endpoint
  int v = 0;  // larger endpoint
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted list of edge ids.
using EdgeSet = std::vector<int>;

// Simple undirected graph with edges in canonical (min, max) order.
class MultiGraph {
 public:
  MultiGraph() = default;
  // Sorts the edges into canonical order. Throws ArgumentError on loops,
  // parallel edges or out-of-range endpoints.
  MultiGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const;
  std::span<const Edge> edges() const { return edges_; }

  // Incident edge ids of v in canonical order; position is the tuple rank.
  std::span<const int> incident(int v) const;
  int degree(int v) const;
  int edge_rank(int v, int e) const;
  int other_end(int e, int v) const;
  std::optional<int> find_edge(int u, int v) const;

 private:
  void check_vertex(int v) const;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

int max_degree(const MultiGraph& g);

// Connected edge sets S with 1 <= |S| <= max_edges and v in V(S), shortlex order.
std::vector<EdgeSet> connected_edge_subgraphs(const MultiGraph& g, int v, int max_edges);

bool is_connected_edge_set(const MultiGraph& g, std::span<const int> edges);

// Sorted vertex set touched by the given edges.
std::vector<int> vertices_of(const MultiGraph& g, std::span<const int> edges);

// Connected vertex sets U with min(U) = root and |U| <= max_size (any order).
std::vector<std::vector<int>> connected_vertex_sets(const MultiGraph& g, int root, int max_size);

// Connected components of the subgraph induced by `vertices` (each sorted).
std::vector<std::vector<int>> induced_components(const MultiGraph& g, std::span<const int> vertices);

bool shortlex_less(const std::vector<int>& a, const std::vector<int>& b);

MultiGraph path_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph complete_graph(int n);
MultiGraph star_graph(int leaves);
MultiGraph grid_graph(int rows, int cols);

// Text format: "n m" then m lines "u v"; '#' starts a comment.
MultiGraph parse_graph(std::istream& in);
MultiGraph parse_graph_text(const std::string& text);
std::string format_graph(const MultiGraph& g);

}  // namespace holant
