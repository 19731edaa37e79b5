#include "holant/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace holant {

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), incident_(vertex_count < 0 ? 0 : vertex_count) {
  if (vertex_count < 0) throw ArgumentError("negative vertex count");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
      throw ArgumentError("edge endpoint out of range");
    if (e.u == e.v) throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ArgumentError("parallel edges are not supported");
  edges_ = std::move(edges);
  for (int id = 0; id < edge_count(); ++id) {
    incident_[edges_[id].u].push_back(id);
    incident_[edges_[id].v].push_back(id);
  }
  // Ids increase along the canonical order, so the lists are already sorted.
}

void MultiGraph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count_) throw ArgumentError("invalid vertex id " + std::to_string(v));
}

const Edge& MultiGraph::edge(int id) const {
  if (id < 0 || id >= edge_count()) throw ArgumentError("invalid edge id " + std::to_string(id));
  return edges_[id];
}

std::span<const int> MultiGraph::incident(int v) const {
  check_vertex(v);
  return incident_[v];
}

int MultiGraph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(incident_[v].size());
}

int MultiGraph::edge_rank(int v, int e) const {
  auto inc = incident(v);
  auto it = std::lower_bound(inc.begin(), inc.end(), e);
  if (it == inc.end() || *it != e) throw ArgumentError("edge not incident to vertex");
  return static_cast<int>(it - inc.begin());
}

int MultiGraph::other_end(int e, int v) const {
  const Edge& ed = edge(e);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw ArgumentError("edge not incident to vertex");
}

std::optional<int> MultiGraph::find_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  Edge key{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

int max_degree(const MultiGraph& g) {
  int d = 0;
  for (int v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
  return d;
}

bool shortlex_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

enum : char { kFree = 0, kInSet = 1, kSeen = 2 };

// Extension-set enumeration: every connected set is reached once because an
// edge popped from the extension list is never offered again in that subtree.
struct EdgeGrower {
  const MultiGraph& g;
  int max_edges;
  std::vector<char> label;
  std::vector<int> current;
  std::vector<EdgeSet>& out;

  void grow(std::vector<int> ext) {
    if (!current.empty()) {
      EdgeSet s = current;
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    if (static_cast<int>(current.size()) == max_edges) return;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      int e = ext[i];
      label[e] = kInSet;
      current.push_back(e);
      std::vector<int> child(ext.begin() + static_cast<long>(i) + 1, ext.end());
      std::size_t first_new = child.size();
      for (int w : {g.edge(e).u, g.edge(e).v}) {
        for (int f : g.incident(w)) {
          if (label[f] == kFree) {
            label[f] = kSeen;
            child.push_back(f);
          }
        }
      }
      std::vector<int> added(child.begin() + static_cast<long>(first_new), child.end());
      grow(std::move(child));
      for (int f : added) label[f] = kFree;
      current.pop_back();
      label[e] = kSeen;
    }
  }
};

}  // namespace

std::vector<EdgeSet> connected_edge_subgraphs(const MultiGraph& g, int v, int max_edges) {
  if (v < 0 || v >= g.vertex_count()) throw ArgumentError("invalid vertex id " + std::to_string(v));
  if (max_edges < 1) throw ArgumentError("size cap must be at least 1");
  std::vector<EdgeSet> out;
  EdgeGrower grower{g, max_edges, std::vector<char>(g.edge_count(), kFree), {}, out};
  std::vector<int> ext(g.incident(v).begin(), g.incident(v).end());
  for (int e : ext) grower.label[e] = kSeen;
  grower.grow(ext);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<int> vertices_of(const MultiGraph& g, std::span<const int> edges) {
  std::vector<int> vs;
  vs.reserve(edges.size() * 2);
  for (int e : edges) {
    vs.push_back(g.edge(e).u);
    vs.push_back(g.edge(e).v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool is_connected_edge_set(const MultiGraph& g, std::span<const int> edges) {
  if (edges.empty()) throw ArgumentError("empty edge set");
  std::vector<int> vs = vertices_of(g, edges);
  std::vector<int> parent(vs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto local = [&](int x) {
    return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), x) - vs.begin());
  };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = static_cast<int>(vs.size());
  for (int e : edges) {
    int a = find(local(g.edge(e).u));
    int b = find(local(g.edge(e).v));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

namespace {

struct VertexGrower {
  const MultiGraph& g;
  int max_size;
  std::vector<char> label;
  std::vector<int> current;
  std::vector<std::vector<int>>& out;

  void offer_neighbours(int x, std::vector<int>& ext) {
    for (int e : g.incident(x)) {
      int w = g.other_end(e, x);
      if (label[w] == kFree) {
        label[w] = kSeen;
        ext.push_back(w);
      }
    }
  }

  void grow(std::vector<int> ext) {
    std::vector<int> s = current;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    if (static_cast<int>(current.size()) == max_size) return;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      int x = ext[i];
      label[x] = kInSet;
      current.push_back(x);
      std::vector<int> child(ext.begin() + static_cast<long>(i) + 1, ext.end());
      std::size_t first_new = child.size();
      offer_neighbours(x, child);
      std::vector<int> added(child.begin() + static_cast<long>(first_new), child.end());
      grow(std::move(child));
      for (int w : added) label[w] = kFree;
      current.pop_back();
      label[x] = kSeen;
    }
  }
};

}  // namespace

std::vector<std::vector<int>> connected_vertex_sets(const MultiGraph& g, int root, int max_size) {
  if (root < 0 || root >= g.vertex_count()) throw ArgumentError("invalid vertex id");
  std::vector<std::vector<int>> out;
  if (max_size < 1) return out;
  VertexGrower grower{g, max_size, std::vector<char>(g.vertex_count(), kFree), {root}, out};
  // Vertices below the root belong to other roots.
  for (int w = 0; w <= root; ++w) grower.label[w] = kSeen;
  grower.label[root] = kInSet;
  std::vector<int> ext;
  grower.offer_neighbours(root, ext);
  grower.grow(std::move(ext));
  return out;
}

std::vector<std::vector<int>> induced_components(const MultiGraph& g, std::span<const int> vertices) {
  std::vector<char> member(g.vertex_count(), 0);
  for (int v : vertices) member[v] = 1;
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int s : vertices) {
    if (member[s] != 1) continue;
    std::vector<int> comp;
    member[s] = 2;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int e : g.incident(x)) {
        int w = g.other_end(e, x);
        if (member[w] == 1) {
          member[w] = 2;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

MultiGraph path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return MultiGraph(n, es);
}

MultiGraph cycle_graph(int n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return MultiGraph(n, es);
}

MultiGraph complete_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return MultiGraph(n, es);
}

MultiGraph star_graph(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
  return MultiGraph(leaves + 1, es);
}

MultiGraph grid_graph(int rows, int cols) {
  std::vector<Edge> es;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) es.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) es.push_back({id(r, c), id(r + 1, c)});
    }
  return MultiGraph(rows * cols, es);
}

MultiGraph parse_graph(std::istream& in) {
  std::vector<long long> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long value = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        tokens.push_back(value);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + tok + "'");
      }
    }
  }
  if (tokens.size() < 2) throw ParseError("graph header 'n m' missing");
  long long n = tokens[0], m = tokens[1];
  if (n < 0 || m < 0) throw ParseError("negative graph size");
  if (static_cast<long long>(tokens.size()) != 2 + 2 * m)
    throw ParseError("expected " + std::to_string(m) + " edges, found " +
                     std::to_string((static_cast<long long>(tokens.size()) - 2) / 2) + " endpoint pairs");
  std::vector<Edge> es;
  for (long long i = 0; i < m; ++i)
    es.push_back({static_cast<int>(tokens[2 + 2 * i]), static_cast<int>(tokens[3 + 2 * i])});
  try {
    return MultiGraph(static_cast<int>(n), std::move(es));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

MultiGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string format_graph(const MultiGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace holant
