#include "holant/linear_system.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "holant/oracle.hpp"

namespace holant {

void LinearSystem::validate() const {
  if (rows < 0 || cols < 1) throw ArgumentError("linear system needs at least one column");
  if (static_cast<int>(a.size()) != rows) throw ArgumentError("matrix row count mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != cols) throw ArgumentError("matrix column count mismatch");
  if (static_cast<int>(caps.size()) != cols) throw ArgumentError("one cap per column required");
  if (static_cast<int>(weights.size()) != cols) throw ArgumentError("one weight per column required");
  for (int c : caps)
    if (c < 1) throw ArgumentError("caps must be at least 1");
}

Hypergraph::Hypergraph(int vertex_count_, std::vector<std::vector<int>> edges_)
    : vertex_count(vertex_count_), edges(std::move(edges_)) {
  if (vertex_count < 0) throw ArgumentError("negative vertex count");
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw ArgumentError("repeated vertex in hyperedge");
    for (int v : e)
      if (v < 0 || v >= vertex_count) throw ArgumentError("hyperedge vertex out of range");
  }
}

std::vector<std::vector<int>> Hypergraph::incidence() const {
  std::vector<std::vector<int>> out(vertex_count);
  for (std::size_t j = 0; j < edges.size(); ++j)
    for (int v : edges[j]) out[v].push_back(static_cast<int>(j));
  return out;
}

int Hypergraph::max_degree() const {
  int d = 0;
  for (auto& inc : incidence()) d = std::max(d, static_cast<int>(inc.size()));
  return d;
}

int Hypergraph::max_edge_size() const {
  int k = 0;
  for (auto& e : edges) k = std::max(k, static_cast<int>(e.size()));
  return k;
}

std::optional<int> Hypergraph::uniformity() const {
  if (edges.empty()) return std::nullopt;
  int k = static_cast<int>(edges.front().size());
  for (auto& e : edges)
    if (static_cast<int>(e.size()) != k) return std::nullopt;
  return k;
}

HypergraphInfo build_hypergraph(const std::vector<std::vector<long long>>& a) {
  if (a.empty() || a.front().empty()) throw ArgumentError("matrix must be nonempty");
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(a.front().size());
  std::vector<std::vector<int>> edges(m);
  HypergraphInfo info;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != m) throw ArgumentError("ragged matrix");
    int row_nonzero = 0;
    for (int j = 0; j < m; ++j)
      if (a[i][j] != 0) {
        edges[j].push_back(i);
        ++row_nonzero;
      }
    info.r = std::max(info.r, row_nonzero);
  }
  for (int j = 0; j < m; ++j) {
    info.c = std::max(info.c, static_cast<int>(edges[j].size()));
    if (edges[j].empty()) info.zero_columns.push_back(j);
  }
  info.graph = Hypergraph(n, std::move(edges));
  return info;
}

std::vector<VectorPolymer> enumerate_vector_polymers(const LinearSystem& sys, int max_support) {
  sys.validate();
  if (max_support < 1) throw ArgumentError("support cap must be at least 1");
  HypergraphInfo info = build_hypergraph(sys.a);
  // Columns are adjacent when they share a row; connected supports in H_A are
  // connected vertex sets of this column graph.
  std::vector<Edge> col_edges;
  for (int j = 0; j < sys.cols; ++j)
    for (int k = j + 1; k < sys.cols; ++k) {
      const auto& ej = info.graph.edges[j];
      const auto& ek = info.graph.edges[k];
      std::vector<int> common;
      std::set_intersection(ej.begin(), ej.end(), ek.begin(), ek.end(), std::back_inserter(common));
      if (!common.empty()) col_edges.push_back({j, k});
    }
  MultiGraph columns(sys.cols, col_edges);
  std::vector<std::vector<int>> supports;
  for (int j = 0; j < sys.cols; ++j) {
    if (info.graph.edges[j].empty()) continue;
    for (auto& s : connected_vertex_sets(columns, j, max_support)) supports.push_back(std::move(s));
  }
  std::sort(supports.begin(), supports.end(), shortlex_less);
  std::vector<VectorPolymer> out;
  for (const auto& s : supports) {
    std::uint64_t points = 1;
    for (int j : s) {
      points *= static_cast<std::uint64_t>(sys.caps[j]);
      if (points > kMaxPointsPerSupport)
        throw GateExceeded("support with more than 1e6 integer points in vector-polymer enumeration");
    }
    std::vector<int> footprint;
    for (int j : s) footprint.insert(footprint.end(), info.graph.edges[j].begin(), info.graph.edges[j].end());
    std::sort(footprint.begin(), footprint.end());
    footprint.erase(std::unique(footprint.begin(), footprint.end()), footprint.end());
    std::vector<int> local(s.size(), 1);
    while (true) {
      bool solves = true;
      for (int i : footprint) {
        long long acc = 0;
        for (std::size_t t = 0; t < s.size(); ++t) acc += sys.a[i][s[t]] * local[t];
        if (acc != 0) {
          solves = false;
          break;
        }
      }
      if (solves) {
        VectorPolymer p;
        p.x.assign(sys.cols, 0);
        p.weight = 1.0;
        for (std::size_t t = 0; t < s.size(); ++t) {
          p.x[s[t]] = local[t];
          p.weight *= ipow(sys.weights[s[t]], local[t]);
        }
        p.support = s;
        p.footprint = footprint;
        out.push_back(std::move(p));
      }
      int pos = static_cast<int>(s.size()) - 1;
      while (pos >= 0 && local[pos] == sys.caps[s[pos]]) local[pos--] = 1;
      if (pos < 0) break;
      ++local[pos];
    }
  }
  return out;
}

PolymerSystem vector_polymer_system(const LinearSystem& sys, const std::vector<VectorPolymer>& polymers) {
  PolymerSystem out;
  out.universe = sys.rows;
  for (const auto& p : polymers) out.add(p.footprint, p.weight, static_cast<int>(p.support.size()));
  return out;
}

Complex weighted_count(const LinearSystem& sys) {
  sys.validate();
  HypergraphInfo info = build_hypergraph(sys.a);
  Complex free_factor = 1.0;
  for (int j : info.zero_columns) {
    Complex s = 0.0;
    for (int t = 0; t <= sys.caps[j]; ++t) s += ipow(sys.weights[j], t);
    free_factor *= s;
  }
  auto polymers = enumerate_vector_polymers(sys, sys.cols);
  return free_factor * brute_polymer_z(vector_polymer_system(sys, polymers));
}

RegionReport linsys_region(const LinearSystem& sys) {
  sys.validate();
  HypergraphInfo info = build_hypergraph(sys.a);
  RegionParams p;
  p.kappa = *std::max_element(sys.caps.begin(), sys.caps.end());
  p.r = info.r;
  p.c = info.c;
  return region_bounds(Family::linsys, p);
}

std::vector<int> family_to_solution(const LinearSystem& sys, const std::vector<const VectorPolymer*>& family) {
  std::vector<int> x(sys.cols, 0);
  for (const VectorPolymer* p : family)
    for (int j = 0; j < sys.cols; ++j) x[j] += p->x[j];
  return x;
}

std::vector<std::vector<int>> perfect_matchings(const Hypergraph& h) {
  auto inc = h.incidence();
  std::vector<char> covered(h.vertex_count, 0);
  std::vector<int> chosen;
  std::vector<std::vector<int>> out;
  auto rec = [&](auto&& self, int from) -> void {
    int v = from;
    while (v < h.vertex_count && covered[v]) ++v;
    if (v == h.vertex_count) {
      std::vector<int> m = chosen;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    for (int e : inc[v]) {
      const auto& vs = h.edges[e];
      if (std::any_of(vs.begin(), vs.end(), [&](int x) { return covered[x]; })) continue;
      for (int x : vs) covered[x] = 1;
      chosen.push_back(e);
      self(self, v + 1);
      chosen.pop_back();
      for (int x : vs) covered[x] = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

void require_perfect_matching(const Hypergraph& h, const std::vector<int>& matching) {
  std::vector<int> hits(h.vertex_count, 0);
  std::vector<int> sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("matching lists an edge twice");
  for (int e : matching) {
    if (e < 0 || e >= static_cast<int>(h.edges.size())) throw ArgumentError("matching edge id out of range");
    if (h.edges[e].empty()) throw ArgumentError("matching uses an empty hyperedge");
    for (int v : h.edges[e]) ++hits[v];
  }
  for (int v = 0; v < h.vertex_count; ++v)
    if (hits[v] != 1)
      throw ArgumentError("not a perfect matching: vertex " + std::to_string(v) + " covered " +
                          std::to_string(hits[v]) + " times");
}

std::vector<std::vector<int>> alternating_structures(const Hypergraph& h, const std::vector<int>& matching) {
  require_perfect_matching(h, matching);
  auto inc = h.incidence();
  std::vector<int> m_edge(h.vertex_count, -1);
  std::vector<char> in_m(h.edges.size(), 0);
  for (int e : matching) {
    in_m[e] = 1;
    for (int v : h.edges[e]) m_edge[v] = e;
  }
  std::vector<char> has_m(h.vertex_count, 0), has_other(h.vertex_count, 0), in_set(h.edges.size(), 0);
  std::vector<int> chosen;
  std::vector<std::vector<int>> out;
  int root = 0;
  // Resolve the lowest deficient vertex: its matching edge is forced, its
  // other edge is a branching choice. Every vertex stays >= root.
  auto rec = [&](auto&& self) -> void {
    int deficient = -1;
    for (int e : chosen)
      for (int v : h.edges[e])
        if ((!has_m[v] || !has_other[v]) && (deficient < 0 || v < deficient)) deficient = v;
    if (deficient < 0) {
      std::vector<int> s = chosen;
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
      return;
    }
    int v = deficient;
    std::vector<int> options;
    if (!has_m[v]) {
      options.push_back(m_edge[v]);
    } else {
      for (int e : inc[v])
        if (!in_m[e]) options.push_back(e);
    }
    for (int e : options) {
      if (in_set[e]) continue;
      const auto& vs = h.edges[e];
      bool ok = std::all_of(vs.begin(), vs.end(), [&](int x) { return x >= root && !(in_m[e] ? has_m[x] : has_other[x]); });
      if (!ok) continue;
      in_set[e] = 1;
      chosen.push_back(e);
      for (int x : vs) (in_m[e] ? has_m[x] : has_other[x]) = 1;
      self(self);
      for (int x : vs) (in_m[e] ? has_m[x] : has_other[x]) = 0;
      chosen.pop_back();
      in_set[e] = 0;
    }
  };
  for (root = 0; root < h.vertex_count; ++root) {
    int e = m_edge[root];
    if (std::any_of(h.edges[e].begin(), h.edges[e].end(), [&](int x) { return x < root; })) continue;
    in_set[e] = 1;
    chosen.push_back(e);
    for (int x : h.edges[e]) has_m[x] = 1;
    // The root's own non-matching edge is the first branching choice.
    rec(rec);
    for (int x : h.edges[e]) has_m[x] = 0;
    chosen.pop_back();
    in_set[e] = 0;
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Complex pm_exact(const Hypergraph& h, const std::vector<int>& matching, Complex z) {
  std::vector<int> m = matching;
  std::sort(m.begin(), m.end());
  Complex total = 0.0;
  for (auto& other : perfect_matchings(h)) {
    std::vector<int> diff;
    std::set_symmetric_difference(m.begin(), m.end(), other.begin(), other.end(), std::back_inserter(diff));
    total += ipow(z, static_cast<long long>(diff.size()));
  }
  return total;
}

Complex pm_polymer(const Hypergraph& h, const std::vector<int>& matching, Complex z) {
  PolymerSystem sys;
  sys.universe = h.vertex_count;
  for (auto& s : alternating_structures(h, matching)) {
    std::vector<int> fp;
    for (int e : s) fp.insert(fp.end(), h.edges[e].begin(), h.edges[e].end());
    std::sort(fp.begin(), fp.end());
    fp.erase(std::unique(fp.begin(), fp.end()), fp.end());
    sys.add(std::move(fp), ipow(z, static_cast<long long>(s.size())), static_cast<int>(s.size()));
  }
  return brute_polymer_z(sys);
}

}  // namespace

Complex pm_polynomial_hypergraph(const Hypergraph& h, const std::vector<int>& matching, Complex z, PmMode mode) {
  require_perfect_matching(h, matching);
  return mode == PmMode::exact ? pm_exact(h, matching, z) : pm_polymer(h, matching, z);
}

RegionReport pm_region_hypergraph(const Hypergraph& h) {
  auto k = h.uniformity();
  if (!k) throw ArgumentError("the hypergraph bound needs a k-uniform hypergraph");
  RegionParams p;
  p.delta = h.max_degree();
  p.k = *k;
  return region_bounds(Family::hyper_pm, p);
}

Hypergraph graph_as_hypergraph(const MultiGraph& g) {
  std::vector<std::vector<int>> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Hypergraph(g.vertex_count(), std::move(edges));
}

void require_perfect_matching(const MultiGraph& g, const std::vector<int>& matching) {
  require_perfect_matching(graph_as_hypergraph(g), matching);
}

Complex pm_polynomial_graph(const MultiGraph& g, const std::vector<int>& matching, Complex z, PmMode mode) {
  return pm_polynomial_hypergraph(graph_as_hypergraph(g), matching, z, mode);
}

RegionReport pm_region_graph(const MultiGraph& g) {
  RegionParams p;
  p.delta = max_degree(g);
  return region_bounds(Family::graph_pm, p);
}

std::vector<std::vector<int>> alternating_cycles(const MultiGraph& g, const std::vector<int>& matching) {
  // In a graph every vertex of a structure has degree two, so the connected
  // structures are exactly the alternating cycles.
  return alternating_structures(graph_as_hypergraph(g), matching);
}

LinearSystem parse_linear_system(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty matrix file");
  LinearSystem sys;
  auto ints = [](const std::string& text) {
    std::istringstream ls(text);
    std::vector<long long> out;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("expected an integer, got '" + tok + "'");
      out.push_back(v);
    }
    return out;
  };
  auto header = ints(lines[0]);
  if (header.size() != 2 || header[0] < 0 || header[1] < 1) throw ParseError("matrix header must be 'n m'");
  sys.rows = static_cast<int>(header[0]);
  sys.cols = static_cast<int>(header[1]);
  if (static_cast<int>(lines.size()) != sys.rows + 3) throw ParseError("expected n matrix rows, a caps line and a weights line");
  for (int i = 0; i < sys.rows; ++i) {
    auto row = ints(lines[1 + i]);
    if (static_cast<int>(row.size()) != sys.cols) throw ParseError("matrix row " + std::to_string(i) + " has the wrong length");
    sys.a.push_back(row);
  }
  auto tagged = [&](const std::string& text, const std::string& tag) {
    auto pos = text.find(tag);
    if (pos == std::string::npos) throw ParseError("missing '" + tag + "' line");
    return text.substr(pos + tag.size());
  };
  for (long long c : ints(tagged(lines[1 + sys.rows], "caps:"))) sys.caps.push_back(static_cast<int>(c));
  std::istringstream ws(tagged(lines[2 + sys.rows], "weights:"));
  std::vector<double> parts;
  std::string tok;
  while (ws >> tok) {
    try {
      parts.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("bad weight component '" + tok + "'");
    }
  }
  if (static_cast<int>(parts.size()) != 2 * sys.cols) throw ParseError("weights need 're im' per column");
  for (int j = 0; j < sys.cols; ++j) sys.weights.emplace_back(parts[2 * j], parts[2 * j + 1]);
  try {
    sys.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return sys;
}

}  // namespace holant
