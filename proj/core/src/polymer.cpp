#include "holant/polymer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace holant {

ColouredPolymer make_polymer(const MultiGraph& g, std::vector<int> edges, std::vector<int> colours, int kappa) {
  if (edges.size() != colours.size()) throw ArgumentError("colouring length differs from support size");
  if (edges.empty()) throw ArgumentError("a polymer needs at least one edge");
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return edges[a] < edges[b]; });
  ColouredPolymer p;
  for (int i : order) {
    if (colours[i] < 1 || colours[i] > kappa) throw ArgumentError("polymer colours must lie in 1..kappa");
    p.edges.push_back(edges[i]);
    p.colours.push_back(colours[i]);
  }
  if (std::adjacent_find(p.edges.begin(), p.edges.end()) != p.edges.end())
    throw ArgumentError("repeated edge in polymer support");
  if (!is_connected_edge_set(g, p.edges)) throw ArgumentError("polymer support is not connected");
  p.vertices = vertices_of(g, p.edges);
  return p;
}

std::string to_string(const ColouredPolymer& p) {
  std::ostringstream out;
  out << "{edges:[";
  for (std::size_t i = 0; i < p.edges.size(); ++i) out << (i ? "," : "") << p.edges[i];
  out << "], colours:[";
  for (std::size_t i = 0; i < p.colours.size(); ++i) out << (i ? "," : "") << p.colours[i];
  out << "]}";
  return out.str();
}

bool incompatible(const ColouredPolymer& a, const ColouredPolymer& b) {
  auto i = a.vertices.begin();
  auto j = b.vertices.begin();
  while (i != a.vertices.end() && j != b.vertices.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

std::vector<EdgeSet> enumerate_supports(const MultiGraph& g, int max_edges, std::optional<int> anchor) {
  if (max_edges < 1) throw ArgumentError("size cap must be at least 1");
  if (anchor) return connected_edge_subgraphs(g, *anchor, max_edges);
  std::vector<EdgeSet> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    for (auto& s : connected_edge_subgraphs(g, v, max_edges)) {
      // Keep each support only under its smallest vertex.
      int lowest = g.vertex_count();
      for (int e : s) lowest = std::min(lowest, g.edge(e).u);
      if (lowest == v) out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<ColouredPolymer> enumerate_polymers(const MultiGraph& g, int kappa, int max_edges,
                                                std::optional<int> anchor) {
  if (kappa < 1) throw ArgumentError("kappa must be at least 1");
  std::vector<ColouredPolymer> out;
  for (auto& support : enumerate_supports(g, max_edges, anchor)) {
    std::vector<int> verts = vertices_of(g, support);
    std::vector<int> colours(support.size(), 1);
    while (true) {
      out.push_back(ColouredPolymer{support, colours, verts});
      int pos = static_cast<int>(colours.size()) - 1;
      while (pos >= 0 && colours[pos] == kappa) colours[pos--] = 1;
      if (pos < 0) break;
      ++colours[pos];
    }
  }
  return out;
}

void require_fugacity(const FugacityVector& z, int kappa) {
  if (static_cast<int>(z.size()) != kappa + 1)
    throw InvalidFugacity("fugacity vector needs kappa+1 = " + std::to_string(kappa + 1) + " entries, got " +
                          std::to_string(z.size()));
  if (z[0] == Complex(0.0, 0.0)) throw InvalidFugacity("z_0 must be nonzero");
}

WeightEvaluator::WeightEvaluator(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z)
    : g_(g), pi_(pi) {
  pi.validate(g);
  pi.require_f0();
  require_fugacity(z, pi.kappa());
  ratio_.resize(z.size());
  for (std::size_t c = 0; c < z.size(); ++c) ratio_[c] = z[c] / z[0];
  inv_f0_.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) inv_f0_[v] = 1.0 / pi[v].ground();
}

Complex WeightEvaluator::weight(std::span<const int> edges, std::span<const int> colours,
                                std::span<const int> vertices) const {
  Complex w = 1.0;
  for (int c : colours) w *= ratio_[c];
  if (w == Complex(0.0, 0.0)) return w;
  std::size_t index_buf[64];
  std::vector<std::size_t> index_vec;
  std::size_t* index = index_buf;
  if (vertices.size() > 64) {
    index_vec.assign(vertices.size(), 0);
    index = index_vec.data();
  } else {
    std::fill(index_buf, index_buf + vertices.size(), 0);
  }
  auto local = [&](int x) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), x) - vertices.begin());
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = g_.edge(edges[i]);
    for (int x : {e.u, e.v}) {
      index[local(x)] += static_cast<std::size_t>(colours[i]) * pi_[x].stride(g_.edge_rank(x, edges[i]));
    }
  }
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    int x = vertices[k];
    w *= pi_[x].at(index[k]) * inv_f0_[x];
    if (w == Complex(0.0, 0.0)) break;
  }
  return w;
}

Complex WeightEvaluator::weight(const ColouredPolymer& p) const { return weight(p.edges, p.colours, p.vertices); }

Complex polymer_weight(const MultiGraph& g, const ColouredPolymer& p, const SignatureAssignment& pi,
                       const FugacityVector& z) {
  return WeightEvaluator(g, pi, z).weight(p);
}

Assignment family_to_assignment(const PolymerFamily& family, const MultiGraph& g) {
  Assignment sigma(g.edge_count(), 0);
  std::vector<char> used(g.vertex_count(), 0);
  for (const auto& p : family) {
    for (int v : p.vertices) {
      if (v < 0 || v >= g.vertex_count()) throw ArgumentError("polymer vertex outside the graph");
      if (used[v]) throw ArgumentError("family contains incompatible polymers");
      used[v] = 1;
    }
    for (std::size_t i = 0; i < p.edges.size(); ++i) sigma[p.edges[i]] = p.colours[i];
  }
  return sigma;
}

PolymerFamily assignment_to_family(const Assignment& sigma, const MultiGraph& g) {
  if (static_cast<int>(sigma.size()) != g.edge_count()) throw ArgumentError("assignment length differs from |E|");
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < g.edge_count(); ++e) {
    if (sigma[e] < 0) throw ArgumentError("negative colour in assignment");
    if (sigma[e] == 0) continue;
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) parent[a] = b;
  }
  std::map<int, ColouredPolymer> by_root;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (sigma[e] == 0) continue;
    auto& p = by_root[find(g.edge(e).u)];
    p.edges.push_back(e);
    p.colours.push_back(sigma[e]);
  }
  PolymerFamily family;
  for (auto& [root, p] : by_root) {
    p.vertices = vertices_of(g, p.edges);
    family.push_back(std::move(p));
  }
  std::sort(family.begin(), family.end());
  return family;
}

Complex ground_prefactor(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z) {
  pi.validate(g);
  require_fugacity(z, pi.kappa());
  Complex p = ipow(z[0], g.edge_count());
  for (int v = 0; v < g.vertex_count(); ++v) p *= pi[v].ground();
  return p;
}

Complex holant_from_polymer_z(Complex polymer_z, const MultiGraph& g, const SignatureAssignment& pi,
                              const FugacityVector& z) {
  pi.require_f0();
  return polymer_z * ground_prefactor(g, pi, z);
}

namespace {

// Rebuild every distinct signature through a colour map new -> old.
CompactedInstance remap(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                        const std::vector<int>& colour_map) {
  int new_kappa = static_cast<int>(colour_map.size()) - 1;
  std::map<const Signature*, std::shared_ptr<const Signature>> cache;
  std::vector<std::shared_ptr<const Signature>> per_vertex(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Signature* f = &pi[v];
    auto& slot = cache[f];
    if (!slot) {
      int d = f->arity();
      std::size_t size = table_size(d, std::max(new_kappa, 0));
      std::vector<Complex> t(size);
      std::vector<int> y(d, 0);
      for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t old_index = 0;
        for (int p = 0; p < d; ++p) old_index += static_cast<std::size_t>(colour_map[y[p]]) * f->stride(p);
        t[idx] = f->at(old_index);
        for (int p = d - 1; p >= 0; --p) {
          if (++y[p] <= new_kappa) break;
          y[p] = 0;
        }
      }
      int kappa_for_sig = d == 0 ? std::max(new_kappa, 1) : new_kappa;
      slot = std::make_shared<const Signature>(f->name(), d, kappa_for_sig, std::move(t));
    }
    per_vertex[v] = slot;
  }
  CompactedInstance out;
  out.colour_map = colour_map;
  for (int c : colour_map) out.z.push_back(z[c]);
  out.pi = SignatureAssignment(std::max(new_kappa, 1), std::move(per_vertex));
  return out;
}

}  // namespace

CompactedInstance compact_domain(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z) {
  pi.validate(g);
  require_fugacity(z, pi.kappa());
  std::vector<int> keep{0};
  for (int c = 1; c <= pi.kappa(); ++c)
    if (z[c] != Complex(0.0, 0.0)) keep.push_back(c);
  if (static_cast<int>(keep.size()) == pi.kappa() + 1) return CompactedInstance{pi, z, keep};
  if (keep.size() == 1) {
    // Nothing but the ground colour carries weight; callers short-circuit
    // this case, so the instance is returned unchanged.
    std::vector<int> identity(pi.kappa() + 1);
    std::iota(identity.begin(), identity.end(), 0);
    return CompactedInstance{pi, z, identity};
  }
  return remap(g, pi, z, keep);
}

CompactedInstance relabel_ground(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                                 int ground) {
  pi.validate(g);
  if (static_cast<int>(z.size()) != pi.kappa() + 1) throw InvalidFugacity("fugacity vector has the wrong length");
  if (ground < 0 || ground > pi.kappa()) throw ArgumentError("ground colour outside the domain");
  std::vector<int> perm(pi.kappa() + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[ground]);
  return remap(g, pi, z, perm);
}

}  // namespace holant
