#include "holant/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "holant/bounds.hpp"

namespace holant {

namespace {

bool connected_masks(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int i = 0; i < n; ++i)
      if (frontier >> i & 1U) next |= adj[i];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0U : (1U << n) - 1U);
}

// Subset recursion: splitting any edge subset by the component of the lowest
// node gives g(S) = sum_{T contains low(S)} c(T) g(S \ T), where g(S) is the
// alternating sum over all edge subsets of S (1 iff S has no edges).
std::int64_t ursell_masks(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  const std::uint32_t full = (1U << n) - 1U;
  std::vector<char> indep(std::size_t{1} << n, 0);
  indep[0] = 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int low = std::countr_zero(s);
    std::uint32_t rest = s & (s - 1);
    indep[s] = indep[rest] && (adj[low] & rest) == 0;
  }
  std::vector<std::int64_t> c(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t low = s & (~s + 1U);
    std::uint32_t others = s ^ low;
    std::int64_t value = indep[s];
    // T = low | r for every proper choice r of the other nodes.
    for (std::uint32_t r = (others - 1) & others;; r = (r - 1) & others) {
      if (r == others) break;
      std::uint32_t t = low | r;
      if (indep[s ^ t]) value -= c[t];
      if (r == 0) break;
    }
    c[s] = value;
  }
  return c[full];
}

std::int64_t cached_ursell(const std::vector<std::uint32_t>& adj) {
  static std::mutex mu;
  static std::map<std::vector<std::uint32_t>, std::int64_t> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(adj);
    if (it != cache.end()) return it->second;
  }
  std::int64_t value = ursell_masks(adj);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < 200000) cache.emplace(adj, value);
  return value;
}

}  // namespace

std::int64_t ursell(int nodes, std::span<const std::pair<int, int>> edges) {
  if (nodes < 1) throw ArgumentError("ursell needs at least one node");
  if (nodes > kMaxUrsellNodes) throw GateExceeded("ursell evaluation is limited to 20 nodes");
  std::vector<std::uint32_t> adj(nodes, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) throw ArgumentError("invalid edge in ursell graph");
    adj[a] |= 1U << b;
    adj[b] |= 1U << a;
  }
  if (!connected_masks(adj)) throw ArgumentError("ursell graph must be connected");
  return cached_ursell(adj);
}

int Cluster::copies() const {
  int k = 0;
  for (auto& [idx, mult] : members) k += mult;
  return k;
}

namespace {

std::int64_t cluster_ursell(const PolymerSystem& sys, const std::vector<std::pair<int, int>>& members) {
  std::vector<int> nodes;
  for (auto& [idx, mult] : members)
    for (int t = 0; t < mult; ++t) nodes.push_back(idx);
  const int n = static_cast<int>(nodes.size());
  if (n > kMaxUrsellNodes) throw GateExceeded("cluster with more than 20 polymer copies");
  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (nodes[i] == nodes[j] || sys.incompatible(nodes[i], nodes[j])) {
        adj[i] |= 1U << j;
        adj[j] |= 1U << i;
      }
  return cached_ursell(adj);
}

}  // namespace

std::vector<Cluster> enumerate_clusters(const PolymerSystem& sys, int m) {
  if (m < 1) throw ArgumentError("cluster size cap must be at least 1");
  using Key = std::vector<std::pair<int, int>>;
  auto touching = sys.touching();
  // Conflict list of each polymer, itself included.
  std::vector<std::vector<int>> conflicts(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    std::set<int> s;
    for (int v : sys.footprints[i])
      for (int j : touching[v]) s.insert(j);
    conflicts[i].assign(s.begin(), s.end());
  }
  std::set<Key> all;
  std::set<Key> level;
  std::map<Key, int> size_of;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (sys.sizes[i] <= m) {
      Key k{{static_cast<int>(i), 1}};
      level.insert(k);
      size_of[k] = sys.sizes[i];
    }
  // A connected multiset minus one copy of a spanning-tree leaf stays
  // connected, so growing one copy at a time reaches every cluster.
  while (!level.empty()) {
    std::set<Key> next;
    for (const Key& key : level) {
      all.insert(key);
      int total = size_of[key];
      std::set<int> candidates;
      for (auto& [idx, mult] : key)
        for (int j : conflicts[idx]) candidates.insert(j);
      for (int j : candidates) {
        if (total + sys.sizes[j] > m) continue;
        Key grown = key;
        auto it = std::find_if(grown.begin(), grown.end(), [j](auto& p) { return p.first == j; });
        if (it != grown.end()) {
          ++it->second;
        } else {
          grown.insert(std::upper_bound(grown.begin(), grown.end(), std::make_pair(j, 0)), {j, 1});
        }
        if (next.insert(grown).second) size_of[grown] = total + sys.sizes[j];
      }
    }
    level = std::move(next);
  }
  std::vector<Cluster> out;
  out.reserve(all.size());
  for (const Key& key : all) out.push_back(Cluster{key, size_of[key], cluster_ursell(sys, key)});
  std::stable_sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.total_size != b.total_size) return a.total_size < b.total_size;
    return a.members < b.members;
  });
  return out;
}

std::vector<Cluster> enumerate_clusters(const std::vector<ColouredPolymer>& polymers, int m) {
  PolymerSystem sys;
  for (const auto& p : polymers)
    for (int v : p.vertices) sys.universe = std::max(sys.universe, v + 1);
  for (const auto& p : polymers) sys.add(p.vertices, 1.0, p.size());
  return enumerate_clusters(sys, m);
}

Complex TaylorSeries::evaluate(Complex x) const {
  Complex total = 0.0, power = 1.0;
  for (Complex a : coefficients) {
    power *= x;
    total += a * power;
  }
  return total;
}

TaylorSeries log_series(std::span<const Complex> poly, int m) {
  if (poly.empty() || poly[0] != Complex(1.0, 0.0)) throw ArgumentError("log series needs constant term 1");
  auto b = [&](int j) { return j < static_cast<int>(poly.size()) ? poly[j] : Complex(0.0); };
  TaylorSeries out;
  out.coefficients.assign(m, 0.0);
  for (int j = 1; j <= m; ++j) {
    Complex acc = static_cast<double>(j) * b(j);
    for (int k = 1; k < j; ++k) acc -= static_cast<double>(k) * out.coefficients[k - 1] * b(j - k);
    out.coefficients[j - 1] = acc / static_cast<double>(j);
  }
  return out;
}

TaylorSeries cluster_series(const PolymerSystem& system, int m) {
  PolymerSystem sys = system.nonzero();
  TaylorSeries out;
  out.coefficients.assign(m, 0.0);
  for (const Cluster& c : enumerate_clusters(sys, m)) {
    Complex w = static_cast<double>(c.ursell);
    for (auto& [idx, mult] : c.members) {
      w *= ipow(sys.weights[idx], mult);
      double fact = 1.0;
      for (int t = 2; t <= mult; ++t) fact *= t;
      w /= fact;
    }
    out.coefficients[c.total_size - 1] += w;
  }
  return out;
}

namespace {

// Truncated log of the polynomial Z_W(x) for connected vertex sets W of the
// induced subgraph, memoised.
class InducedLogs {
 public:
  InducedLogs(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, int m)
      : g_(g), pi_(pi), m_(m) {
    ratio_.resize(z.size());
    for (std::size_t c = 0; c < z.size(); ++c) ratio_[c] = z[c] / z[0];
    inv_f0_.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) inv_f0_[v] = 1.0 / pi[v].ground();
  }

  const std::vector<Complex>& component(const std::vector<int>& comp) {
    auto it = memo_.find(comp);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(comp, compute(comp)).first->second;
  }

  // acc += sign * log Z_{G[W]}, W given as a sorted vertex list.
  void add_induced(const std::vector<int>& w, double sign, std::vector<Complex>& acc) {
    for (auto& comp : induced_components(g_, w)) {
      if (comp.size() < 2) continue;
      const auto& l = component(comp);
      for (int j = 0; j < m_; ++j) acc[j] += sign * l[j];
    }
  }

 private:
  std::vector<Complex> compute(const std::vector<int>& comp) {
    std::vector<char> member(g_.vertex_count(), 0);
    for (int v : comp) member[v] = 1;
    std::vector<int> edges;
    for (int v : comp)
      for (int e : g_.incident(v))
        if (g_.edge(e).u == v && member[g_.edge(e).v]) edges.push_back(e);
    const int kappa = pi_.kappa();
    const int ne = static_cast<int>(edges.size());
    std::uint64_t total = 1;
    for (int i = 0; i < ne; ++i) {
      total *= static_cast<std::uint64_t>(kappa + 1);
      if (total > 100'000'000ULL)
        throw GateExceeded("induced subgraph with (kappa+1)^|E| above 1e8 in coefficient evaluation");
    }
    std::vector<int> local(g_.vertex_count(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    std::vector<std::size_t> su(ne), sv(ne);
    std::vector<int> lu(ne), lv(ne);
    for (int i = 0; i < ne; ++i) {
      const Edge& e = g_.edge(edges[i]);
      lu[i] = local[e.u];
      lv[i] = local[e.v];
      su[i] = pi_[e.u].stride(g_.edge_rank(e.u, edges[i]));
      sv[i] = pi_[e.v].stride(g_.edge_rank(e.v, edges[i]));
    }
    std::vector<std::size_t> index(comp.size(), 0);
    std::vector<int> sigma(ne, 0);
    std::vector<Complex> poly(m_ + 1, 0.0);
    int nonzero = 0;
    for (std::uint64_t it = 0; it < total; ++it) {
      if (nonzero <= m_) {
        Complex w = 1.0;
        for (int i = 0; i < ne; ++i)
          if (sigma[i]) w *= ratio_[sigma[i]];
        for (std::size_t k = 0; k < comp.size() && w != Complex(0.0, 0.0); ++k)
          w *= pi_[comp[k]].at(index[k]) * inv_f0_[comp[k]];
        poly[nonzero] += w;
      }
      for (int i = ne - 1; i >= 0; --i) {
        int old = sigma[i];
        int next = old == kappa ? 0 : old + 1;
        sigma[i] = next;
        nonzero += (next != 0) - (old != 0);
        long long diff = static_cast<long long>(next) - old;
        index[lu[i]] = static_cast<std::size_t>(static_cast<long long>(index[lu[i]]) + diff * static_cast<long long>(su[i]));
        index[lv[i]] = static_cast<std::size_t>(static_cast<long long>(index[lv[i]]) + diff * static_cast<long long>(sv[i]));
        if (next != 0) break;
      }
    }
    poly[0] = 1.0;  // the all-ground assignment, exactly
    return log_series(poly, m_).coefficients;
  }

  const MultiGraph& g_;
  const SignatureAssignment& pi_;
  int m_;
  std::vector<Complex> ratio_;
  std::vector<Complex> inv_f0_;
  std::map<std::vector<int>, std::vector<Complex>> memo_;
};

// Clusters of total size j cover at most j + 1 vertices, and the clusters
// covering exactly U sum to the Moebius inversion over W in U of log Z_{G[W]}.
TaylorSeries vertex_set_series(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, int m) {
  InducedLogs logs(g, pi, z, m);
  std::vector<Complex> acc(m, 0.0);
  std::vector<int> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  for (auto& comp : induced_components(g, all)) {
    if (comp.size() < 2) continue;
    if (static_cast<int>(comp.size()) <= m + 1) {
      // Every connected U inside the component is within reach; the
      // inversion telescopes to log Z of the component itself.
      const auto& l = logs.component(comp);
      for (int j = 0; j < m; ++j) acc[j] += l[j];
      continue;
    }
    for (int root : comp) {
      for (auto& u : connected_vertex_sets(g, root, m + 1)) {
        const int s = static_cast<int>(u.size());
        if (s < 2) continue;
        if (s > kMaxVertexSetSize) throw GateExceeded("vertex sets above 24 vertices in coefficient evaluation");
        std::vector<int> w;
        for (std::uint32_t mask = 1; mask < (1U << s); ++mask) {
          w.clear();
          for (int i = 0; i < s; ++i)
            if (mask >> i & 1U) w.push_back(u[i]);
          double sign = (s - std::popcount(mask)) % 2 == 0 ? 1.0 : -1.0;
          logs.add_induced(w, sign, acc);
        }
      }
    }
  }
  return TaylorSeries{acc};
}

}  // namespace

TaylorSeries log_z_coefficients(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, int m,
                                CoefficientMethod method) {
  if (m < 1) throw ArgumentError("truncation order must be at least 1");
  pi.validate(g);
  pi.require_f0();
  require_fugacity(z, pi.kappa());
  if (g.edge_count() == 0) return TaylorSeries{std::vector<Complex>(m, 0.0)};
  if (method == CoefficientMethod::clusters) {
    WeightEvaluator eval(g, pi, z);
    auto polymers = enumerate_polymers(g, pi.kappa(), m);
    return cluster_series(holant_polymer_system(g, polymers, eval), m);
  }
  return vertex_set_series(g, pi, z, m);
}

int truncation_order(double d, double eps, double ratio) {
  if (!(ratio < 1.0)) throw RegionViolation("ratio |x|/q must be below 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  if (!(d >= 1.0)) throw ArgumentError("degree must be at least 1");
  double m = std::ceil(std::log(d / eps) / (1.0 - std::max(ratio, 0.0)));
  if (m > kMaxTruncationOrder)
    throw GateExceeded("truncation order " + std::to_string(m) + " exceeds " + std::to_string(kMaxTruncationOrder));
  return std::max(1, static_cast<int>(m));
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
}

void finish(FptasResult& res, const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
            double eps, const FptasOptions& opt) {
  double ratio = std::abs(opt.x) / res.q;
  res.inside_region = ratio < 1.0;
  if (!res.inside_region && !opt.force)
    throw RegionViolation("outside the certified region: q = " + std::to_string(res.q) + " <= |x| = " +
                          std::to_string(std::abs(opt.x)));
  if (opt.order) {
    res.order = *opt.order;
  } else if (res.inside_region) {
    res.order = truncation_order(g.edge_count(), eps, ratio);
  } else {
    res.order = 4 * g.edge_count();
  }
  res.series = log_z_coefficients(g, pi, z, res.order, opt.method);
  res.value = res.prefactor * std::exp(res.series.evaluate(opt.x));
}

}  // namespace

FptasResult approximate_holant_polynomial(const MultiGraph& g, const SignatureAssignment& pi,
                                          const FugacityVector& z, double eps, const FptasOptions& options) {
  check_eps(eps);
  pi.validate(g);
  pi.require_f0();
  require_fugacity(z, pi.kappa());
  FptasResult res;
  res.prefactor = ground_prefactor(g, pi, z);
  res.delta = max_degree(g);
  res.q = std::numeric_limits<double>::infinity();
  bool only_ground = std::all_of(z.begin() + 1, z.end(), [](Complex c) { return c == Complex(0.0, 0.0); });
  if (g.edge_count() == 0 || only_ground) {
    res.value = res.prefactor;
    res.kappa = only_ground ? 0 : pi.kappa();
    return res;
  }
  CompactedInstance ci = compact_domain(g, pi, z);
  RatioStats stats = ci.pi.ratios();
  res.r = stats.r;
  res.r1 = stats.r1;
  res.kappa = ci.kappa();
  RegionReport rep = region_bounds(Family::holant_poly, {res.delta, res.kappa, res.r1});
  res.bound = rep.value();
  res.q = q_factor(rep, ci.z);
  finish(res, g, ci.pi, ci.z, eps, options);
  return res;
}

FptasResult approximate_holant_problem(const MultiGraph& g, const SignatureAssignment& pi, double eps,
                                       const FptasOptions& options) {
  check_eps(eps);
  pi.validate(g);
  pi.require_f0();
  FugacityVector z(pi.kappa() + 1, 1.0);
  FptasResult res;
  res.prefactor = ground_prefactor(g, pi, z);
  res.delta = max_degree(g);
  res.kappa = pi.kappa();
  RatioStats stats = pi.ratios();
  res.r = stats.r;
  res.r1 = stats.r1;
  res.q = std::numeric_limits<double>::infinity();
  if (g.edge_count() == 0 || stats.r == 0.0) {
    res.value = res.prefactor;
    return res;
  }
  RegionReport rep = region_bounds(Family::holant_problem, {res.delta, res.kappa, res.r1});
  res.bound = rep.value();
  res.q = q_factor(rep, stats.r);
  finish(res, g, pi, z, eps, options);
  return res;
}

}  // namespace holant
