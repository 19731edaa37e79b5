#include "holant/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "holant/linear_system.hpp"

namespace holant {

ExactResult brute_holant(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                         bool with_table) {
  pi.validate(g);
  const int kappa = pi.kappa();
  if (static_cast<int>(z.size()) != kappa + 1) throw InvalidFugacity("fugacity vector has the wrong length");
  const int m = g.edge_count();
  std::uint64_t total = 1;
  for (int e = 0; e < m; ++e) {
    total *= static_cast<std::uint64_t>(kappa + 1);
    if (total > kMaxBruteAssignments)
      throw GateExceeded("brute force needs (kappa+1)^|E| <= 1e8 assignments");
  }
  // Powers z_c^k for k <= |E|.
  std::vector<std::vector<Complex>> zpow(kappa + 1, std::vector<Complex>(m + 1, 1.0));
  for (int c = 0; c <= kappa; ++c)
    for (int k = 1; k <= m; ++k) zpow[c][k] = zpow[c][k - 1] * z[c];
  std::vector<std::size_t> stride_u(m), stride_v(m);
  for (int e = 0; e < m; ++e) {
    stride_u[e] = pi[g.edge(e).u].stride(g.edge_rank(g.edge(e).u, e));
    stride_v[e] = pi[g.edge(e).v].stride(g.edge_rank(g.edge(e).v, e));
  }
  Assignment sigma(m, 0);
  std::vector<std::size_t> index(g.vertex_count(), 0);
  std::vector<int> counts(kappa + 1, 0);
  counts[0] = m;
  ExactResult res;
  res.value = 0.0;
  for (std::uint64_t it = 0; it < total; ++it) {
    Complex w = 1.0;
    for (int c = 0; c <= kappa; ++c) w *= zpow[c][counts[c]];
    for (int v = 0; v < g.vertex_count() && w != Complex(0.0, 0.0); ++v) w *= pi[v].at(index[v]);
    res.value += w;
    if (with_table) res.table.emplace_back(sigma, w);
    // Odometer: the last edge moves fastest.
    for (int e = m - 1; e >= 0; --e) {
      int old = sigma[e];
      int next = old == kappa ? 0 : old + 1;
      sigma[e] = next;
      --counts[old];
      ++counts[next];
      long long diff = static_cast<long long>(next) - old;
      index[g.edge(e).u] = static_cast<std::size_t>(static_cast<long long>(index[g.edge(e).u]) +
                                                    diff * static_cast<long long>(stride_u[e]));
      index[g.edge(e).v] = static_cast<std::size_t>(static_cast<long long>(index[g.edge(e).v]) +
                                                    diff * static_cast<long long>(stride_v[e]));
      if (next != 0) break;
    }
  }
  res.count = total;
  return res;
}

namespace {

// Branch on the lowest undecided footprint id: it is either left uncovered
// or covered by exactly one polymer that fits in the free ids.
struct FamilyWalker {
  const PolymerSystem& sys;
  std::vector<std::vector<int>> touching;
  std::vector<char> taken;
  std::uint64_t families = 0;

  Complex walk(int from) {
    int v = from;
    while (v < sys.universe && (taken[v] || touching[v].empty())) ++v;
    if (v == sys.universe) {
      if (++families > kMaxBruteFamilies)
        throw GateExceeded("brute polymer sum exceeds 1e7 compatible families");
      return 1.0;
    }
    taken[v] = 1;
    Complex total = walk(v + 1);
    for (int i : touching[v]) {
      const auto& fp = sys.footprints[i];
      bool fits = std::none_of(fp.begin(), fp.end(), [&](int x) { return x != v && taken[x]; });
      if (!fits) continue;
      for (int x : fp) taken[x] = 1;
      total += sys.weights[i] * walk(v + 1);
      for (int x : fp)
        if (x != v) taken[x] = 0;
    }
    taken[v] = 0;
    return total;
  }
};

}  // namespace

Complex brute_polymer_z(const PolymerSystem& system) {
  FamilyWalker w{system, system.touching(), std::vector<char>(system.universe, 0)};
  return w.walk(0);
}

void require_nonnegative(const SignatureAssignment& pi, const FugacityVector& z) {
  for (const Signature* f : pi.distinct())
    for (Complex x : f->table())
      if (x.imag() != 0.0 || x.real() < 0.0)
        throw UnsupportedWeights("signature '" + f->name() + "' has a complex or negative entry");
  for (Complex x : z)
    if (x.imag() != 0.0 || x.real() < 0.0) throw UnsupportedWeights("fugacities must be non-negative reals");
}

std::map<Assignment, double> exact_gibbs(const MultiGraph& g, const SignatureAssignment& pi,
                                         const FugacityVector& z) {
  require_nonnegative(pi, z);
  ExactResult res = brute_holant(g, pi, z, true);
  double total = res.value.real();
  if (!(total > 0.0)) throw DegenerateDistribution("partition function is zero");
  std::map<Assignment, double> out;
  for (auto& [sigma, w] : res.table)
    if (w.real() > 0.0) out.emplace(sigma, w.real() / total);
  return out;
}

Complex brute_weighted_count(const LinearSystem& sys) {
  sys.validate();
  std::uint64_t points = 1;
  for (int cap : sys.caps) {
    points *= static_cast<std::uint64_t>(cap + 1);
    if (points > kMaxBruteAssignments) throw GateExceeded("box brute force exceeds 1e8 points");
  }
  std::vector<int> x(sys.cols, 0);
  Complex total = 0.0;
  for (std::uint64_t it = 0; it < points; ++it) {
    bool ok = true;
    for (int i = 0; i < sys.rows && ok; ++i) {
      long long s = 0;
      for (int j = 0; j < sys.cols; ++j) s += sys.a[i][j] * x[j];
      ok = s == 0;
    }
    if (ok) {
      Complex w = 1.0;
      for (int j = 0; j < sys.cols; ++j) w *= ipow(sys.weights[j], x[j]);
      total += w;
    }
    for (int j = sys.cols - 1; j >= 0; --j) {
      if (++x[j] <= sys.caps[j]) break;
      x[j] = 0;
    }
  }
  return total;
}

}  // namespace holant
