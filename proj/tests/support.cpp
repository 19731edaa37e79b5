#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace holant::testkit {

MultiGraph random_graph(std::mt19937_64& rng, int max_edges, int max_deg) {
  std::uniform_int_distribution<int> nv(2, std::max(2, max_edges + 1));
  int n = nv(rng);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::uniform_int_distribution<int> ne(1, max_edges);
  int target = ne(rng);
  std::vector<int> deg(n, 0);
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) {
    if (static_cast<int>(edges.size()) == target) break;
    if (deg[u] == max_deg || deg[v] == max_deg) continue;
    ++deg[u];
    ++deg[v];
    edges.push_back({u, v});
  }
  return MultiGraph(n, edges);
}

Signature random_signature(std::mt19937_64& rng, int arity, int kappa, double r) {
  std::size_t size = table_size(arity, kappa);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> values(size);
  values[0] = 1.0;
  for (std::size_t i = 1; i < size; ++i)
    values[i] = std::polar(r * unit(rng), 2 * std::numbers::pi * unit(rng));
  if (size > 1) {
    std::uniform_int_distribution<std::size_t> pick(1, size - 1);
    values[pick(rng)] = std::polar(r, 2 * std::numbers::pi * unit(rng));
  }
  return Signature("random", arity, kappa, std::move(values));
}

SignatureAssignment random_assignment(std::mt19937_64& rng, const MultiGraph& g, int kappa, double r) {
  std::vector<std::shared_ptr<const Signature>> per_vertex;
  for (int v = 0; v < g.vertex_count(); ++v)
    per_vertex.push_back(std::make_shared<const Signature>(random_signature(rng, g.degree(v), kappa, r)));
  return SignatureAssignment(kappa, std::move(per_vertex));
}

FugacityVector random_fugacity(std::mt19937_64& rng, int kappa, double scale) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  FugacityVector z{1.0};
  for (int i = 1; i <= kappa; ++i) z.push_back(std::polar(scale, angle(rng)));
  return z;
}

LinearSystem random_linear_system(std::mt19937_64& rng, int max_rows, int max_cols, double max_weight) {
  std::uniform_int_distribution<int> nr(1, max_rows), nc(1, max_cols), entry(-1, 1), cap(1, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinearSystem sys;
  sys.rows = nr(rng);
  sys.cols = nc(rng);
  sys.a.assign(sys.rows, std::vector<long long>(sys.cols));
  for (auto& row : sys.a)
    for (auto& x : row) x = entry(rng);
  for (int j = 0; j < sys.cols; ++j) {
    sys.caps.push_back(cap(rng));
    sys.weights.push_back(std::polar(max_weight * unit(rng), 2 * std::numbers::pi * unit(rng)));
  }
  return sys;
}

namespace {

bool connected(int k, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int parts = k;
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts == 1;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> connected_labelled_graphs(int k) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) all.push_back({u, v});
  std::vector<std::vector<std::pair<int, int>>> out;
  for (std::uint64_t mask = 0; mask < (1ULL << all.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1) edges.push_back(all[i]);
    if (connected(k, edges)) out.push_back(std::move(edges));
  }
  return out;
}

long long ursell_by_subsets(int nodes, const std::vector<std::pair<int, int>>& edges) {
  long long total = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << edges.size()); ++mask) {
    std::vector<std::pair<int, int>> sub;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1) sub.push_back(edges[i]);
    if (connected(nodes, sub)) total += sub.size() % 2 ? -1 : 1;
  }
  return total;
}

double rel_error(std::complex<double> a, std::complex<double> b) { return std::abs(a / b - 1.0); }

double angle_error(std::complex<double> a, std::complex<double> b) { return std::abs(std::arg(a / b)); }

}  // namespace holant::testkit
