#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holant/bounds.hpp"
#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/polymer_system.hpp"

namespace holant {

inline constexpr std::uint64_t kMaxPointsPerSupport = 1'000'000;

// Ax = 0 with 0 <= x_j <= caps[j], weight prod w_j^{x_j}.
struct LinearSystem {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<long long>> a;
  std::vector<int> caps;
  std::vector<Complex> weights;

  void validate() const;
};

struct Hypergraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> edges;  // sorted vertex lists

  Hypergraph() = default;
  Hypergraph(int vertex_count, std::vector<std::vector<int>> edges);
  // Hyperedges containing each vertex, ascending.
  std::vector<std::vector<int>> incidence() const;
  int max_degree() const;
  int max_edge_size() const;
  std::optional<int> uniformity() const;
};

struct HypergraphInfo {
  Hypergraph graph;  // vertex i in edge j iff a_ij != 0
  int r = 0;         // max nonzeros per row
  int c = 0;         // max nonzeros per column
  std::vector<int> zero_columns;
};

HypergraphInfo build_hypergraph(const std::vector<std::vector<long long>>& a);

struct VectorPolymer {
  std::vector<int> x;          // full length cols
  std::vector<int> support;    // sorted columns with x_j > 0
  std::vector<int> footprint;  // rows touched by the support
  Complex weight;
};

// Connected nonzero solutions with |supp| <= max_support. All-zero columns
// are skipped (they are factored out by weighted_count).
std::vector<VectorPolymer> enumerate_vector_polymers(const LinearSystem& sys, int max_support);

PolymerSystem vector_polymer_system(const LinearSystem& sys, const std::vector<VectorPolymer>& polymers);

// w(X) as the polymer partition function times the free-column factor.
Complex weighted_count(const LinearSystem& sys);

RegionReport linsys_region(const LinearSystem& sys);

// Sum of the polymers of a family back into a solution vector.
std::vector<int> family_to_solution(const LinearSystem& sys, const std::vector<const VectorPolymer*>& family);

// Hyperedge subsets covering every vertex exactly once, each sorted.
std::vector<std::vector<int>> perfect_matchings(const Hypergraph& h);

enum class PmMode { exact, polymer };

void require_perfect_matching(const Hypergraph& h, const std::vector<int>& matching);

// sum over perfect matchings M' of z^{|M xor M'|}.
Complex pm_polynomial_hypergraph(const Hypergraph& h, const std::vector<int>& matching, Complex z,
                                 PmMode mode = PmMode::exact);
RegionReport pm_region_hypergraph(const Hypergraph& h);

// Connected hyperedge sets where every touched vertex has exactly one edge
// from M and one edge outside M. Sorted edge lists.
std::vector<std::vector<int>> alternating_structures(const Hypergraph& h, const std::vector<int>& matching);

Hypergraph graph_as_hypergraph(const MultiGraph& g);
void require_perfect_matching(const MultiGraph& g, const std::vector<int>& matching);
Complex pm_polynomial_graph(const MultiGraph& g, const std::vector<int>& matching, Complex z,
                            PmMode mode = PmMode::exact);
RegionReport pm_region_graph(const MultiGraph& g);

// Alternating cycles w.r.t. M, as sorted edge lists.
std::vector<std::vector<int>> alternating_cycles(const MultiGraph& g, const std::vector<int>& matching);

// Matrix text format: "n m", n rows, "caps: ...", "weights: re im ...".
LinearSystem parse_linear_system(std::istream& in);

}  // namespace holant
