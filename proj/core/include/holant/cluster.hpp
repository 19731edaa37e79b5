#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/polymer.hpp"
#include "holant/polymer_system.hpp"
#include "holant/signature.hpp"

namespace holant {

inline constexpr int kMaxUrsellNodes = 20;
inline constexpr int kMaxVertexSetSize = 24;
inline constexpr int kMaxTruncationOrder = 10'000;

// Sum over spanning connected edge subsets of (-1)^{#edges}. Throws
// ArgumentError if the graph is disconnected, GateExceeded above 20 nodes.
std::int64_t ursell(int nodes, std::span<const std::pair<int, int>> edges);

// Multiset of polymers with a connected incompatibility graph.
struct Cluster {
  std::vector<std::pair<int, int>> members;  // (polymer index, multiplicity), ascending index
  int total_size = 0;
  std::int64_t ursell = 0;

  int copies() const;
};

// Every cluster with total size <= m, each once, ordered by (total size, members).
std::vector<Cluster> enumerate_clusters(const PolymerSystem& system, int m);
std::vector<Cluster> enumerate_clusters(const std::vector<ColouredPolymer>& polymers, int m);

// Coefficients a_1..a_m of a power series (stored at index j-1).
struct TaylorSeries {
  std::vector<Complex> coefficients;

  int order() const { return static_cast<int>(coefficients.size()); }
  Complex operator[](int j) const { return coefficients.at(j - 1); }
  Complex evaluate(Complex x) const;
};

// log of 1 + b_1 x + b_2 x^2 + ..., truncated at order m. poly[0] must be 1.
TaylorSeries log_series(std::span<const Complex> poly, int m);

// a_j = sum over clusters of total size j of ursell * prod Phi^mult / prod mult!.
TaylorSeries cluster_series(const PolymerSystem& system, int m);

enum class CoefficientMethod {
  clusters,     // explicit cluster enumeration
  vertex_sets,  // the same sum grouped by the vertex set the cluster covers
};

// Taylor coefficients of log Z(C_kappa(G), Phi^x) in x, up to order m.
TaylorSeries log_z_coefficients(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, int m,
                                CoefficientMethod method = CoefficientMethod::vertex_sets);

// ceil((1 - ratio)^-1 ln(d / eps)), at least 1. Throws RegionViolation when ratio >= 1
// and GateExceeded above kMaxTruncationOrder (z very close to the boundary).
int truncation_order(double d, double eps, double ratio);

struct FptasOptions {
  bool force = false;          // run outside the region; no accuracy guarantee
  std::optional<int> order;    // override the truncation order
  CoefficientMethod method = CoefficientMethod::vertex_sets;
  Complex x = 1.0;             // evaluation point of the auxiliary variable
};

struct FptasResult {
  Complex value;
  Complex prefactor;
  int order = 0;
  double q = 0.0;
  double bound = 0.0;   // region bound or threshold used
  double r = 0.0;
  double r1 = 1.0;
  int delta = 0;
  int kappa = 0;        // after dropping zero-fugacity colours
  bool inside_region = true;
  TaylorSeries series;
};

FptasResult approximate_holant_polynomial(const MultiGraph& g, const SignatureAssignment& pi,
                                          const FugacityVector& z, double eps, const FptasOptions& options = {});

// All fugacities equal to 1; region from r(F).
FptasResult approximate_holant_problem(const MultiGraph& g, const SignatureAssignment& pi, double eps,
                                       const FptasOptions& options = {});

}  // namespace holant
