#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/signature.hpp"

namespace holant {

// Connected edge set with colours in 1..kappa.
struct ColouredPolymer {
  std::vector<int> edges;     // sorted support
  std::vector<int> colours;   // aligned with edges
  std::vector<int> vertices;  // sorted V(gamma)

  int size() const { return static_cast<int>(edges.size()); }

  friend bool operator==(const ColouredPolymer& a, const ColouredPolymer& b) {
    return a.edges == b.edges && a.colours == b.colours;
  }
  // Shortlex on the support, then lexicographic on the colouring.
  friend bool operator<(const ColouredPolymer& a, const ColouredPolymer& b) {
    if (a.edges != b.edges) return shortlex_less(a.edges, b.edges);
    return a.colours < b.colours;
  }
};

using PolymerFamily = std::vector<ColouredPolymer>;

// Validates connectivity and colours; sorts edges with their colours.
ColouredPolymer make_polymer(const MultiGraph& g, std::vector<int> edges, std::vector<int> colours, int kappa);

std::string to_string(const ColouredPolymer& p);

// True iff the vertex sets meet; reflexive.
bool incompatible(const ColouredPolymer& a, const ColouredPolymer& b);

// Connected supports with at most max_edges edges, each once, shortlex order.
std::vector<EdgeSet> enumerate_supports(const MultiGraph& g, int max_edges, std::optional<int> anchor = std::nullopt);

// Every support crossed with all kappa^|support| colourings.
std::vector<ColouredPolymer> enumerate_polymers(const MultiGraph& g, int kappa, int max_edges,
                                                std::optional<int> anchor = std::nullopt);

// Throws InvalidFugacity unless z has kappa+1 entries and z_0 != 0.
void require_fugacity(const FugacityVector& z, int kappa);

// Phi_pi(gamma, z).
Complex polymer_weight(const MultiGraph& g, const ColouredPolymer& p, const SignatureAssignment& pi,
                       const FugacityVector& z);

Assignment family_to_assignment(const PolymerFamily& family, const MultiGraph& g);
PolymerFamily assignment_to_family(const Assignment& sigma, const MultiGraph& g);

// z_0^|E| * prod_v f_v(0).
Complex ground_prefactor(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z);
Complex holant_from_polymer_z(Complex polymer_z, const MultiGraph& g, const SignatureAssignment& pi,
                              const FugacityVector& z);

// Instance with colours whose fugacity is zero removed.
struct CompactedInstance {
  SignatureAssignment pi;
  FugacityVector z;
  std::vector<int> colour_map;  // new colour -> original colour; colour_map[0] = 0
  int kappa() const { return static_cast<int>(z.size()) - 1; }
};

CompactedInstance compact_domain(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z);

// Swap colour 0 with `ground` in every signature and in z. The Holant value is unchanged.
CompactedInstance relabel_ground(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                                 int ground);

// Per-vertex normalised tables f_v(x)/f_v(0) with tuple strides, for fast
// weight evaluation inside enumeration loops.
class WeightEvaluator {
 public:
  WeightEvaluator(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z);

  Complex weight(const ColouredPolymer& p) const;
  // Weight of the colouring `colours` (aligned with the sorted support).
  Complex weight(std::span<const int> edges, std::span<const int> colours, std::span<const int> vertices) const;
  Complex colour_ratio(int c) const { return ratio_[c]; }

 private:
  const MultiGraph& g_;
  const SignatureAssignment& pi_;
  std::vector<Complex> ratio_;   // z_c / z_0
  std::vector<Complex> inv_f0_;  // 1 / f_v(0)
};

}  // namespace holant
