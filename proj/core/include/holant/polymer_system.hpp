#pragma once

#include <cstddef>
#include <vector>

#include "holant/common.hpp"
#include "holant/polymer.hpp"

namespace holant {

// Abstract polymer model: each polymer has a footprint (sorted ids in
// [0, universe)), a weight and a size. Two polymers are incompatible iff
// their footprints meet.
struct PolymerSystem {
  int universe = 0;
  std::vector<std::vector<int>> footprints;
  std::vector<Complex> weights;
  std::vector<int> sizes;

  std::size_t size() const { return weights.size(); }
  void add(std::vector<int> footprint, Complex weight, int size);
  bool incompatible(std::size_t i, std::size_t j) const;
  // For each footprint id, the polymers touching it.
  std::vector<std::vector<int>> touching() const;
  // Copy keeping only polymers with nonzero weight.
  PolymerSystem nonzero() const;
};

// Footprint V(gamma), size |E(gamma)|, weight Phi_pi.
PolymerSystem holant_polymer_system(const MultiGraph& g, const std::vector<ColouredPolymer>& polymers,
                                    const WeightEvaluator& weights);

}  // namespace holant
