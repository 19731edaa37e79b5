#include "holant/polymer_system.hpp"

#include <algorithm>

namespace holant {

void PolymerSystem::add(std::vector<int> footprint, Complex weight, int size) {
  if (footprint.empty()) throw ArgumentError("polymer footprint must be nonempty");
  std::sort(footprint.begin(), footprint.end());
  if (footprint.front() < 0 || footprint.back() >= universe) throw ArgumentError("footprint id out of range");
  footprints.push_back(std::move(footprint));
  weights.push_back(weight);
  sizes.push_back(size);
}

bool PolymerSystem::incompatible(std::size_t i, std::size_t j) const {
  const auto& a = footprints[i];
  const auto& b = footprints[j];
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x == *y) return true;
    if (*x < *y) ++x; else ++y;
  }
  return false;
}

std::vector<std::vector<int>> PolymerSystem::touching() const {
  std::vector<std::vector<int>> out(universe);
  for (std::size_t i = 0; i < size(); ++i)
    for (int v : footprints[i]) out[v].push_back(static_cast<int>(i));
  return out;
}

PolymerSystem PolymerSystem::nonzero() const {
  PolymerSystem out;
  out.universe = universe;
  for (std::size_t i = 0; i < size(); ++i) {
    if (weights[i] == Complex(0.0, 0.0)) continue;
    out.footprints.push_back(footprints[i]);
    out.weights.push_back(weights[i]);
    out.sizes.push_back(sizes[i]);
  }
  return out;
}

PolymerSystem holant_polymer_system(const MultiGraph& g, const std::vector<ColouredPolymer>& polymers,
                                    const WeightEvaluator& weights) {
  PolymerSystem sys;
  sys.universe = g.vertex_count();
  for (const auto& p : polymers) sys.add(p.vertices, weights.weight(p), p.size());
  return sys;
}

}  // namespace holant
