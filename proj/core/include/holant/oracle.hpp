#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/polymer_system.hpp"
#include "holant/signature.hpp"

namespace holant {

struct LinearSystem;

inline constexpr std::uint64_t kMaxBruteAssignments = 100'000'000;
inline constexpr std::uint64_t kMaxBruteFamilies = 10'000'000;

struct ExactResult {
  Complex value;
  std::vector<std::pair<Assignment, Complex>> table;  // filled on request, mixed-radix order
  std::uint64_t count = 0;                              // assignments visited
};

// Sum over all sigma in D^E; accepts signatures outside F0.
ExactResult brute_holant(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                         bool with_table = false);

// Sum over all pairwise compatible subsets of the system, visiting each
// family once. Throws GateExceeded beyond kMaxBruteFamilies families.
Complex brute_polymer_z(const PolymerSystem& system);

// Exact mu_G over assignments of positive weight.
std::map<Assignment, double> exact_gibbs(const MultiGraph& g, const SignatureAssignment& pi,
                                         const FugacityVector& z);

// Sum over the full box 0 <= x <= caps with Ax = 0 of prod w_j^{x_j}.
Complex brute_weighted_count(const LinearSystem& sys);

// Throws UnsupportedWeights unless every table entry and fugacity is a
// non-negative real.
void require_nonnegative(const SignatureAssignment& pi, const FugacityVector& z);

}  // namespace holant
