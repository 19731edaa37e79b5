#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "holant/bounds.hpp"
#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/polymer.hpp"
#include "holant/signature.hpp"

namespace holant {

std::uint64_t splitmix64(std::uint64_t x);

// mt19937_64 seeded through splitmix64; split(i) gives substream i.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);
  Rng split(std::uint64_t stream) const;

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform();  // [0, 1)
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct McmcConfig {
  std::optional<double> tau;  // default 5 + 3 ln(kappa Delta)
  double xi = 0.75;
  std::optional<std::uint64_t> steps;  // override the mixing-time budget
  bool force = false;                  // skip the region check
  int jobs = 1;
};

struct ConditionReport {
  bool holds = true;
  double value = 0.0;
};

// value = max over polymers of sum_{gamma' incompatible} |E(gamma')| Phi(gamma') / |E(gamma)|,
// the smallest xi the instance certifies. Requires full enumeration.
ConditionReport check_mixing_condition(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                                       double xi);
// value = largest tau with Phi <= exp(-tau |E|) for every polymer (+inf if all vanish).
ConditionReport check_sampling_condition(const MultiGraph& g, const SignatureAssignment& pi,
                                         const FugacityVector& z);

// ceil(2 |E| ln(n / eps) / (1 - xi)), at least 1.
std::uint64_t mixing_time(int edges, int vertices, double eps, double xi);

double min_sampling_tau(int kappa, int delta);

struct McmcRegion {
  Family family = Family::mcmc_poly;
  double bound = 0.0;
  double ratio = 0.0;  // max z_i/z_0, or r(F) for the z = 1 form
  bool inside = true;
};

// Polynomial form when it certifies z; otherwise the z = 1 form when all
// fugacities coincide.
McmcRegion mcmc_region(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z);

struct ChainPolymer {
  ColouredPolymer polymer;
  double weight = 0.0;  // Phi * x^|E|
};

class ChainState {
 public:
  ChainState() = default;
  ChainState(int vertices, int edges);

  const std::vector<const ChainPolymer*>& members() const { return members_; }
  int owner_of_edge(int e) const { return edge_owner_[e]; }
  bool fits(const ColouredPolymer& p) const;
  void add(const ChainPolymer* p);
  void remove(int slot);
  int total_edges() const { return total_edges_; }
  PolymerFamily family() const;

 private:
  std::vector<const ChainPolymer*> members_;
  std::vector<int> vertex_owner_;
  std::vector<int> edge_owner_;
  int total_edges_ = 0;
};

// Polymer chain on non-negative weights Phi * edge_scale^|E|. Keeps its own
// copy of the instance. Not thread-safe: candidate lists are built lazily.
class PolymerChain {
 public:
  PolymerChain(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double tau,
               double edge_scale = 1.0);
  PolymerChain(const PolymerChain&) = delete;
  PolymerChain& operator=(const PolymerChain&) = delete;

  double rho() const { return rho_; }
  // A polymer containing e0 with probability equal to its weight, else null.
  const ChainPolymer* sample_mu0(int e0, Rng& rng);
  void step(ChainState& state, Rng& rng);
  ChainState run(std::uint64_t steps, Rng& rng);
  // Polymers containing e0 with at most k edges and positive weight.
  std::vector<const ChainPolymer*> candidates(int e0, int k);

 private:
  struct EdgeCatalogue {
    int built_to = 0;
    std::deque<ChainPolymer> polymers;  // nondecreasing size
    std::vector<double> cumulative;     // running sum of weight e^{rho |E|}
    std::vector<std::size_t> prefix;    // prefix[k] = count with size <= k
  };
  void extend(int e0, int k);

  MultiGraph g_;
  SignatureAssignment pi_;
  WeightEvaluator eval_;  // refers to g_ and pi_
  double rho_;
  double scale_;
  std::vector<EdgeCatalogue> catalogue_;
};

// Shared preparation of the sampler and FPRAS.
struct McmcSetup {
  CompactedInstance instance;
  McmcRegion region;
  double tau = std::numeric_limits<double>::infinity();
  bool trivial = false;  // only the all-ground assignment has weight
};

McmcSetup prepare_mcmc(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                       const McmcConfig& cfg);

Assignment sample_assignment(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double eps,
                             std::uint64_t seed, const McmcConfig& cfg = {});

// Independent chains on substreams 0..count-1 of the seed.
std::vector<Assignment> sample_assignments(const MultiGraph& g, const SignatureAssignment& pi,
                                           const FugacityVector& z, double eps, std::uint64_t seed,
                                           std::size_t count, const McmcConfig& cfg = {});

struct FprasResult {
  double estimate = 0.0;
  double prefactor = 0.0;
  int stages = 0;
  std::uint64_t samples_per_stage = 0;
  std::uint64_t steps_per_sample = 0;
  int repetitions = 0;
  double log_bound = 0.0;  // upper bound on log of the normalised partition function
  std::vector<double> repetition_estimates;
};

inline constexpr int kFprasRepetitions = 9;

FprasResult fpras_estimate(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double eps,
                           std::uint64_t seed, const McmcConfig& cfg = {});

}  // namespace holant
