#include "holant/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "holant/oracle.hpp"

namespace holant {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x5851F42D4C957F2DULL))); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ArgumentError("empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

double min_sampling_tau(int kappa, int delta) {
  return 5.0 + 3.0 * std::log(static_cast<double>(kappa) * std::max(delta, 1));
}

namespace {

// Per-support sums over colourings: total weight, and the smallest
// -ln(Phi)/|E| over positive weights.
struct SupportSums {
  std::vector<ColouredPolymer> supports;  // representative with colours 1
  std::vector<double> mass;
  double tau = std::numeric_limits<double>::infinity();
};

SupportSums support_sums(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z) {
  require_full_enumeration(g, pi.kappa());
  require_nonnegative(pi, z);
  WeightEvaluator eval(g, pi, z);
  SupportSums out;
  if (g.edge_count() == 0) return out;
  for (auto& s : enumerate_supports(g, g.edge_count())) {
    ColouredPolymer rep{s, std::vector<int>(s.size(), 1), vertices_of(g, s)};
    double total = 0.0;
    auto& colours = rep.colours;
    while (true) {
      double w = eval.weight(rep).real();
      total += w;
      if (w > 0.0) out.tau = std::min(out.tau, -std::log(w) / static_cast<double>(s.size()));
      int pos = static_cast<int>(colours.size()) - 1;
      while (pos >= 0 && colours[pos] == pi.kappa()) colours[pos--] = 1;
      if (pos < 0) break;
      ++colours[pos];
    }
    std::fill(colours.begin(), colours.end(), 1);
    out.supports.push_back(std::move(rep));
    out.mass.push_back(total);
  }
  return out;
}

}  // namespace

ConditionReport check_mixing_condition(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                                       double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw ArgumentError("xi must lie in (0, 1)");
  SupportSums sums = support_sums(g, pi, z);
  std::vector<double> weighted(sums.supports.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] = sums.mass[i] * sums.supports[i].size();
  ConditionReport rep;
  for (std::size_t i = 0; i < sums.supports.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < sums.supports.size(); ++j)
      if (incompatible(sums.supports[i], sums.supports[j])) lhs += weighted[j];
    rep.value = std::max(rep.value, lhs / sums.supports[i].size());
  }
  rep.holds = rep.value <= xi;
  return rep;
}

ConditionReport check_sampling_condition(const MultiGraph& g, const SignatureAssignment& pi,
                                         const FugacityVector& z) {
  SupportSums sums = support_sums(g, pi, z);
  ConditionReport rep;
  rep.value = sums.tau;
  // relative slack so a fugacity exactly on the region boundary passes
  const double need = min_sampling_tau(pi.kappa(), max_degree(g));
  rep.holds = sums.tau >= need - 1e-9 * std::abs(need);
  return rep;
}

std::uint64_t mixing_time(int edges, int vertices, double eps, double xi) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  if (!(xi > 0.0 && xi < 1.0)) throw ArgumentError("xi must lie in (0, 1)");
  double t = std::ceil(2.0 * edges * std::log(static_cast<double>(std::max(vertices, 1)) / eps) / (1.0 - xi));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::max(t, 0.0)));
}

McmcRegion mcmc_region(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z) {
  require_nonnegative(pi, z);
  require_fugacity(z, pi.kappa());
  const int delta = std::max(max_degree(g), 1);
  RatioStats stats = pi.ratios();
  McmcRegion reg;
  reg.family = Family::mcmc_poly;
  reg.bound = region_bounds(Family::mcmc_poly, {delta, pi.kappa(), stats.r1}).value();
  for (std::size_t i = 1; i < z.size(); ++i) reg.ratio = std::max(reg.ratio, z[i].real() / z[0].real());
  reg.inside = reg.ratio <= reg.bound;
  bool uniform = std::all_of(z.begin(), z.end(), [&](Complex c) { return c == z[0]; });
  if (!reg.inside && uniform) {
    McmcRegion alt;
    alt.family = Family::mcmc_problem;
    alt.bound = region_bounds(Family::mcmc_problem, {delta, pi.kappa()}).value();
    alt.ratio = stats.r;
    alt.inside = alt.ratio <= alt.bound;
    if (alt.inside) return alt;
  }
  return reg;
}

ChainState::ChainState(int vertices, int edges) : vertex_owner_(vertices, -1), edge_owner_(edges, -1) {}

bool ChainState::fits(const ColouredPolymer& p) const {
  return std::all_of(p.vertices.begin(), p.vertices.end(), [&](int v) { return vertex_owner_[v] < 0; });
}

void ChainState::add(const ChainPolymer* p) {
  int slot = static_cast<int>(members_.size());
  members_.push_back(p);
  for (int v : p->polymer.vertices) vertex_owner_[v] = slot;
  for (int e : p->polymer.edges) edge_owner_[e] = slot;
  total_edges_ += p->polymer.size();
}

void ChainState::remove(int slot) {
  const ChainPolymer* gone = members_[slot];
  for (int v : gone->polymer.vertices) vertex_owner_[v] = -1;
  for (int e : gone->polymer.edges) edge_owner_[e] = -1;
  total_edges_ -= gone->polymer.size();
  int last = static_cast<int>(members_.size()) - 1;
  if (slot != last) {
    members_[slot] = members_[last];
    for (int v : members_[slot]->polymer.vertices) vertex_owner_[v] = slot;
    for (int e : members_[slot]->polymer.edges) edge_owner_[e] = slot;
  }
  members_.pop_back();
}

PolymerFamily ChainState::family() const {
  PolymerFamily out;
  for (const ChainPolymer* p : members_) out.push_back(p->polymer);
  std::sort(out.begin(), out.end());
  return out;
}

PolymerChain::PolymerChain(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double tau,
                           double edge_scale)
    : g_(g), pi_(pi), eval_(g_, pi_, z), scale_(edge_scale), catalogue_(g.edge_count()) {
  require_nonnegative(pi_, z);
  if (!(edge_scale >= 0.0)) throw ArgumentError("edge scale must be non-negative");
  rho_ = tau - 2.0 - std::log(static_cast<double>(pi.kappa()) * std::max(max_degree(g), 1));
  if (!(rho_ > 0.0)) throw ArgumentError("tau too small: the geometric parameter rho must be positive");
}

void PolymerChain::extend(int e0, int k) {
  EdgeCatalogue& cat = catalogue_[e0];
  if (k <= cat.built_to) return;
  if (cat.prefix.empty()) cat.prefix.push_back(0);
  const int anchor = g_.edge(e0).u;
  for (auto& p : enumerate_polymers(g_, pi_.kappa(), k, anchor)) {
    if (p.size() <= cat.built_to) continue;
    if (!std::binary_search(p.edges.begin(), p.edges.end(), e0)) continue;
    double w = eval_.weight(p).real();
    if (w <= 0.0) continue;
    w *= std::pow(scale_, p.size());
    if (w <= 0.0) continue;
    double accept = w * std::exp(rho_ * p.size());
    double before = cat.cumulative.empty() ? 0.0 : cat.cumulative.back();
    cat.polymers.push_back(ChainPolymer{std::move(p), w});
    cat.cumulative.push_back(before + accept);
  }
  // Sizes arrive in nondecreasing order, so prefix counts are running totals.
  for (int s = cat.built_to + 1; s <= k; ++s) {
    std::size_t count = cat.prefix.back();
    while (count < cat.polymers.size() && cat.polymers[count].polymer.size() <= s) ++count;
    cat.prefix.push_back(count);
    if (count > 0 && cat.cumulative[count - 1] > 1.0 + 1e-12)
      throw ConditionViolated("sampling condition violated: acceptance mass " +
                              std::to_string(cat.cumulative[count - 1]) + " > 1 at edge " + std::to_string(e0));
  }
  cat.built_to = k;
}

std::vector<const ChainPolymer*> PolymerChain::candidates(int e0, int k) {
  k = std::min(k, g_.edge_count());
  extend(e0, k);
  std::vector<const ChainPolymer*> out;
  for (std::size_t i = 0; i < catalogue_[e0].prefix[k]; ++i) out.push_back(&catalogue_[e0].polymers[i]);
  return out;
}

const ChainPolymer* PolymerChain::sample_mu0(int e0, Rng& rng) {
  if (e0 < 0 || e0 >= g_.edge_count()) throw ArgumentError("invalid edge id");
  // P(k >= i) = e^{-rho i}.
  double u = 1.0 - rng.uniform();
  double kf = -std::log(u) / rho_;
  if (kf < 1.0) return nullptr;
  int k = kf >= g_.edge_count() ? g_.edge_count() : static_cast<int>(kf);
  extend(e0, k);
  const EdgeCatalogue& cat = catalogue_[e0];
  std::size_t n = cat.prefix[k];
  if (n == 0) return nullptr;
  double v = rng.uniform();
  auto end = cat.cumulative.begin() + static_cast<long>(n);
  auto it = std::upper_bound(cat.cumulative.begin(), end, v);
  if (it == end) return nullptr;
  return &cat.polymers[static_cast<std::size_t>(it - cat.cumulative.begin())];
}

void PolymerChain::step(ChainState& state, Rng& rng) {
  if (g_.edge_count() == 0) return;
  int e0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(g_.edge_count())));
  int owner = state.owner_of_edge(e0);
  if (owner >= 0) {
    if (rng.coin()) state.remove(owner);
    return;
  }
  const ChainPolymer* p = sample_mu0(e0, rng);
  if (p && state.fits(p->polymer) && rng.coin()) state.add(p);
}

ChainState PolymerChain::run(std::uint64_t steps, Rng& rng) {
  ChainState state(g_.vertex_count(), g_.edge_count());
  for (std::uint64_t t = 0; t < steps; ++t) step(state, rng);
  return state;
}

McmcSetup prepare_mcmc(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                       const McmcConfig& cfg) {
  pi.validate(g);
  pi.require_f0();
  require_fugacity(z, pi.kappa());
  require_nonnegative(pi, z);
  if (!(cfg.xi > 0.0 && cfg.xi < 1.0)) throw ArgumentError("xi must lie in (0, 1)");
  McmcSetup setup;
  bool only_ground = std::all_of(z.begin() + 1, z.end(), [](Complex c) { return c == Complex(0.0, 0.0); });
  if (g.edge_count() == 0 || only_ground) {
    setup.instance = CompactedInstance{pi, z, {}};
    setup.trivial = true;
    return setup;
  }
  setup.instance = compact_domain(g, pi, z);
  setup.region = mcmc_region(g, setup.instance.pi, setup.instance.z);
  if (!setup.region.inside && !cfg.force)
    throw RegionViolation("outside the sampling region: ratio " + std::to_string(setup.region.ratio) +
                          " > bound " + std::to_string(setup.region.bound));
  double floor_tau = min_sampling_tau(setup.instance.kappa(), max_degree(g));
  setup.tau = cfg.tau.value_or(floor_tau);
  if (setup.tau < floor_tau && !cfg.force)
    throw ArgumentError("tau must be at least 5 + 3 ln(kappa Delta) = " + std::to_string(floor_tau));
  return setup;
}

namespace {

template <class Work>
void run_parallel(std::size_t count, int jobs, Work work) {
  int workers = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    work(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t begin = count * w / workers, end = count * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Assignment to_original(const Assignment& sigma, const std::vector<int>& colour_map) {
  Assignment out(sigma.size());
  for (std::size_t e = 0; e < sigma.size(); ++e) out[e] = colour_map.empty() ? sigma[e] : colour_map[sigma[e]];
  return out;
}

}  // namespace

std::vector<Assignment> sample_assignments(const MultiGraph& g, const SignatureAssignment& pi,
                                           const FugacityVector& z, double eps, std::uint64_t seed,
                                           std::size_t count, const McmcConfig& cfg) {
  McmcSetup setup = prepare_mcmc(g, pi, z, cfg);
  std::vector<Assignment> out(count, Assignment(g.edge_count(), 0));
  if (setup.trivial) return out;
  std::uint64_t steps = cfg.steps.value_or(mixing_time(g.edge_count(), g.vertex_count(), eps, cfg.xi));
  Rng base(seed);
  run_parallel(count, cfg.jobs, [&](std::size_t begin, std::size_t end) {
    PolymerChain chain(g, setup.instance.pi, setup.instance.z, setup.tau);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = base.split(i);
      ChainState state = chain.run(steps, rng);
      out[i] = to_original(family_to_assignment(state.family(), g), setup.instance.colour_map);
    }
  });
  return out;
}

Assignment sample_assignment(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double eps,
                             std::uint64_t seed, const McmcConfig& cfg) {
  return sample_assignments(g, pi, z, eps, seed, 1, cfg).front();
}

FprasResult fpras_estimate(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z, double eps,
                           std::uint64_t seed, const McmcConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  McmcSetup setup = prepare_mcmc(g, pi, z, cfg);
  FprasResult res;
  res.prefactor = ground_prefactor(g, pi, z).real();
  if (setup.trivial) {
    res.estimate = res.prefactor;
    return res;
  }
  const int kappa = setup.instance.kappa();
  const int delta = std::max(max_degree(g), 1);
  // log of the normalised partition function is at most the total polymer
  // weight, which the sampling condition bounds edge by edge.
  double q0 = std::numbers::e * kappa * delta * std::exp(-setup.tau);
  if (!(q0 < 1.0)) throw ArgumentError("tau too small to bound the partition function");
  res.log_bound = g.edge_count() * 0.5 * q0 / (1.0 - q0);
  const int stages = std::max(1, static_cast<int>(std::ceil(res.log_bound)));
  const double eps_sampler = eps / (12.0 * stages);
  res.stages = stages;
  res.samples_per_stage = static_cast<std::uint64_t>(std::ceil(64.0 * stages / (eps * eps)));
  res.steps_per_sample =
      cfg.steps.value_or(mixing_time(g.edge_count(), g.vertex_count(), eps_sampler, cfg.xi));
  res.repetitions = kFprasRepetitions;
  Rng base(seed);
  const std::size_t samples = res.samples_per_stage;
  for (int rep = 0; rep < res.repetitions; ++rep) {
    double product = 1.0;
    for (int k = 1; k <= stages; ++k) {
      const double x_hi = static_cast<double>(k) / stages;
      const double x_lo = static_cast<double>(k - 1) / stages;
      Rng stage_rng = base.split(static_cast<std::uint64_t>(rep)).split(static_cast<std::uint64_t>(k));
      // Histogram of the sampled edge counts; integer sums keep the result
      // independent of the worker count.
      int workers = std::max(1, cfg.jobs);
      std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(g.edge_count() + 1, 0));
      std::vector<std::size_t> bounds(workers + 1);
      for (int w = 0; w <= workers; ++w) bounds[w] = samples * w / workers;
      run_parallel(static_cast<std::size_t>(workers), workers, [&](std::size_t wb, std::size_t we) {
        for (std::size_t w = wb; w < we; ++w) {
          PolymerChain chain(g, setup.instance.pi, setup.instance.z, setup.tau, x_hi);
          for (std::size_t s = bounds[w]; s < bounds[w + 1]; ++s) {
            Rng rng = stage_rng.split(s);
            ChainState state = chain.run(res.steps_per_sample, rng);
            ++hist[w][state.total_edges()];
          }
        }
      });
      double mean = 0.0;
      const double ratio = x_lo / x_hi;
      for (int n = 0; n <= g.edge_count(); ++n) {
        std::uint64_t c = 0;
        for (int w = 0; w < workers; ++w) c += hist[w][n];
        if (c) mean += static_cast<double>(c) * std::pow(ratio, n);
      }
      mean /= static_cast<double>(samples);
      product = mean > 0.0 ? product / mean : std::numeric_limits<double>::infinity();
    }
    res.repetition_estimates.push_back(product * res.prefactor);
  }
  std::vector<double> sorted = res.repetition_estimates;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  res.estimate = sorted[sorted.size() / 2];
  return res;
}

}  // namespace holant
