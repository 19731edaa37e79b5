#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holant/common.hpp"
#include "holant/graph.hpp"
#include "holant/polymer.hpp"
#include "holant/signature.hpp"

namespace holant {

enum class Family {
  boolean,
  matching,
  holant_poly,
  holant_problem,
  mcmc_poly,
  mcmc_problem,
  linsys,
  hyper_pm,
  graph_pm,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
std::vector<Family> all_families();

struct RegionParams {
  int delta = 1;
  int kappa = 1;
  double r1 = 1.0;
  double r = 0.0;  // linsys: max nonzeros per row
  int c = 1;       // linsys: max nonzeros per column
  int k = 2;       // hyper-pm: uniformity
};

struct RegionReport {
  Family family = Family::holant_poly;
  RegionParams params;
  std::string formula;
  double simple = 0.0;             // the bound the algorithms use
  std::optional<double> optimal;   // optimal-alpha or exact-constant form
  std::vector<std::pair<std::string, double>> terms;  // named intermediate values

  double value() const { return simple; }
};

// Throws ArgumentError when the parameters are outside the formula's range.
RegionReport region_bounds(Family family, const RegionParams& params);

// Ratio of the bound to the largest |z_i|/|z_0|; +inf when every z_i = 0.
double q_factor(const RegionReport& report, const FugacityVector& z);
// Holant-problem form (threshold / r)^(1/Delta); other families bound / r.
double q_factor(const RegionReport& report, double r);

enum class SizeMeasure { edges, vertices };

struct KpOptions {
  double alpha = 1.0;  // a(gamma) = alpha * size
  SizeMeasure measure = SizeMeasure::edges;
};

struct KpReport {
  std::vector<double> margins;  // LHS - a(gamma), per polymer (or per support)
  double worst_margin = 0.0;
  bool certified = true;
  std::size_t polymer_count = 0;
};

// margins[i] = sum_{j incompatible with i} |w_j| e^{a_j} - a_i.
KpReport verify_kp(const std::vector<ColouredPolymer>& polymers, const std::vector<double>& abs_weights,
                   const KpOptions& options = {});

inline constexpr int kMaxFullEnumerationEdges = 12;
inline constexpr int kMaxFullEnumerationKappa = 3;

// Full enumeration on a concrete instance. Margins are reported per support,
// since a(gamma) and incompatibility do not depend on the colouring.
KpReport verify_kp_instance(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                            const KpOptions& options = {});

// Throws GateExceeded beyond |E| <= 12, kappa <= 3.
void require_full_enumeration(const MultiGraph& g, int kappa);

}  // namespace holant
