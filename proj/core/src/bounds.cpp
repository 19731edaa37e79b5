#include "holant/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace holant {

namespace {

constexpr double kE = std::numbers::e;

const std::pair<Family, std::string_view> kNames[] = {
    {Family::boolean, "boolean"},         {Family::matching, "matching"},
    {Family::holant_poly, "holant-poly"}, {Family::holant_problem, "holant-problem"},
    {Family::mcmc_poly, "mcmc-poly"},     {Family::mcmc_problem, "mcmc-problem"},
    {Family::linsys, "linsys"},           {Family::hyper_pm, "hyper-pm"},
    {Family::graph_pm, "graph-pm"},
};

void need(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

}  // namespace

std::string_view family_name(Family f) {
  for (auto& [fam, name] : kNames)
    if (fam == f) return name;
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto& [fam, n] : kNames)
    if (n == name) return fam;
  throw ArgumentError("unknown bound family '" + std::string(name) + "'");
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (auto& [fam, name] : kNames) out.push_back(fam);
  return out;
}

RegionReport region_bounds(Family family, const RegionParams& p) {
  RegionReport rep;
  rep.family = family;
  rep.params = p;
  const double delta = p.delta;
  const double kappa = p.kappa;
  const double r1 = p.r1;
  switch (family) {
    case Family::boolean:
      need(p.delta >= 1 && r1 >= 1, "boolean bound needs delta >= 1, r1 >= 1");
      rep.formula = "1/(delta e^2 r1 (r1+1))";
      rep.simple = 1.0 / (delta * kE * kE * r1 * (r1 + 1));
      break;
    case Family::matching:
      need(p.delta >= 1, "matching bound needs delta >= 1");
      rep.formula = "1/(e (2 delta - 1))";
      rep.simple = 1.0 / (kE * (2 * delta - 1));
      break;
    case Family::holant_poly: {
      need(p.delta >= 1 && p.kappa >= 1 && r1 >= 1, "holant-poly bound needs delta >= 1, kappa >= 1, r1 >= 1");
      rep.formula = "1/(delta kappa e^2 r1 (r1+1))";
      rep.simple = 1.0 / (delta * kappa * kE * kE * r1 * (r1 + 1));
      double s = std::sqrt(r1) * std::sqrt(r1 + 4);
      double alpha = 0.5 * (s - r1);
      rep.optimal = (s - r1) / (r1 * delta * kappa * (s + r1) * std::exp(alpha + 1));
      rep.terms = {{"alpha_opt", alpha}};
      break;
    }
    case Family::holant_problem: {
      need(p.delta >= 1 && p.kappa >= 1, "holant-problem bound needs delta >= 1, kappa >= 1");
      double edge = 1.0 / (2 * std::sqrt(kE)) * std::pow(delta * kappa * kE, -delta / 2);
      double vertex = 0.2058 * std::pow(kappa + 1, -delta);
      double s5 = std::sqrt(5.0);
      double vertex_exact = (s5 - 1) / ((s5 + 1) * std::exp((s5 - 1) / 2)) * std::pow(kappa + 1, -delta);
      rep.formula = "max{(2 sqrt e)^-1 (delta kappa e)^(-delta/2), 0.2058 (kappa+1)^-delta}";
      rep.simple = std::max(edge, vertex);
      rep.optimal = std::max(edge, vertex_exact);
      rep.terms = {{"edge_indexed", edge}, {"vertex_indexed", vertex}, {"vertex_indexed_exact", vertex_exact}};
      break;
    }
    case Family::mcmc_poly:
      need(p.delta >= 1 && p.kappa >= 1 && r1 >= 1, "mcmc-poly bound needs delta >= 1, kappa >= 1, r1 >= 1");
      rep.formula = "1/((delta kappa)^3 e^5 r1^2)";
      rep.simple = 1.0 / (std::pow(delta * kappa, 3) * std::pow(kE, 5) * r1 * r1);
      break;
    case Family::mcmc_problem:
      need(p.delta >= 1 && p.kappa >= 1, "mcmc-problem bound needs delta >= 1, kappa >= 1");
      rep.formula = "(delta kappa)^(-3 delta/2) e^(-5 delta/2)";
      rep.simple = std::pow(delta * kappa, -1.5 * delta) * std::exp(-2.5 * delta);
      break;
    case Family::linsys: {
      need(p.r >= 2 && p.c >= 1 && p.kappa >= 1, "linsys bound needs r >= 2, c >= 1, kappa >= 1");
      double r = p.r, c = p.c;
      rep.formula = "1/((r e + 1) c kappa e^(1/2))";
      rep.simple = 1.0 / ((r * kE + 1) * c * kappa * std::sqrt(kE));
      double s = std::sqrt(8 * kE * r + 1);
      double alpha = (s - 1) / (4 * kE * r);
      rep.optimal = (s - 1) / ((s + 1) * r * c * kappa * std::exp(alpha + 1));
      rep.terms = {{"alpha_opt", alpha}};
      break;
    }
    case Family::hyper_pm: {
      need(p.delta >= 2 && p.k >= 2, "hyper-pm bound needs delta >= 2, k >= 2");
      double k = p.k, dm = delta - 1;
      rep.formula = "1/((delta - 1 + k) e)";
      rep.simple = 1.0 / ((dm + k) * kE);
      double alpha = (std::sqrt(k * k + 4 * dm * k) - k) / (2 * dm);
      rep.optimal = alpha / ((alpha * dm + k) * std::exp(alpha));
      rep.terms = {{"alpha_opt", alpha}};
      break;
    }
    case Family::graph_pm: {
      need(p.delta >= 2, "graph-pm bound needs delta >= 2");
      double s5 = std::sqrt(5.0);
      rep.formula = "1/sqrt(4.85718 (delta - 1))";
      rep.simple = 1.0 / std::sqrt(4.85718 * (delta - 1));
      rep.optimal = std::sqrt((3 - s5) / (2 * (delta - 1) * std::exp((s5 - 1) / 2)));
      rep.terms = {{"alpha_opt", (s5 - 1) / 4}};
      break;
    }
  }
  return rep;
}

double q_factor(const RegionReport& report, const FugacityVector& z) {
  if (z.empty() || z[0] == Complex(0.0, 0.0)) throw InvalidFugacity("z_0 must be nonzero");
  double worst = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i]) / std::abs(z[0]));
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return report.value() / worst;
}

double q_factor(const RegionReport& report, double r) {
  if (r < 0) throw ArgumentError("ratio must be non-negative");
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  if (report.family == Family::holant_problem)
    return std::pow(report.value() / r, 1.0 / report.params.delta);
  return report.value() / r;
}

namespace {

double size_of(const ColouredPolymer& p, SizeMeasure m) {
  return m == SizeMeasure::edges ? p.edges.size() : p.vertices.size();
}

KpReport finish(std::vector<double> margins, std::size_t count) {
  KpReport rep;
  rep.polymer_count = count;
  rep.worst_margin = margins.empty() ? 0.0 : *std::max_element(margins.begin(), margins.end());
  rep.certified = rep.worst_margin <= 0.0;
  rep.margins = std::move(margins);
  return rep;
}

}  // namespace

KpReport verify_kp(const std::vector<ColouredPolymer>& polymers, const std::vector<double>& abs_weights,
                   const KpOptions& options) {
  if (polymers.size() != abs_weights.size()) throw ArgumentError("one weight per polymer required");
  int universe = 0;
  for (const auto& p : polymers)
    for (int v : p.vertices) universe = std::max(universe, v + 1);
  std::vector<std::vector<int>> touching(universe);
  for (std::size_t i = 0; i < polymers.size(); ++i)
    for (int v : polymers[i].vertices) touching[v].push_back(static_cast<int>(i));
  std::vector<double> term(polymers.size());
  for (std::size_t i = 0; i < polymers.size(); ++i)
    term[i] = std::abs(abs_weights[i]) * std::exp(options.alpha * size_of(polymers[i], options.measure));
  std::vector<std::size_t> stamp(polymers.size(), 0);
  std::vector<double> margins(polymers.size());
  for (std::size_t i = 0; i < polymers.size(); ++i) {
    double lhs = 0.0;
    for (int v : polymers[i].vertices)
      for (int j : touching[v])
        if (stamp[j] != i + 1) {
          stamp[j] = i + 1;
          lhs += term[j];
        }
    margins[i] = lhs - options.alpha * size_of(polymers[i], options.measure);
  }
  return finish(std::move(margins), polymers.size());
}

void require_full_enumeration(const MultiGraph& g, int kappa) {
  if (g.edge_count() > kMaxFullEnumerationEdges || kappa > kMaxFullEnumerationKappa)
    throw GateExceeded("full polymer enumeration needs |E| <= 12 and kappa <= 3 (got |E| = " +
                       std::to_string(g.edge_count()) + ", kappa = " + std::to_string(kappa) + ")");
}

KpReport verify_kp_instance(const MultiGraph& g, const SignatureAssignment& pi, const FugacityVector& z,
                            const KpOptions& options) {
  require_full_enumeration(g, pi.kappa());
  WeightEvaluator eval(g, pi, z);
  std::vector<ColouredPolymer> supports;
  std::vector<double> mass;
  std::size_t count = 0;
  if (g.edge_count() > 0) {
    for (auto& s : enumerate_supports(g, g.edge_count())) {
      ColouredPolymer rep{s, std::vector<int>(s.size(), 1), vertices_of(g, s)};
      double total = 0.0;
      std::vector<int>& colours = rep.colours;
      while (true) {
        total += std::abs(eval.weight(rep));
        ++count;
        int pos = static_cast<int>(colours.size()) - 1;
        while (pos >= 0 && colours[pos] == pi.kappa()) colours[pos--] = 1;
        if (pos < 0) break;
        ++colours[pos];
      }
      std::fill(colours.begin(), colours.end(), 1);
      supports.push_back(std::move(rep));
      mass.push_back(total);
    }
  }
  KpReport rep = verify_kp(supports, mass, options);
  rep.polymer_count = count;
  return rep;
}

}  // namespace holant
