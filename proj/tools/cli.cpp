#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "CLI11.hpp"
#include "holant/bounds.hpp"
#include "holant/cluster.hpp"
#include "holant/io.hpp"
#include "holant/linear_system.hpp"
#include "holant/mcmc.hpp"
#include "holant/oracle.hpp"
#include "holant/polymer.hpp"

namespace holant::cli {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

struct Options {
  std::string graph, sig = "matching", assign, z, matrix, hyper, family, report_path;
  std::string format = "text", out, method = "vertex-sets", mode, measure = "edges";
  double eps = 0.05, xi = 0.75, tau = 0.0, alpha = 1.0, r1 = 1.0, r = 0.0;
  std::string weight = "1";
  std::uint64_t seed = 0, steps = 0;
  int trials = 1, jobs = 1, order = 0, delta = 3, kappa = 1, c = 1, k = 2;
  bool force = false, problem = false, table = false;
};

json complex_json(Complex z) { return format_complex(z); }

json assignment_json(const Assignment& a) { return json(a); }

std::string path_or_text(const std::string& value) {
  if (std::filesystem::is_regular_file(value)) return read_file(value);
  return value;
}

struct Instance {
  MultiGraph g;
  SignatureAssignment pi;
  FugacityVector z;
  std::string fingerprint;
};

Instance load_instance(const Options& o, CLI::App* sub, bool need_z) {
  Instance in;
  std::string graph_text = read_file(o.graph);
  in.g = parse_graph_text(graph_text);
  std::string sig_text = path_or_text(o.sig);
  SignatureLibrary lib = parse_signature_library(sig_text);
  Complex w = parse_complex(o.weight);
  for (auto& [name, spec] : lib)
    if (!spec.table && sub->count("--weight")) spec.weight = w;
  int kappa = o.kappa;
  if (!o.z.empty()) {
    in.z = parse_fugacity(o.z);
    kappa = static_cast<int>(in.z.size()) - 1;
    if (kappa < 1) throw InvalidFugacity("--z needs at least z_0 and z_1");
  } else if (need_z) {
    throw ArgumentError("--z is required");
  } else {
    for (auto& [name, spec] : lib)
      if (spec.kappa() && !sub->count("--kappa")) kappa = *spec.kappa();
    in.z.assign(kappa + 1, Complex(1.0));
  }
  std::optional<std::string> assign_text;
  if (!o.assign.empty()) assign_text = read_file(o.assign);
  in.pi = load_assignment(in.g, lib, kappa, assign_text);
  std::ostringstream fp;
  fp << graph_text << '|' << sig_text << '|' << assign_text.value_or("") << '|' << o.z << '|' << o.weight << '|'
     << o.eps;
  in.fingerprint = fp.str();
  return in;
}

std::uint64_t effective_seed(const Options& o, CLI::App* sub, const Instance& in) {
  return sub->count("--seed") ? o.seed : fnv1a(in.fingerprint);
}

json instance_inputs(const Options& o, const Instance& in) {
  json z = json::array();
  for (Complex v : in.z) z.push_back(complex_json(v));
  return {{"graph", o.graph}, {"vertices", in.g.vertex_count()}, {"edges", in.g.edge_count()},
          {"max_degree", max_degree(in.g)}, {"sig", o.sig}, {"assign", o.assign}, {"z", z}, {"kappa", in.pi.kappa()}};
}

McmcConfig mcmc_config(const Options& o, CLI::App* sub) {
  McmcConfig cfg;
  if (sub->count("--tau")) cfg.tau = o.tau;
  cfg.xi = o.xi;
  if (sub->count("--steps")) cfg.steps = o.steps;
  cfg.force = o.force;
  cfg.jobs = o.jobs;
  return cfg;
}

json region_json(const McmcRegion& region) {
  return {{"family", std::string(family_name(region.family))},
          {"bound", region.bound},
          {"ratio", region.ratio},
          {"inside", region.inside}};
}

json cmd_approx(const Options& o, CLI::App* sub) {
  Instance in = load_instance(o, sub, !o.problem);
  FptasOptions fo;
  fo.force = o.force;
  if (sub->count("--order")) fo.order = o.order;
  if (o.method == "clusters") fo.method = CoefficientMethod::clusters;
  FptasResult res = o.problem ? approximate_holant_problem(in.g, in.pi, o.eps, fo)
                              : approximate_holant_polynomial(in.g, in.pi, in.z, o.eps, fo);
  json report;
  report["inputs"] = instance_inputs(o, in);
  report["inputs"]["eps"] = o.eps;
  report["inputs"]["problem"] = o.problem;
  report["diagnostics"] = {{"q", res.q},           {"bound", res.bound},   {"r", res.r},
                           {"r1", res.r1},         {"delta", res.delta},   {"kappa", res.kappa},
                           {"inside_region", res.inside_region},         {"prefactor", complex_json(res.prefactor)}};
  report["result"] = {{"value", complex_json(res.value)}, {"order", res.order}};
  return report;
}

json cmd_sample(const Options& o, CLI::App* sub) {
  Instance in = load_instance(o, sub, true);
  std::uint64_t seed = effective_seed(o, sub, in);
  McmcConfig cfg = mcmc_config(o, sub);
  McmcSetup setup = prepare_mcmc(in.g, in.pi, in.z, cfg);
  auto samples = sample_assignments(in.g, in.pi, in.z, o.eps, seed, static_cast<std::size_t>(o.trials), cfg);
  json report;
  report["inputs"] = instance_inputs(o, in);
  report["inputs"]["eps"] = o.eps;
  report["seed"] = seed;
  report["diagnostics"] = {{"region", region_json(setup.region)},
                           {"tau", setup.tau},
                           {"steps", cfg.steps ? *cfg.steps
                                               : mixing_time(in.g.edge_count(), in.g.vertex_count(), o.eps, o.xi)}};
  std::map<Assignment, int> hist;
  for (auto& s : samples) ++hist[s];
  json h = json::array();
  for (auto& [a, count] : hist)
    h.push_back({{"assignment", assignment_json(a)}, {"count", count},
                 {"frequency", static_cast<double>(count) / static_cast<double>(samples.size())}});
  report["result"] = {{"trials", o.trials}, {"histogram", h}};
  if (o.trials == 1) report["result"]["assignment"] = assignment_json(samples.front());
  return report;
}

json cmd_count(const Options& o, CLI::App* sub) {
  Instance in = load_instance(o, sub, true);
  std::uint64_t seed = effective_seed(o, sub, in);
  McmcConfig cfg = mcmc_config(o, sub);
  McmcSetup setup = prepare_mcmc(in.g, in.pi, in.z, cfg);
  std::vector<double> estimates;
  FprasResult last;
  for (int t = 0; t < o.trials; ++t) {
    last = fpras_estimate(in.g, in.pi, in.z, o.eps, o.trials == 1 ? seed : splitmix64(seed + t), cfg);
    estimates.push_back(last.estimate);
  }
  std::vector<double> sorted = estimates;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double e : estimates) mean += e / static_cast<double>(estimates.size());
  json report;
  report["inputs"] = instance_inputs(o, in);
  report["inputs"]["eps"] = o.eps;
  report["seed"] = seed;
  report["diagnostics"] = {{"region", region_json(setup.region)},
                           {"tau", setup.tau},
                           {"stages", last.stages},
                           {"samples_per_stage", last.samples_per_stage},
                           {"steps_per_sample", last.steps_per_sample},
                           {"repetitions", last.repetitions},
                           {"prefactor", last.prefactor}};
  report["result"] = {{"estimate", estimates.front()}, {"trials", o.trials}};
  if (o.trials > 1) {
    report["result"]["estimates"] = estimates;
    report["result"]["median"] = sorted[sorted.size() / 2];
    report["result"]["min"] = sorted.front();
    report["result"]["max"] = sorted.back();
    report["result"]["mean"] = mean;
  }
  return report;
}

json cmd_oracle(const Options& o, CLI::App* sub) {
  Instance in = load_instance(o, sub, false);
  ExactResult res = brute_holant(in.g, in.pi, in.z, o.table);
  json report;
  report["inputs"] = instance_inputs(o, in);
  report["result"] = {{"value", complex_json(res.value)}, {"assignments", res.count}};
  if (o.table) {
    json t = json::array();
    for (auto& [a, w] : res.table) t.push_back({{"assignment", assignment_json(a)}, {"weight", complex_json(w)}});
    report["result"]["table"] = t;
  }
  return report;
}

json cmd_bounds(const Options& o, CLI::App* sub) {
  RegionParams p;
  p.delta = o.delta;
  p.kappa = o.kappa;
  p.r1 = o.r1;
  p.r = o.r;
  p.c = o.c;
  p.k = o.k;
  RegionReport rep = region_bounds(parse_family(o.family), p);
  json terms = json::object();
  for (auto& [name, v] : rep.terms) terms[name] = v;
  json report;
  report["inputs"] = {{"family", o.family}, {"delta", o.delta}, {"kappa", o.kappa}, {"r1", o.r1},
                      {"r", o.r},           {"c", o.c},         {"k", o.k}};
  report["diagnostics"] = {{"formula", rep.formula}, {"terms", terms}};
  report["result"] = {{"bound", rep.simple}};
  if (rep.optimal) report["result"]["optimal"] = *rep.optimal;
  if (sub->count("--z")) report["result"]["q"] = q_factor(rep, parse_fugacity(o.z));
  return report;
}

json cmd_verify_kp(const Options& o, CLI::App* sub) {
  Instance in = load_instance(o, sub, true);
  KpOptions ko;
  ko.alpha = o.alpha;
  if (o.measure == "vertices") ko.measure = SizeMeasure::vertices;
  KpReport rep = verify_kp_instance(in.g, in.pi, in.z, ko);
  json report;
  report["inputs"] = instance_inputs(o, in);
  report["inputs"]["alpha"] = o.alpha;
  report["inputs"]["measure"] = o.measure;
  report["result"] = {{"certified", rep.certified}, {"worst_margin", rep.worst_margin},
                      {"polymers", rep.polymer_count}};
  return report;
}

json cmd_linsys(const Options& o, CLI::App*) {
  std::ifstream f(o.matrix);
  if (!f) throw ParseError("cannot open '" + o.matrix + "'");
  LinearSystem sys = parse_linear_system(f);
  HypergraphInfo info = build_hypergraph(sys.a);
  RegionReport region = linsys_region(sys);
  FugacityVector w{1.0};
  w.insert(w.end(), sys.weights.begin(), sys.weights.end());
  Complex value = o.mode == "brute" ? brute_weighted_count(sys) : weighted_count(sys);
  json report;
  report["inputs"] = {{"matrix", o.matrix}, {"rows", sys.rows}, {"cols", sys.cols}, {"mode", o.mode.empty() ? "polymer" : o.mode}};
  report["diagnostics"] = {{"r", info.r},
                           {"c", info.c},
                           {"zero_columns", info.zero_columns},
                           {"bound", region.simple},
                           {"q", q_factor(region, w)}};
  report["result"] = {{"value", complex_json(value)}};
  return report;
}

json cmd_pm(const Options& o, CLI::App*) {
  if (o.graph.empty() == o.hyper.empty()) throw ArgumentError("pm needs exactly one of --graph and --hyper");
  FugacityVector zs = parse_fugacity(o.z);
  if (zs.size() != 1) throw ArgumentError("pm takes a single --z value");
  Complex z = zs.front();
  PmMode mode = o.mode == "polymer" ? PmMode::polymer : PmMode::exact;
  json report;
  Complex value;
  RegionReport region;
  std::size_t structures = 0;
  if (!o.graph.empty()) {
    std::ifstream f(o.graph);
    if (!f) throw ParseError("cannot open '" + o.graph + "'");
    GraphPmInstance inst = parse_graph_pm(f);
    value = pm_polynomial_graph(inst.graph, inst.matching, z, mode);
    region = pm_region_graph(inst.graph);
    structures = alternating_cycles(inst.graph, inst.matching).size();
    report["inputs"] = {{"graph", o.graph}, {"matching", inst.matching}};
  } else {
    std::ifstream f(o.hyper);
    if (!f) throw ParseError("cannot open '" + o.hyper + "'");
    HyperPmInstance inst = parse_hyper_pm(f);
    value = pm_polynomial_hypergraph(inst.graph, inst.matching, z, mode);
    region = pm_region_hypergraph(inst.graph);
    structures = alternating_structures(inst.graph, inst.matching).size();
    report["inputs"] = {{"hyper", o.hyper}, {"matching", inst.matching}};
  }
  report["inputs"]["z"] = complex_json(z);
  report["inputs"]["mode"] = mode == PmMode::polymer ? "polymer" : "exact";
  report["diagnostics"] = {{"family", std::string(family_name(region.family))},
                           {"bound", region.simple},
                           {"q", std::abs(z) == 0.0 ? INFINITY : region.simple / std::abs(z)},
                           {"alternating_structures", structures}};
  report["result"] = {{"value", complex_json(value)}};
  return report;
}

void print_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto& [key, v] : j.items()) {
    std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      print_text(v, out, name);
    } else if (v.is_string()) {
      out << name << ": " << v.get<std::string>() << '\n';
    } else {
      out << name << ": " << v.dump() << '\n';
    }
  }
}

int emit(const json& report, const Options& o, std::ostream& out) {
  std::ostringstream text;
  if (o.format == "json") {
    text << report.dump(2) << '\n';
  } else {
    print_text(report, text);
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ParseError("cannot write '" + o.out + "'");
    f << report.dump(2) << '\n';
  }
  out << text.str();
  return kOk;
}

int replay(const Options& o, std::ostream& out, std::ostream& err) {
  json stored;
  try {
    stored = json::parse(read_file(o.report_path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!stored.contains("argv") || !stored["argv"].is_array() || !stored.contains("result"))
    throw ParseError("report lacks argv or result");
  std::vector<std::string> args;
  auto argv = stored["argv"].get<std::vector<std::string>>();
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--format" || argv[i] == "--out") {
      ++i;
      continue;
    }
    if (argv[i] == "replay") throw ParseError("report replays itself");
    args.push_back(argv[i]);
  }
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream captured;
  int code = run(args, captured, err);
  if (code != kOk) return code;
  json fresh = json::parse(captured.str());
  bool same = fresh["result"] == stored["result"];
  out << (same ? "replay: identical" : "replay: mismatch") << '\n';
  if (!same) {
    out << "stored: " << stored["result"].dump() << '\n' << "fresh: " << fresh["result"].dump() << '\n';
  }
  return same ? kOk : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Holant partition functions: cluster-expansion FPTAS, polymer Markov chain and exact oracles"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  auto instance_flags = [&](CLI::App* s, bool seeded) {
    s->add_option("--graph", o.graph, "Graph file: 'n m' then m lines 'u v'")->required();
    s->add_option("--sig", o.sig, "Signature JSON file, JSON text or builtin name")->capture_default_str();
    s->add_option("--assign", o.assign, "Assignment JSON file mapping vertex ids to signature names");
    s->add_option("--weight", o.weight, "Weight for builtin signatures (even-parity, constant)");
    s->add_option("--z", o.z, "Fugacities z_0,z_1,... (complex literals a or a+bi)");
    s->add_option("--kappa", o.kappa, "Domain size minus one when --z is absent");
    s->add_option("--eps", o.eps, "Target accuracy in (0,1)")->capture_default_str()->check(CLI::Range(1e-12, 1.0 - 1e-12));
    if (seeded) {
      s->add_option("--seed", o.seed, "Random seed (default: hash of the instance)");
      s->add_option("--trials", o.trials, "Independent repetitions")->capture_default_str()->check(CLI::PositiveNumber);
      s->add_option("--tau", o.tau, "Sampling-condition tau (default 5 + 3 ln(kappa Delta))");
      s->add_option("--xi", o.xi, "Mixing-condition xi in (0,1)")->capture_default_str()->check(CLI::Range(1e-9, 1.0 - 1e-9));
      s->add_option("--steps", o.steps, "Override the chain length per sample");
      s->add_option("--jobs", o.jobs, "Worker threads; 1 is the reference mode")->capture_default_str()->check(CLI::PositiveNumber);
    }
  };
  auto output_flags = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    s->add_option("--out", o.out, "Also write the JSON report to this file");
  };

  auto* approx = app.add_subcommand("approx", "Cluster-expansion FPTAS for the Holant polynomial or problem");
  instance_flags(approx, false);
  approx->add_flag("--problem", o.problem, "Holant problem mode: all fugacities 1, region from r(F)");
  approx->add_option("--order", o.order, "Override the truncation order m")->check(CLI::PositiveNumber);
  approx->add_option("--method", o.method, "Coefficient route")->check(CLI::IsMember({"vertex-sets", "clusters"}))->capture_default_str();
  approx->add_flag("--force", o.force, "Run outside the certified region (no accuracy guarantee)");
  output_flags(approx);

  auto* sample = app.add_subcommand("sample", "Approximate Gibbs sampling with the polymer Markov chain");
  instance_flags(sample, true);
  sample->add_flag("--force", o.force, "Skip the region check");
  output_flags(sample);

  auto* count = app.add_subcommand("count-mcmc", "Annealing FPRAS built on the polymer Markov chain");
  instance_flags(count, true);
  count->add_flag("--force", o.force, "Skip the region check");
  output_flags(count);

  auto* oracle = app.add_subcommand("oracle", "Exact Holant value by brute force");
  instance_flags(oracle, false);
  oracle->add_flag("--table", o.table, "Dump every assignment with its weight");
  output_flags(oracle);

  auto* bounds = app.add_subcommand("bounds", "Evaluate a zero-free or sampling region bound");
  bounds->add_option("--family", o.family, "boolean, matching, holant-poly, holant-problem, mcmc-poly, mcmc-problem, linsys, hyper-pm, graph-pm")->required();
  bounds->add_option("--delta", o.delta, "Maximum degree")->capture_default_str();
  bounds->add_option("--kappa", o.kappa, "kappa (domain size minus one, or column cap)")->capture_default_str();
  bounds->add_option("--r1", o.r1, "max{1, r(F)}")->capture_default_str();
  bounds->add_option("--r", o.r, "linsys: max nonzeros per row")->capture_default_str();
  bounds->add_option("--c", o.c, "linsys: max nonzeros per column")->capture_default_str();
  bounds->add_option("--k", o.k, "hyper-pm: uniformity")->capture_default_str();
  bounds->add_option("--z", o.z, "Also report q for these fugacities");
  output_flags(bounds);

  auto* kp = app.add_subcommand("verify-kp", "Check the Kotecky-Preiss condition on the full polymer list");
  instance_flags(kp, false);
  kp->add_option("--alpha", o.alpha, "a(gamma) = alpha * size")->capture_default_str();
  kp->add_option("--measure", o.measure, "Size measure")->check(CLI::IsMember({"edges", "vertices"}))->capture_default_str();
  output_flags(kp);

  auto* linsys = app.add_subcommand("linsys", "Weighted count of bounded solutions of Ax = 0");
  linsys->add_option("--matrix", o.matrix, "Matrix file: 'n m', rows, 'caps: ...', 'weights: re im ...'")->required();
  linsys->add_option("--mode", o.mode, "polymer or brute")->check(CLI::IsMember({"polymer", "brute"}));
  output_flags(linsys);

  auto* pm = app.add_subcommand("pm", "Perfect-matching polynomial relative to a fixed perfect matching");
  pm->add_option("--graph", o.graph, "Graph file with a 'matching:' line of edge ids");
  pm->add_option("--hyper", o.hyper, "Hypergraph file with a 'matching:' line of edge ids");
  pm->add_option("--z", o.z, "Evaluation point")->required();
  pm->add_option("--mode", o.mode, "exact or polymer")->check(CLI::IsMember({"exact", "polymer"}));
  output_flags(pm);

  auto* rep = app.add_subcommand("replay", "Re-run the command stored in a JSON report and compare results");
  rep->add_option("--report", o.report_path, "JSON report written with --out or --format json")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* s : app.get_subcommands())
      if (s->parsed()) target = s;
    out << (target == &app ? app.help("", CLI::AppFormatMode::All) : target->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (rep->parsed()) return replay(o, out, err);
    json report;
    CLI::App* sub = app.get_subcommands().front();
    if (sub == approx) report = cmd_approx(o, sub);
    if (sub == sample) report = cmd_sample(o, sub);
    if (sub == count) report = cmd_count(o, sub);
    if (sub == oracle) report = cmd_oracle(o, sub);
    if (sub == bounds) report = cmd_bounds(o, sub);
    if (sub == kp) report = cmd_verify_kp(o, sub);
    if (sub == linsys) report = cmd_linsys(o, sub);
    if (sub == pm) report = cmd_pm(o, sub);
    json ordered;
    ordered["command"] = sub->get_name();
    ordered["argv"] = args;
    for (auto& [key, v] : report.items()) ordered[key] = v;
    return emit(ordered, o, out);
  } catch (const RegionViolation& e) {
    err << "region violation: " << e.what() << '\n';
    return kRegion;
  } catch (const ConditionViolated& e) {
    err << "condition violated: " << e.what() << '\n';
    return kRegion;
  } catch (const NotInF0& e) {
    err << "signature not in F0: " << e.what() << '\n';
    return kUnsupported;
  } catch (const UnsupportedWeights& e) {
    err << "unsupported weights: " << e.what() << '\n';
    return kUnsupported;
  } catch (const InvalidFugacity& e) {
    err << "invalid fugacity: " << e.what() << '\n';
    return kUnsupported;
  } catch (const DegenerateDistribution& e) {
    err << "degenerate distribution: " << e.what() << '\n';
    return kUnsupported;
  } catch (const GateExceeded& e) {
    err << "gate exceeded: " << e.what() << '\n';
    return kGate;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace holant::cli
