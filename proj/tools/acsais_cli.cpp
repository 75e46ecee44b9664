// acsais: batch front end for threshold, prevalence, simulation and synthesis runs.
//
// Exit codes: 0 success, 2 domain-negative result (e.g. not M-connected or an
// unmet synthesis objective), 64 usage or input error, 70 numerical failure.

#include "acsais/errors.hpp"
#include "acsais/graph_io.hpp"
#include "acsais/mconnect.hpp"
#include "acsais/meanfield.hpp"
#include "acsais/npf.hpp"
#include "acsais/parallel.hpp"
#include "acsais/spectral.hpp"
#include "acsais/stochastic.hpp"
#include "acsais/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace acsais;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNumerical = 70;

// Thrown for a domain-negative outcome after its report has been printed.
struct NegativeResult : Error {
  using Error::Error;
};

struct InputOptions {
  std::string graph;
  std::string layer_s;
  std::string layer_a;
  bool undirected = false;
  int n = 0;

  void add_to(CLI::App* cmd) {
    auto* g = cmd->add_option("--graph", graph, "multilayer JSON file")->check(CLI::ExistingFile);
    auto* s = cmd->add_option("--layer-s", layer_s, "S-layer TSV edge list")->check(CLI::ExistingFile);
    auto* a = cmd->add_option("--layer-a", layer_a, "A-layer TSV edge list")->check(CLI::ExistingFile);
    g->excludes(s)->excludes(a);
    s->needs(a);
    a->needs(s);
    cmd->add_flag("--undirected", undirected, "TSV lines are undirected edges");
    cmd->add_option("--n", n, "node count for TSV input (default: inferred)");
  }

  MultilayerNetwork load() const {
    if (!graph.empty()) return io::read_multilayer_json(graph);
    if (layer_s.empty()) throw InputError("an input network is required: --graph or --layer-s/--layer-a");
    return io::read_edge_list_pair(layer_s, layer_a, n > 0 ? std::optional<int>(n) : std::nullopt,
                                   undirected);
  }
};

struct Context {
  std::string out_dir;
  int jobs = default_workers();

  fs::path path(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() ? p : fs::path(out_dir) / p;
  }

  void prepare() {
    if (out_dir.empty()) {
      const char* env = std::getenv("ACSAIS_OUTPUT_DIR");
      out_dir = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create output directory " + out_dir + ": " + ec.message());
    if (jobs < 1) throw InputError("--jobs must be at least 1");
  }
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  return out;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& tok) {
  std::string t = tok;
  for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "inf" || t == "infinity") return kKappaInfinity;
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw InputError("kappa grid: '" + tok + "' is not a number");
  }
  if (used != tok.size()) throw InputError("kappa grid: '" + tok + "' is not a number");
  return v;
}

// `log:<lo>:<hi>:<points>` or a comma list; `inf` denotes the linear W_A limit.
std::vector<double> parse_kappa_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(4));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("kappa grid: expected log:<lo>:<hi>:<points>");
    const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    const double pts = parse_number(parts[2]);
    if (!(lo > 0) || !(hi > lo) || !std::isfinite(hi))
      throw InputError("kappa grid: log range needs 0 < lo < hi < inf");
    if (!(pts >= 2) || pts != std::floor(pts) || pts > 1e6)
      throw InputError("kappa grid: points must be an integer >= 2");
    const int n = static_cast<int>(pts);
    for (int i = 0; i < n; ++i)
      grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    grid.back() = hi;
    return grid;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) throw InputError("kappa grid: empty entry");
    const double v = parse_number(tok);
    if (!(v >= 0)) throw InputError("kappa grid: values must be >= 0");
    grid.push_back(v);
  }
  if (grid.empty()) throw InputError("kappa grid is empty");
  return grid;
}

// Resolved option values of a subcommand, for the run manifest.
json option_values(const CLI::App* cmd) {
  json opts = json::object();
  for (const CLI::Option* opt : cmd->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      opts[name] = res.size() == 1 ? json(res[0]) : json(res);
    } else {
      opts[name] = opt->get_default_str();
    }
  }
  return opts;
}

void write_manifest(const Context& ctx, const CLI::App* cmd, const json& extra) {
  json m;
  m["command"] = cmd->get_name();
  m["options"] = option_values(cmd);
  m["out_dir"] = ctx.out_dir;
  m["jobs"] = ctx.jobs;
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  open_out(ctx.path(cmd->get_name() + "_manifest.json")) << m.dump(2) << '\n';
}

void require_m_connected(const MultilayerNetwork& net) {
  const auto trace = m_connectivity_trace(net);
  if (!trace.m_connected)
    throw NegativeResult("network is not M-connected (no aggregation step yields a strongly "
                         "connected graph); the threshold equation has no positive solution");
}

const char* kThresholdPlot = R"py(import sys
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "threshold.csv"
xs, ys = [], []
with open(path) as f:
    for row in csv.DictReader(f):
        k = float(row["kappa_bar"])
        if 0 < k < float("inf") and row["tau_c_normalized"] != "nan":
            xs.append(k)
            ys.append(float(row["tau_c_normalized"]))
plt.semilogx(xs, ys, "k-")
plt.axhline(1.0, color="gray", lw=0.5)
plt.xlabel("relative alerting rate kappa_bar")
plt.ylabel("tau_c(kappa_bar) / tau_c(0)")
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
)py";

const char* kPrevalencePlot = R"py(import sys
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "prevalence.csv"
xs, ys = [], []
with open(path) as f:
    for row in csv.DictReader(f):
        if row["prevalence"] != "nan":
            xs.append(float(row["kappa_bar"]))
            ys.append(float(row["prevalence"]))
plt.semilogx(xs, ys, "k.-")
plt.xlabel("relative alerting rate kappa_bar")
plt.ylabel("steady prevalence p_bar")
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
)py";

// --------------------------------------------------------------------------

struct MconnectCmd {
  InputOptions in;
  std::string trace = "mconnect_trace.json";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("mconnect", "decide M-connectivity and export the aggregation trace");
    in.add_to(cmd);
    cmd->add_option("--trace", trace, "trace JSON (relative to the output directory)")->capture_default_str();
  }

  int run(Context& ctx, const CLI::App* cmd) {
    const auto net = in.load();
    const auto t = m_connectivity_trace(net);
    open_out(ctx.path(trace)) << io::trace_to_json_string(t) << '\n';
    write_manifest(ctx, cmd, {{"m_connected", t.m_connected}, {"steps", t.graphs.size()}});
    if (t.m_connected) {
      std::cout << "M-CONNECTED k*=" << *t.k_star << '\n';
      return kExitOk;
    }
    std::cout << "NOT M-CONNECTED: aggregation stalled at partition";
    for (const auto& block : t.graphs.back().partition) {
      std::cout << " {";
      for (std::size_t i = 0; i < block.size(); ++i) std::cout << (i ? "," : "") << block[i];
      std::cout << '}';
    }
    std::cout << '\n';
    return kExitNegative;
  }
};

struct ThresholdCmd {
  InputOptions in;
  std::string grid = "log:0.01:100:61";
  std::string out = "threshold.csv";
  double c = 1.0;
  double tol = 1e-12;
  int max_iter = 1000000;
  bool no_plot = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("threshold", "epidemic threshold tau_c over a kappa_bar grid");
    in.add_to(cmd);
    cmd->add_option("--kappa-grid", grid, "log:<lo>:<hi>:<points> or comma list (inf allowed)")
        ->capture_default_str();
    cmd->add_option("--out", out, "CSV path (relative to the output directory)")->capture_default_str();
    cmd->add_option("--c", c, "iteration shift, relative to the scale of F")->capture_default_str();
    cmd->add_option("--tol", tol, "successive-iterate tolerance")->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "iteration cap")->capture_default_str();
    cmd->add_flag("--no-plot", no_plot, "skip the plot script");
  }

  int run(Context& ctx, const CLI::App* cmd) {
    const auto kappas = parse_kappa_grid(grid);
    const auto net = in.load();
    require_m_connected(net);
    const auto scen = classify_scenario(net);
    std::printf("scenario %s  Psi(W_S,W_A)=%.10g  Psi(W_A,W_S)=%.10g  lambda1(W_S)=%.10g  "
                "lambda1(W_A)=%.10g\n",
                to_string(scen.scenario), scen.psi_sa, scen.psi_as, scen.lambda_s, scen.lambda_a);
    if (!scen.note.empty()) std::printf("note: %s\n", scen.note.c_str());

    ThresholdOptions opts;
    opts.npf.c = c;
    opts.npf.tol = tol;
    opts.npf.max_iter = max_iter;
    opts.check_connectivity = false;
    const double tau0 = acsais_threshold(net, 0.0, opts).tau_c;
    const auto pts = sweep_threshold(net, kappas, opts);

    auto csv = open_out(ctx.path(out));
    csv << "kappa_bar,tau_c,tau_c_normalized\n";
    int failures = 0;
    for (const auto& p : pts) {
      if (!p.ok) {
        ++failures;
        std::cerr << "kappa_bar=" << fmt(p.kappa_bar) << ": " << p.error << '\n';
        csv << fmt(p.kappa_bar) << ",nan,nan\n";
      } else {
        csv << fmt(p.kappa_bar) << ',' << fmt(p.tau_c) << ',' << fmt(p.tau_c / tau0) << '\n';
      }
    }
    if (!no_plot) open_out(ctx.path("plot_threshold.py")) << kThresholdPlot;
    write_manifest(ctx, cmd,
                   {{"scenario", to_string(scen.scenario)},
                    {"psi_sa", scen.psi_sa},
                    {"psi_as", scen.psi_as},
                    {"tau_c0", tau0},
                    {"failed_points", failures},
                    {"power_tol", opts.power.tol}});
    return failures ? kExitNumerical : kExitOk;
  }
};

struct PrevalenceCmd {
  InputOptions in;
  double tau_mult = 1.3;
  std::string grid = "log:0.01:100:61";
  std::string out = "prevalence.csv";
  IntegratorOptions integ;
  bool no_plot = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("prevalence", "mean-field steady prevalence over a kappa_bar grid");
    in.add_to(cmd);
    cmd->add_option("--tau", tau_mult, "infection rate tau as a multiple of tau_c(0)")->capture_default_str();
    cmd->add_option("--kappa-grid", grid, "log:<lo>:<hi>:<points> or comma list")->capture_default_str();
    cmd->add_option("--out", out, "CSV path (relative to the output directory)")->capture_default_str();
    cmd->add_option("--dt", integ.dt, "RK4 step, units of 1/delta")->capture_default_str();
    cmd->add_option("--t-max", integ.t_max, "integration horizon, units of 1/delta")->capture_default_str();
    cmd->add_option("--settle-tol", integ.settle_tol, "steady-state tolerance on the derivative")
        ->capture_default_str();
    cmd->add_flag("--no-plot", no_plot, "skip the plot script");
  }

  int run(Context& ctx, const CLI::App* cmd) {
    const auto kappas = parse_kappa_grid(grid);
    for (const double k : kappas)
      if (std::isinf(k)) throw InputError("kappa grid: inf is not allowed for prevalence sweeps");
    if (!(tau_mult >= 0) || !std::isfinite(tau_mult)) throw InputError("--tau must be >= 0");
    const auto net = in.load();
    require_m_connected(net);
    const double tau0 = 1.0 / dominant_eigenpair(net.layer_s().matrix(), Side::right).value;
    const double tau = tau_mult * tau0;
    std::printf("tau = %.10g (%.6g x tau_c(0) = %.10g)\n", tau, tau_mult, tau0);

    const auto pts = steady_prevalence_sweep(net, tau, kappas, integ, ctx.jobs);
    auto csv = open_out(ctx.path(out));
    csv << "kappa_bar,prevalence\n";
    int failures = 0, unsettled = 0;
    for (const auto& p : pts) {
      if (!p.ok) {
        ++failures;
        std::cerr << "kappa_bar=" << fmt(p.kappa_bar) << ": " << p.error << '\n';
        csv << fmt(p.kappa_bar) << ",nan\n";
        continue;
      }
      if (!p.settled) ++unsettled;
      csv << fmt(p.kappa_bar) << ',' << fmt(p.prevalence) << '\n';
    }
    if (unsettled) std::cerr << unsettled << " point(s) did not settle before t_max\n";
    if (!no_plot) open_out(ctx.path("plot_prevalence.py")) << kPrevalencePlot;
    write_manifest(ctx, cmd,
                   {{"tau", tau},
                    {"tau_c0", tau0},
                    {"prevalence_cutoff", kPrevalenceCutoff},
                    {"initial_condition", "p = 0.01 uniform, q = 0"},
                    {"unsettled_points", unsettled},
                    {"failed_points", failures}});
    return failures ? kExitNumerical : kExitOk;
  }
};

struct SimulateCmd {
  InputOptions in;
  SimConfig cfg;
  std::vector<int> infected;
  bool no_events = false;
  std::string prefix = "events";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "exact stochastic simulation");
    in.add_to(cmd);
    cmd->add_option("--beta", cfg.params.beta, "infection rate")->capture_default_str();
    cmd->add_option("--delta", cfg.params.delta, "curing rate")->capture_default_str();
    cmd->add_option("--kappa", cfg.params.kappa, "alerting rate")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    cmd->add_option("--replicas", cfg.replicas, "replica count")->capture_default_str();
    cmd->add_option("--t-end", cfg.t_end, "horizon, units of 1/delta")->capture_default_str();
    cmd->add_option("--tail-fraction", cfg.tail_fraction, "tail window for the time average")
        ->capture_default_str();
    cmd->add_option("--infected", infected, "initially infected nodes (default: all)")->delimiter(',');
    cmd->add_option("--audit-interval", cfg.audit_interval, "rate audit period in events (0 = off)")
        ->capture_default_str();
    cmd->add_flag("--no-events", no_events, "skip per-replica event logs");
  }

  int run(Context& ctx, const CLI::App* cmd) {
    const auto net = in.load();
    cfg.initial_infected = infected;
    if (infected.empty())
      for (int i = 0; i < net.size(); ++i) cfg.initial_infected.push_back(i);
    cfg.record_events = !no_events;
    cfg.workers = ctx.jobs;
    cfg.validate(net.size());

    const auto runs = simulate(net, cfg);
    if (!no_events)
      for (const auto& r : runs) {
        auto f = open_out(ctx.path(prefix + "_" + std::to_string(r.replica) + ".tsv"));
        write_event_log(f, r);
      }
    const auto est = summarize(runs);
    json reps = json::array();
    for (const auto& r : runs)
      reps.push_back({{"replica", r.replica},
                      {"events", r.event_count},
                      {"transitions", {{"S->I", r.transitions[0]},
                                       {"S->A", r.transitions[1]},
                                       {"A->I", r.transitions[2]},
                                       {"I->S", r.transitions[3]}}},
                      {"survived", r.survived},
                      {"final_prevalence", r.final_prevalence},
                      {"tail_prevalence", r.tail_prevalence}});
    json summary = {{"replicas", est.replicas},
                    {"survivors", est.survivors},
                    {"metastable_prevalence", est.mean},
                    {"metastable_prevalence_stderr", est.std_error},
                    {"tail_fraction", cfg.tail_fraction},
                    {"runs", reps}};
    open_out(ctx.path("simulate_summary.json")) << summary.dump(2) << '\n';
    write_manifest(ctx, cmd, {{"rng", "SplitMix64, substream key = mix(seed, replica)"}});
    std::printf("survivors %d/%d  metastable prevalence %.6g +- %.2g\n", est.survivors,
                est.replicas, est.mean, est.std_error);
    return kExitOk;
  }
};

struct SynthesizeCmd {
  InputOptions in;
  std::string base;
  std::string objective = "undershoot";
  double threshold = 1.0;
  double scale = 2.0 / 3.0;
  double ratio = 2.0 / 3.0;
  int max_steps = 50000;
  std::uint64_t seed = 1;
  bool symmetric = false;
  std::string out = "synthesized.json";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("synthesize", "build an alert layer for a target scenario");
    cmd->add_option("--base", base, "base S layer, TSV edge list")->check(CLI::ExistingFile);
    cmd->add_option("--graph", in.graph, "multilayer JSON; its S layer is the base")->check(CLI::ExistingFile);
    cmd->add_flag("--undirected", in.undirected, "TSV lines are undirected edges");
    cmd->add_option("--objective", objective, "undershoot | overshoot | social-distancing")
        ->check(CLI::IsMember({"undershoot", "overshoot", "social-distancing"}))
        ->capture_default_str();
    cmd->add_option("--threshold", threshold, "Psi bound for undershoot/overshoot")->capture_default_str();
    cmd->add_option("--scale", scale, "weight factor for social-distancing")->capture_default_str();
    cmd->add_option("--radius-ratio", ratio, "lambda1(W_A)/lambda1(W_S)")->capture_default_str();
    cmd->add_option("--max-steps", max_steps, "search steps")->capture_default_str();
    cmd->add_option("--seed", seed, "search seed")->capture_default_str();
    cmd->add_flag("--symmetric", symmetric, "restrict to symmetric alert layers");
    cmd->add_option("--out", out, "multilayer JSON (relative to the output directory)")->capture_default_str();
  }

  int run(Context& ctx, const CLI::App* cmd) {
    WeightedDigraph s;
    if (!base.empty() && !in.graph.empty()) throw InputError("give either --base or --graph");
    if (!base.empty()) s = io::read_edge_list(base, std::nullopt, in.undirected);
    else if (!in.graph.empty()) s = io::read_multilayer_json(in.graph).layer_s();
    else throw InputError("a base layer is required: --base or --graph");

    SynthTarget t{s, ratio, {}, max_steps, seed, symmetric};
    if (objective == "undershoot") t.objective = SynthObjective::psi_sa_below(threshold);
    else if (objective == "overshoot") t.objective = SynthObjective::psi_as_above(threshold);
    else t.objective = SynthObjective::social_distancing(scale);

    const auto r = synth_psi_target(t);
    io::write_multilayer_json(ctx.path(out), r.net);
    {
      auto log = open_out(ctx.path("search_log.csv"));
      write_search_log_csv(log, r.log);
    }
    const auto scen = classify_scenario(r.net);
    std::printf("%s  Psi(W_S,W_A)=%.10g  Psi(W_A,W_S)=%.10g  lambda ratio=%.10g  scenario %s  "
                "steps %d\n",
                r.met ? "MET" : "UNMET", r.psi_sa, r.psi_as, r.lambda_ratio,
                to_string(scen.scenario), r.steps);
    write_manifest(ctx, cmd,
                   {{"met", r.met},
                    {"psi_sa", r.psi_sa},
                    {"psi_as", r.psi_as},
                    {"lambda_ratio", r.lambda_ratio},
                    {"scenario", to_string(scen.scenario)},
                    {"steps", r.steps}});
    return r.met ? kExitOk : kExitNegative;
  }
};

struct SpectrumCmd {
  InputOptions in;
  std::string edge_list;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("spectrum", "dominant eigenpairs of the layers");
    in.add_to(cmd);
    cmd->add_option("--edge-list", edge_list, "single-layer TSV edge list")->check(CLI::ExistingFile);
  }

  static void dump(const Context& ctx, const std::string& name, const SparseMatrix& w) {
    const auto t = spectral_triple(w);
    std::printf("lambda1(%s) = %.12g\n", name.c_str(), t.lambda1);
    auto f = open_out(ctx.path("eigvec_" + name + ".tsv"));
    f << "node\tv\tu\n";
    for (Index i = 0; i < t.v.size(); ++i) f << i << '\t' << fmt(t.v(i)) << '\t' << fmt(t.u(i)) << '\n';
  }

  int run(Context& ctx, const CLI::App* cmd) {
    if (!edge_list.empty()) {
      if (!in.graph.empty() || !in.layer_s.empty()) throw InputError("give either --edge-list or a network");
      const auto g = io::read_edge_list(edge_list, in.n > 0 ? std::optional<int>(in.n) : std::nullopt,
                                        in.undirected);
      std::printf("nodes %d  arcs %zu\n", g.size(), g.edges().size());
      dump(ctx, "W", g.matrix());
    } else {
      const auto net = in.load();
      dump(ctx, "W_S", net.layer_s().matrix());
      dump(ctx, "W_A", net.layer_a().matrix());
    }
    write_manifest(ctx, cmd, json::object());
    return kExitOk;
  }
};

struct PsiCmd {
  InputOptions in;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("psi", "Psi descriptors, perturbation slopes and scenario");
    in.add_to(cmd);
  }

  int run(Context& ctx, const CLI::App* cmd) {
    const auto net = in.load();
    const auto r = classify_scenario(net);
    const auto small = threshold_perturbation(net, Regime::small_kappa);
    const auto large = threshold_perturbation(net, Regime::large_kappa);
    std::printf("Psi(W_S,W_A) = %.12g\nPsi(W_A,W_S) = %.12g\n", r.psi_sa, r.psi_as);
    std::printf("lambda1(W_S) = %.12g\nlambda1(W_A) = %.12g\n", r.lambda_s, r.lambda_a);
    std::printf("small kappa_bar: tau_c ~ %.12g + %.12g kappa_bar\n", small.intercept, small.slope);
    std::printf("large kappa_bar: tau_c ~ %.12g + %.12g / kappa_bar\n", large.intercept, large.slope);
    std::printf("scenario %s\n", to_string(r.scenario));
    if (!r.note.empty()) std::printf("note: %s\n", r.note.c_str());
    write_manifest(ctx, cmd,
                   {{"psi_sa", r.psi_sa},
                    {"psi_as", r.psi_as},
                    {"scenario", to_string(r.scenario)},
                    {"degenerate", r.degenerate}});
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AC-SAIS epidemic threshold, prevalence and simulation toolkit"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--out-dir", ctx.out_dir, "output directory (default: $ACSAIS_OUTPUT_DIR or .)");
  app.add_option("--jobs", ctx.jobs, "worker threads for sweeps and replicas")->capture_default_str();

  MconnectCmd mconnect;
  ThresholdCmd threshold;
  PrevalenceCmd prevalence;
  SimulateCmd sim;
  SynthesizeCmd synthesize;
  SpectrumCmd spectrum;
  PsiCmd psi;
  mconnect.add(app);
  threshold.add(app);
  prevalence.add(app);
  sim.add(app);
  synthesize.add(app);
  spectrum.add(app);
  psi.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ctx.prepare();
    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "mconnect") return mconnect.run(ctx, cmd);
    if (name == "threshold") return threshold.run(ctx, cmd);
    if (name == "prevalence") return prevalence.run(ctx, cmd);
    if (name == "simulate") return sim.run(ctx, cmd);
    if (name == "synthesize") return synthesize.run(ctx, cmd);
    if (name == "spectrum") return spectrum.run(ctx, cmd);
    if (name == "psi") return psi.run(ctx, cmd);
  } catch (const NegativeResult& e) {
    std::cerr << e.what() << '\n';
    return kExitNegative;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
