// critgraph: samplers, exploration, walk verifiers and tail bounds for
// critical random graphs. Subcommands are thin adapters over the library;
// every number they print comes from a library call.
//
// Exit codes: 0 success, 1 invalid arguments, 2 failed verification,
// 3 resource limit exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "critgraph/exploration.hpp"
#include "critgraph/harness.hpp"
#include "critgraph/walks.hpp"

namespace {

using namespace critgraph;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitResourceLimit = 3;

std::string fmt10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

// Echo of the fully resolved configuration, for reproducibility.
void echo_config(const std::string& line) {
  std::cerr << "config: " << line << "\n";
}

struct CommonFlags {
  std::string format = "csv";
  std::string out = "-";
  std::uint64_t seed = 1;
  unsigned workers = 0;

  void add_io(CLI::App* cmd, bool with_format = true) {
    if (with_format)
      cmd->add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    cmd->add_option("--out", out, "Output path ('-' for stdout)")
        ->capture_default_str();
  }
  void add_seed(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  }
  void add_workers(CLI::App* cmd) {
    cmd->add_option("--workers", workers,
                    "Worker threads (0 = available parallelism)")
        ->capture_default_str();
  }
};

struct ModelFlags {
  std::string model;
  std::uint64_t n = 0;
  std::optional<double> p;
  std::optional<double> lambda;
  double gamma = 1.0;
  double beta = 1.0;
  std::uint32_t d = 4;
  std::string base = "circulant";
  double tau = 5.0;
  std::optional<double> scale;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--model", model, "er | intersection | regular | nr")
        ->required()
        ->check(CLI::IsMember({"er", "intersection", "regular", "nr"}));
    cmd->add_option("--n", n, "Vertex count")->required();
    cmd->add_option("--p", p, "Edge/retention probability (er, regular)");
    cmd->add_option("--lambda", lambda,
                    "Critical-window offset: p = 1/n + lambda n^{-4/3} (er)");
    cmd->add_option("--gamma", gamma, "Bipartite probability scale: p = gamma/n")
        ->capture_default_str();
    cmd->add_option("--beta", beta, "Auxiliary count scale: m = floor(beta n)")
        ->capture_default_str();
    cmd->add_option("--d", d, "Base graph degree (regular)")
        ->capture_default_str();
    cmd->add_option("--base", base, "Base graph kind (regular)")
        ->check(CLI::IsMember({"circulant", "random-regular", "complete"}))
        ->capture_default_str();
    cmd->add_option("--tau", tau, "Weight tail exponent (nr)")
        ->capture_default_str();
    cmd->add_option("--scale", scale,
                    "Pareto scale override (nr, default (tau-3)/(tau-2))");
  }

  ModelConfig build() const {
    const Vertex vn = static_cast<Vertex>(n);
    if (model == "er") {
      if (lambda && p)
        throw std::invalid_argument("er: give either --p or --lambda");
      if (lambda) return ErConfig::critical_window(vn, *lambda);
      if (!p) throw std::invalid_argument("er: --p or --lambda required");
      return ErConfig::with_p(vn, *p);
    }
    if (model == "intersection") {
      return IntersectionConfig{vn, beta, gamma};
    }
    if (model == "regular") {
      if (!p) throw std::invalid_argument("regular: --p required");
      RegularBase b = RegularBase::Circulant;
      if (base == "random-regular") b = RegularBase::RandomRegular;
      if (base == "complete") b = RegularBase::Complete;
      return RegularPercolationConfig{d, vn, *p, b};
    }
    return nr_weights(vn, tau, scale);
  }
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stoull(item));
  }
  return values;
}

// "value:prob,value:prob" -> step law
StepDistribution parse_steps(const std::string& text) {
  std::vector<std::int64_t> values;
  std::vector<double> probs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("steps: expected value:prob pairs");
    values.push_back(std::stoll(item.substr(0, colon)));
    probs.push_back(std::stod(item.substr(colon + 1)));
  }
  return StepDistribution::make(std::move(values), std::move(probs));
}

// ---------------------------------------------------------------------------

int run_generate(const ModelFlags& mf, const CommonFlags& io) {
  const ModelConfig model = mf.build();
  echo_config("generate model=" + model_name(model) +
              " n=" + std::to_string(model_vertex_count(model)) + " " +
              model_params_flat(model) + " seed=" + std::to_string(io.seed));
  RandomStream rng(io.seed);
  const Graph g = sample_graph(model, rng);
  std::ostringstream text;
  write_edge_list(g, text);
  emit(io.out, text.str());
  return kExitOk;
}

int run_explore(const std::string& graph_path, std::uint64_t start_1based,
                bool full_sweep, std::optional<std::uint64_t> max_steps,
                const CommonFlags& io) {
  std::ifstream in(graph_path);
  if (!in) throw std::invalid_argument("cannot open graph: " + graph_path);
  const Graph g = read_edge_list(in);
  if (start_1based == 0 || start_1based > g.vertex_count())
    throw std::invalid_argument("explore: start out of range");
  echo_config("explore graph=" + graph_path +
              " start=" + std::to_string(start_1based) +
              " full_sweep=" + (full_sweep ? std::string("true") : "false"));
  ExploreOptions options;
  options.full_sweep = full_sweep;
  options.max_steps = max_steps;
  const ExplorationTrace trace =
      explore(g, static_cast<Vertex>(start_1based - 1), options);

  nlohmann::json doc;
  doc["start"] = start_1based;
  doc["halted_isolated"] = trace.halted_isolated;
  doc["full_sweep"] = trace.full_sweep;
  doc["truncated"] = trace.truncated;
  if (auto size = trace.first_component_size())
    doc["component_of_start"] = *size;
  else
    doc["component_of_start"] = nullptr;
  doc["eta"] = trace.eta;
  doc["active"] = trace.active;
  doc["component_sizes"] = trace.component_sizes;
  emit(io.out, doc.dump(2) + "\n");
  return kExitOk;
}

int run_tail(const ModelFlags& mf, std::optional<std::uint64_t> k,
             std::optional<double> A, std::uint64_t trials,
             const std::string& estimator, bool timing,
             const CommonFlags& io) {
  ExperimentConfig cfg;
  cfg.model = mf.build();
  cfg.k = k;
  cfg.A = A;
  cfg.trials = trials;
  cfg.master_seed = io.seed;
  cfg.workers = io.workers;
  cfg.estimator = estimator == "uniform-vertex" ? Estimator::UniformVertex
                                                : Estimator::MaxComponent;
  echo_config("tail model=" + model_name(cfg.model) + " n=" +
              std::to_string(model_vertex_count(cfg.model)) + " " +
              model_params_flat(cfg.model) +
              " k=" + std::to_string(cfg.resolved_k()) +
              " trials=" + std::to_string(trials) +
              " estimator=" + estimator +
              " seed=" + std::to_string(io.seed) +
              " workers=" + std::to_string(io.workers));
  const TailEstimate estimate = estimate_tail(cfg);
  const std::vector<TailEstimate> rows{estimate};
  emit(io.out, io.format == "json"
                   ? tail_estimates_json(cfg.model, rows, io.seed, timing)
                   : tail_estimates_csv(cfg.model, rows, io.seed, timing));
  return kExitOk;
}

int run_sweep(const ModelFlags& mf, const std::string& a_list,
              std::uint64_t trials, bool timing, const CommonFlags& io) {
  const ModelConfig model = mf.build();
  const std::vector<double> As = parse_double_list(a_list);
  echo_config("sweep model=" + model_name(model) + " n=" +
              std::to_string(model_vertex_count(model)) + " " +
              model_params_flat(model) + " A=" + a_list +
              " trials=" + std::to_string(trials) +
              " seed=" + std::to_string(io.seed) +
              " workers=" + std::to_string(io.workers));
  const auto rows = scaling_sweep(model, As, trials, io.seed, io.workers);
  emit(io.out, io.format == "json"
                   ? tail_estimates_json(model, rows, io.seed, timing)
                   : tail_estimates_csv(model, rows, io.seed, timing));
  return kExitOk;
}

int run_bound(const ModelFlags& mf, std::optional<std::uint64_t> k,
              std::optional<double> A, std::optional<double> c_override,
              const CommonFlags& io) {
  const ModelConfig model = mf.build();
  BoundParams params =
      std::visit([](const auto& cfg) { return derive_params(cfg); }, model);
  if (c_override)
    params = make_bound_params(params.delta, params.rho, params.epsilon,
                               *c_override, params.p3);
  if (k.has_value() == A.has_value())
    throw std::invalid_argument("bound: give exactly one of --k and --A");
  const std::uint64_t n = model_vertex_count(model);
  const TailBound bound = k ? tail_bound_for_k(n, *k, params)
                            : tail_bound_for_A(n, *A, params);
  echo_config("bound model=" + model_name(model) + " n=" + std::to_string(n) +
              " " + model_params_flat(model) +
              " k=" + std::to_string(bound.k) + " delta=" + fmt10(params.delta) +
              " rho=" + fmt10(params.rho) + " epsilon=" + fmt10(params.epsilon) +
              " c=" + fmt10(params.c_precondition));

  if (io.format == "json") {
    nlohmann::json doc;
    doc["model"] = model_name(model);
    doc["n"] = n;
    doc["params"] = model_params_flat(model);
    doc["k"] = bound.k;
    if (bound.A)
      doc["A"] = *bound.A;
    else
      doc["A"] = nullptr;
    doc["delta"] = params.delta;
    doc["rho"] = params.rho;
    doc["epsilon"] = params.epsilon;
    doc["c_precondition"] = params.c_precondition;
    doc["p3"] = params.p3;
    if (params.p3_asymptotic_proxy)
      doc["p3_asymptotic_proxy"] = *params.p3_asymptotic_proxy;
    doc["C"] = params.C;
    doc["value"] = bound.value;
    doc["epsilon_ok"] = bound.epsilon_ok;
    doc["rho_ok"] = bound.rho_ok;
    doc["certified"] = bound.certified();
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "model,n,params,k,A,delta,rho,epsilon,c_precondition,p3,C,value,"
           "epsilon_ok,rho_ok,certified\n";
    out << model_name(model) << "," << n << "," << model_params_flat(model)
        << "," << bound.k << ",";
    if (bound.A) out << fmt10(*bound.A);
    out << "," << fmt10(params.delta) << "," << fmt10(params.rho) << ","
        << fmt10(params.epsilon) << "," << fmt10(params.c_precondition) << ","
        << fmt10(params.p3) << "," << fmt10(params.C) << ","
        << fmt10(bound.value) << "," << (bound.epsilon_ok ? "true" : "false")
        << "," << (bound.rho_ok ? "true" : "false") << ","
        << (bound.certified() ? "true" : "false") << "\n";
    emit(io.out, out.str());
  }
  return kExitOk;
}

int run_verify_ballot(const std::string& steps_text, std::int64_t r,
                      std::uint64_t horizon, const CommonFlags& io) {
  const StepDistribution steps = parse_steps(steps_text);
  echo_config("verify-ballot steps=" + steps_text + " r=" + std::to_string(r) +
              " horizon=" + std::to_string(horizon));
  const BallotReport report = verify_ballot(steps, r, horizon);
  if (io.format == "json") {
    nlohmann::json doc;
    doc["r"] = report.r;
    doc["horizon"] = report.horizon;
    doc["p_step_r"] = report.p_step_r;
    doc["all_ok"] = report.all_ok;
    doc["lhs_total"] = report.lhs_total;
    doc["rows"] = nlohmann::json::array();
    for (const BallotRow& row : report.rows) {
      doc["rows"].push_back({{"j", row.j},
                             {"lhs", row.lhs},
                             {"rhs", row.rhs},
                             {"margin", row.margin},
                             {"ok", row.ok}});
    }
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "j,lhs,rhs,margin,ok\n";
    for (const BallotRow& row : report.rows) {
      out << row.j << "," << fmt10(row.lhs) << "," << fmt10(row.rhs) << ","
          << fmt10(row.margin) << "," << (row.ok ? "true" : "false") << "\n";
    }
    emit(io.out, out.str());
  }
  if (!report.all_ok) {
    std::cerr << "error: ballot inequality violated\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int run_verify_mgf(const ModelFlags& mf, std::size_t grid, double tolerance,
                   std::optional<double> delta, std::optional<double> rho,
                   std::optional<double> epsilon, std::optional<double> c,
                   const CommonFlags& io) {
  const ModelConfig model = mf.build();
  BoundParams params =
      std::visit([](const auto& cfg) { return derive_params(cfg); }, model);
  if (delta || rho || epsilon || c) {
    params = make_bound_params(delta.value_or(params.delta),
                               rho.value_or(params.rho),
                               epsilon.value_or(params.epsilon),
                               c.value_or(params.c_precondition), params.p3);
  }
  echo_config("verify-mgf model=" + model_name(model) + " n=" +
              std::to_string(model_vertex_count(model)) + " " +
              model_params_flat(model) + " delta=" + fmt10(params.delta) +
              " rho=" + fmt10(params.rho) + " epsilon=" + fmt10(params.epsilon) +
              " grid=" + std::to_string(grid));
  const OffspringDistribution dist = std::visit(
      [](const auto& cfg) { return offspring_for(cfg); }, model);
  const MgfCheckReport report =
      check_mgf_condition(dist, params, grid, tolerance);
  if (io.format == "json") {
    nlohmann::json doc;
    doc["model"] = model_name(model);
    doc["rho"] = report.rho;
    doc["grid_size"] = report.grid_size;
    doc["max_violation"] = report.max_violation;
    doc["tolerance"] = report.tolerance;
    doc["pass"] = report.pass;
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "r,violation\n";
    for (const auto& [r, violation] : report.margins)
      out << fmt10(r) << "," << fmt10(violation) << "\n";
    emit(io.out, out.str());
    std::cerr << "max violation: " << fmt10(report.max_violation) << "\n";
  }
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int run_verify_lemma2(double tau, const std::string& n_grid,
                      const CommonFlags& io) {
  const std::vector<std::uint64_t> grid = parse_u64_list(n_grid);
  if (grid.empty()) throw std::invalid_argument("verify-lemma2: empty n grid");
  echo_config("verify-lemma2 tau=" + fmt10(tau) + " n=" + n_grid);
  const WeightMomentReport report = verify_weight_moments(tau, grid);
  if (io.format == "json") {
    nlohmann::json doc;
    doc["tau"] = report.tau;
    doc["c1_estimate"] = report.c1_estimate;
    doc["c2_estimate"] = report.c2_estimate;
    doc["all_max_weight_ok"] = report.all_max_weight_ok;
    doc["rows"] = nlohmann::json::array();
    for (const WeightMomentRow& row : report.rows) {
      doc["rows"].push_back({{"n", row.n},
                             {"max_weight", row.max_weight},
                             {"max_weight_bound", row.max_weight_bound},
                             {"max_weight_ok", row.max_weight_ok},
                             {"sb_mean", row.sb_mean},
                             {"sb_second_moment", row.sb_second_moment},
                             {"rate_term", row.rate_term}});
    }
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "n,max_weight,max_weight_bound,max_weight_ok,sb_mean,"
           "sb_second_moment,rate_term\n";
    for (const WeightMomentRow& row : report.rows) {
      out << row.n << "," << fmt10(row.max_weight) << ","
          << fmt10(row.max_weight_bound) << ","
          << (row.max_weight_ok ? "true" : "false") << ","
          << fmt10(row.sb_mean) << "," << fmt10(row.sb_second_moment) << ","
          << fmt10(row.rate_term) << "\n";
    }
    emit(io.out, out.str());
  }
  return report.all_max_weight_ok ? kExitOk : kExitVerificationFailed;
}

int run_verify_domination(const ModelFlags& mf, std::optional<std::uint64_t> k,
                          std::optional<double> A, std::uint64_t trials,
                          const CommonFlags& io) {
  ExperimentConfig probe;
  probe.model = mf.build();
  probe.k = k;
  probe.A = A;
  const std::uint64_t resolved_k = probe.resolved_k();
  echo_config("verify-domination model=" + model_name(probe.model) + " n=" +
              std::to_string(model_vertex_count(probe.model)) + " " +
              model_params_flat(probe.model) +
              " k=" + std::to_string(resolved_k) +
              " trials=" + std::to_string(trials) +
              " seed=" + std::to_string(io.seed));
  const DominationReport report = check_domination(
      probe.model, resolved_k, trials, io.seed, io.workers);
  if (io.format == "json") {
    nlohmann::json doc;
    doc["model"] = model_name(probe.model);
    doc["k"] = report.k;
    doc["trials"] = report.trials;
    doc["lhs_hat"] = report.lhs_hat;
    doc["rhs_hat"] = report.rhs_hat;
    doc["pooled_se"] = report.pooled_se;
    doc["slack"] = report.slack;
    doc["ok"] = report.ok;
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "k,trials,lhs_hat,rhs_hat,pooled_se,slack,ok\n";
    out << report.k << "," << report.trials << "," << fmt10(report.lhs_hat)
        << "," << fmt10(report.rhs_hat) << "," << fmt10(report.pooled_se)
        << "," << fmt10(report.slack) << "," << (report.ok ? "true" : "false")
        << "\n";
    emit(io.out, out.str());
  }
  return report.ok ? kExitOk : kExitVerificationFailed;
}

int run_oracle(const ModelFlags& mf, std::uint64_t k, const CommonFlags& io) {
  const ModelConfig model = mf.build();
  echo_config("oracle model=" + model_name(model) + " n=" +
              std::to_string(model_vertex_count(model)) + " " +
              model_params_flat(model) + " k=" + std::to_string(k));
  const double exact = exact_tail_oracle(model, k);
  if (io.format == "json") {
    nlohmann::json doc;
    doc["model"] = model_name(model);
    doc["k"] = k;
    doc["exact_tail"] = exact;
    emit(io.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "# schema=" << kCsvSchemaVersion << "\n";
    out << "model,k,exact_tail\n";
    out << model_name(model) << "," << k << "," << fmt10(exact) << "\n";
    emit(io.out, out.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification toolkit for largest components "
               "of critical random graphs"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Sample a graph, write an edge list");
  ModelFlags gen_model;
  CommonFlags gen_io;
  gen_model.add_to(generate);
  gen_io.add_io(generate, false);
  gen_io.add_seed(generate);
  generate->set_config("--config");

  // explore
  auto* explore_cmd = app.add_subcommand("explore", "Run the exploration process on an edge-list file");
  std::string graph_path;
  std::uint64_t start_vertex = 1;
  bool full_sweep = false;
  std::optional<std::uint64_t> max_steps;
  CommonFlags explore_io;
  explore_cmd->add_option("--graph", graph_path, "Edge-list file")->required();
  explore_cmd->add_option("--start", start_vertex, "Start vertex (1-based)")
      ->capture_default_str();
  explore_cmd->add_flag("--full-sweep", full_sweep,
                        "Keep restarting until every vertex is explored");
  explore_cmd->add_option("--max-steps", max_steps, "Stop after this many steps");
  explore_io.add_io(explore_cmd, false);
  explore_cmd->set_config("--config");

  // tail
  auto* tail = app.add_subcommand("tail", "Monte Carlo estimate of P(|C_max| > k)");
  ModelFlags tail_model;
  CommonFlags tail_io;
  std::optional<std::uint64_t> tail_k;
  std::optional<double> tail_A;
  std::uint64_t tail_trials = 10000;
  std::string tail_estimator = "max-component";
  bool tail_timing = false;
  tail_model.add_to(tail);
  tail->add_option("--k", tail_k, "Component size threshold");
  tail->add_option("--A", tail_A, "Threshold scale: k = ceil(A n^{2/3})");
  tail->add_option("--trials", tail_trials, "Number of sampled graphs")
      ->capture_default_str();
  tail->add_option("--estimator", tail_estimator, "Success event")
      ->check(CLI::IsMember({"max-component", "uniform-vertex"}))
      ->capture_default_str();
  tail->add_flag("--timing", tail_timing,
                 "Include wall time in the output (breaks byte-level "
                 "reproducibility)");
  tail_io.add_io(tail);
  tail_io.add_seed(tail);
  tail_io.add_workers(tail);
  tail->set_config("--config");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tail estimates over a list of A values");
  ModelFlags sweep_model;
  CommonFlags sweep_io;
  std::string sweep_As = "1.5,2,3,4";
  std::uint64_t sweep_trials = 10000;
  bool sweep_timing = false;
  sweep_model.add_to(sweep);
  sweep->add_option("--A-list", sweep_As, "Ascending A values, comma separated")
      ->capture_default_str();
  sweep->add_option("--trials", sweep_trials, "Number of sampled graphs")
      ->capture_default_str();
  sweep->add_flag("--timing", sweep_timing, "Include wall time in the output");
  sweep_io.add_io(sweep);
  sweep_io.add_seed(sweep);
  sweep_io.add_workers(sweep);
  sweep->set_config("--config");

  // bound
  auto* bound = app.add_subcommand("bound", "Closed-form tail bound for a model");
  ModelFlags bound_model;
  CommonFlags bound_io;
  std::optional<std::uint64_t> bound_k;
  std::optional<double> bound_A;
  std::optional<double> bound_c;
  bound_model.add_to(bound);
  bound->add_option("--k", bound_k, "Component size threshold");
  bound->add_option("--A", bound_A, "Threshold scale: k = ceil(A n^{2/3})");
  bound->add_option("--c", bound_c, "Override the epsilon-precondition constant");
  bound_io.add_io(bound);
  bound->set_config("--config");

  // verify-ballot
  auto* vballot = app.add_subcommand("verify-ballot", "Exact check of the ballot inequality");
  std::string steps_text;
  std::int64_t ballot_r = 2;
  std::uint64_t ballot_horizon = 2;
  CommonFlags ballot_io;
  vballot->add_option("--steps", steps_text, "Step law as value:prob,...")
      ->required();
  vballot->add_option("--r", ballot_r, "Start level / conditioned step value")
      ->capture_default_str();
  vballot->add_option("--horizon", ballot_horizon, "Walk length")
      ->capture_default_str();
  ballot_io.add_io(vballot);
  vballot->set_config("--config");

  // verify-mgf
  auto* vmgf = app.add_subcommand("verify-mgf", "Grid check of the moment generating function condition");
  ModelFlags mgf_model;
  CommonFlags mgf_io;
  std::size_t mgf_grid = 1000;
  double mgf_tolerance = 1e-12;
  std::optional<double> mgf_delta, mgf_rho, mgf_epsilon, mgf_c;
  mgf_model.add_to(vmgf);
  vmgf->add_option("--grid", mgf_grid, "Grid points in (0, rho)")
      ->capture_default_str();
  vmgf->add_option("--tolerance", mgf_tolerance, "Max tolerated violation")
      ->capture_default_str();
  vmgf->add_option("--delta", mgf_delta, "Override delta");
  vmgf->add_option("--rho", mgf_rho, "Override rho");
  vmgf->add_option("--epsilon", mgf_epsilon, "Override epsilon");
  vmgf->add_option("--c", mgf_c, "Override c_precondition");
  mgf_io.add_io(vmgf);
  vmgf->set_config("--config");

  // verify-lemma2
  auto* vlemma = app.add_subcommand("verify-lemma2", "Weight-sequence moment audit over an n grid");
  double lemma_tau = 5.0;
  std::string lemma_grid = "1000,10000,100000,1000000";
  CommonFlags lemma_io;
  vlemma->add_option("--tau", lemma_tau, "Weight tail exponent")
      ->capture_default_str();
  vlemma->add_option("--n-grid", lemma_grid, "Comma separated n values")
      ->capture_default_str();
  lemma_io.add_io(vlemma);
  vlemma->set_config("--config");

  // verify-domination
  auto* vdom = app.add_subcommand("verify-domination", "Statistical check of the dominating walk");
  ModelFlags dom_model;
  CommonFlags dom_io;
  std::optional<std::uint64_t> dom_k;
  std::optional<double> dom_A;
  std::uint64_t dom_trials = 10000;
  dom_model.add_to(vdom);
  vdom->add_option("--k", dom_k, "Component size threshold");
  vdom->add_option("--A", dom_A, "Threshold scale: k = ceil(A n^{2/3})");
  vdom->add_option("--trials", dom_trials, "Samples per side")
      ->capture_default_str();
  dom_io.add_io(vdom);
  dom_io.add_seed(vdom);
  dom_io.add_workers(vdom);
  vdom->set_config("--config");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact tail probability by subset enumeration");
  ModelFlags oracle_model;
  CommonFlags oracle_io;
  std::uint64_t oracle_k = 1;
  oracle_model.add_to(oracle);
  oracle->add_option("--k", oracle_k, "Component size threshold")
      ->capture_default_str();
  oracle_io.add_io(oracle);
  oracle->set_config("--config");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(gen_model, gen_io);
    if (explore_cmd->parsed())
      return run_explore(graph_path, start_vertex, full_sweep, max_steps,
                         explore_io);
    if (tail->parsed())
      return run_tail(tail_model, tail_k, tail_A, tail_trials, tail_estimator,
                      tail_timing, tail_io);
    if (sweep->parsed())
      return run_sweep(sweep_model, sweep_As, sweep_trials, sweep_timing,
                       sweep_io);
    if (bound->parsed())
      return run_bound(bound_model, bound_k, bound_A, bound_c, bound_io);
    if (vballot->parsed())
      return run_verify_ballot(steps_text, ballot_r, ballot_horizon,
                               ballot_io);
    if (vmgf->parsed())
      return run_verify_mgf(mgf_model, mgf_grid, mgf_tolerance, mgf_delta,
                            mgf_rho, mgf_epsilon, mgf_c, mgf_io);
    if (vlemma->parsed())
      return run_verify_lemma2(lemma_tau, lemma_grid, lemma_io);
    if (vdom->parsed())
      return run_verify_domination(dom_model, dom_k, dom_A, dom_trials,
                                   dom_io);
    if (oracle->parsed()) return run_oracle(oracle_model, oracle_k, oracle_io);
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: resource-limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid-argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
