#include "critgraph/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "critgraph/exploration.hpp"
#include "critgraph/offspring.hpp"
#include "critgraph/stats.hpp"
#include "critgraph/walks.hpp"

namespace critgraph {

namespace {

std::string fmt10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, trials) into contiguous chunks and runs
// body(worker_index, begin, end) on each. Per-trial seed derivation makes
// the partition irrelevant to the results.
template <typename Body>
void parallel_trials(std::uint64_t trials, unsigned workers, Body&& body) {
  workers = resolve_workers(workers);
  if (workers <= 1 || trials < 2) {
    body(0u, std::uint64_t{0}, trials);
    return;
  }
  const std::uint64_t chunk = (trials + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
    const std::uint64_t end =
        std::min<std::uint64_t>(begin + chunk, trials);
    if (begin >= end) break;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

// Per-experiment sampler: heavyweight precomputation (weight alias
// tables, base edge lists) happens once, sampling is const and
// thread-safe with per-thread streams.
class ModelSampler {
 public:
  explicit ModelSampler(const ModelConfig& model) : model_(model) {
    if (const auto* nr = std::get_if<NrConfig>(&model_)) nr_.emplace(*nr);
    if (const auto* rp = std::get_if<RegularPercolationConfig>(&model_))
      percolation_.emplace(*rp);
  }

  Vertex n() const { return model_vertex_count(model_); }

  void sample(RandomStream& rng, std::vector<Edge>& scratch, Graph& out) const {
    if (nr_) {
      nr_->sample(rng, scratch, out);
      return;
    }
    if (percolation_) {
      percolation_->sample(rng, scratch, out);
      return;
    }
    if (const auto* er = std::get_if<ErConfig>(&model_)) {
      gen_er(*er, rng, scratch, out);
      return;
    }
    gen_intersection(std::get<IntersectionConfig>(model_), rng, scratch, out);
  }

 private:
  ModelConfig model_;
  std::optional<NrSampler> nr_;
  std::optional<PercolationSampler> percolation_;
};

OffspringDistribution offspring_for_model(const ModelConfig& model) {
  return std::visit([](const auto& cfg) { return offspring_for(cfg); }, model);
}

std::optional<BoundParams> try_derive_params(const ModelConfig& model) {
  try {
    return std::visit([](const auto& cfg) { return derive_params(cfg); },
                      model);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Minimal union-find over <= 32 vertices for the subset oracle.
struct TinyDsu {
  std::array<std::uint8_t, 32> parent;
  std::array<std::uint8_t, 32> size;

  void reset(std::uint8_t n) {
    for (std::uint8_t i = 0; i < n; ++i) {
      parent[i] = i;
      size[i] = 1;
    }
  }
  std::uint8_t find(std::uint8_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint8_t a, std::uint8_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] = static_cast<std::uint8_t>(size[a] + size[b]);
  }
  std::uint8_t max_component(std::uint8_t n) {
    std::uint8_t best = 0;
    for (std::uint8_t i = 0; i < n; ++i)
      if (parent[i] == i) best = std::max(best, size[i]);
    return best;
  }
};

struct WeightedEdge {
  Edge edge;
  double p;
};

// Exact tail for models with independent edges: forced edges are always
// present, `open` edges are enumerated over all subsets.
double edge_subset_oracle(Vertex n, std::uint64_t k,
                          const std::vector<WeightedEdge>& open,
                          const std::vector<Edge>& forced) {
  if (open.size() > 20)
    throw ResourceLimitError("oracle: more than 2^20 edge subsets");
  if (n > 32) throw ResourceLimitError("oracle: vertex limit is 32");
  if (k >= n) return 0.0;
  const std::uint64_t masks = std::uint64_t{1} << open.size();
  double total = 0.0;
  TinyDsu dsu;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    double prob = 1.0;
    dsu.reset(static_cast<std::uint8_t>(n));
    for (const Edge& e : forced)
      dsu.unite(static_cast<std::uint8_t>(e.u),
                static_cast<std::uint8_t>(e.v));
    for (std::size_t b = 0; b < open.size(); ++b) {
      if (mask >> b & 1) {
        prob *= open[b].p;
        dsu.unite(static_cast<std::uint8_t>(open[b].edge.u),
                  static_cast<std::uint8_t>(open[b].edge.v));
      } else {
        prob *= 1.0 - open[b].p;
      }
    }
    if (dsu.max_component(static_cast<std::uint8_t>(n)) > k) total += prob;
  }
  return total;
}

void classify_edge(std::vector<WeightedEdge>& open, std::vector<Edge>& forced,
                   Edge e, double p) {
  if (p <= 0.0) return;
  if (p >= 1.0)
    forced.push_back(e);
  else
    open.push_back({e, p});
}

double intersection_oracle(const IntersectionConfig& cfg, std::uint64_t k) {
  const std::uint64_t m = cfg.m();
  const std::uint64_t bits = static_cast<std::uint64_t>(cfg.n) * m;
  if (bits > 20)
    throw ResourceLimitError("oracle: more than 2^20 bipartite subsets");
  if (k >= cfg.n) return 0.0;
  const double p = cfg.p();
  const std::uint64_t masks = std::uint64_t{1} << bits;
  double total = 0.0;
  TinyDsu dsu;
  std::vector<Vertex> members;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    double prob = 1.0;
    dsu.reset(static_cast<std::uint8_t>(cfg.n));
    for (std::uint64_t aux = 0; aux < m; ++aux) {
      members.clear();
      for (Vertex v = 0; v < cfg.n; ++v) {
        const std::uint64_t bit = aux * cfg.n + v;
        if (mask >> bit & 1) {
          prob *= p;
          members.push_back(v);
        } else {
          prob *= 1.0 - p;
        }
      }
      for (std::size_t i = 1; i < members.size(); ++i)
        dsu.unite(static_cast<std::uint8_t>(members[0]),
                  static_cast<std::uint8_t>(members[i]));
    }
    if (dsu.max_component(static_cast<std::uint8_t>(cfg.n)) > k) total += prob;
  }
  return total;
}

}  // namespace

std::string model_name(const ModelConfig& model) {
  switch (model.index()) {
    case 0: return "er";
    case 1: return "intersection";
    case 2: return "regular";
    default: return "nr";
  }
}

Vertex model_vertex_count(const ModelConfig& model) {
  return std::visit([](const auto& cfg) { return cfg.n; }, model);
}

std::string model_params_flat(const ModelConfig& model) {
  std::ostringstream out;
  if (const auto* er = std::get_if<ErConfig>(&model)) {
    out << "p=" << fmt10(er->p);
    if (er->lambda) out << ";lambda=" << fmt10(*er->lambda);
  } else if (const auto* ig = std::get_if<IntersectionConfig>(&model)) {
    out << "beta=" << fmt10(ig->beta) << ";gamma=" << fmt10(ig->gamma);
  } else if (const auto* rp = std::get_if<RegularPercolationConfig>(&model)) {
    out << "d=" << rp->d << ";p=" << fmt10(rp->p) << ";base=";
    switch (rp->base) {
      case RegularBase::Circulant: out << "circulant"; break;
      case RegularBase::RandomRegular: out << "random-regular"; break;
      case RegularBase::Complete: out << "complete"; break;
    }
  } else {
    const auto& nr = std::get<NrConfig>(model);
    out << "tau=" << fmt10(nr.tau);
    if (nr.pareto_family)
      out << ";scale=" << fmt10(nr.scale);
    else
      out << ";weights=custom";
  }
  return out.str();
}

Graph sample_graph(const ModelConfig& model, RandomStream& rng) {
  const ModelSampler sampler(model);
  Graph g;
  std::vector<Edge> scratch;
  sampler.sample(rng, scratch, g);
  return g;
}

std::uint64_t ExperimentConfig::resolved_k() const {
  if (k && A)
    throw std::invalid_argument("experiment: set either k or A, not both");
  if (k) return *k;
  if (A) return component_threshold(model_vertex_count(model), *A);
  throw std::invalid_argument("experiment: one of k or A is required");
}

TailEstimate estimate_tail(const ExperimentConfig& config) {
  if (config.trials == 0)
    throw std::invalid_argument("experiment: trials >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const ModelSampler sampler(config.model);
  const std::uint64_t k = config.resolved_k();
  const unsigned workers = resolve_workers(config.workers);

  std::vector<std::uint64_t> counts(workers, 0);
  parallel_trials(
      config.trials, workers,
      [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Graph graph;
        std::vector<Edge> scratch;
        BfsWorkspace ws;
        std::uint64_t hits = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          RandomStream rng =
              RandomStream::for_trial(config.master_seed, trial);
          sampler.sample(rng, scratch, graph);
          bool success;
          if (config.estimator == Estimator::MaxComponent) {
            success = largest_component_size(graph, ws) > k;
          } else {
            const Vertex v = static_cast<Vertex>(
                rng.uniform_below(graph.vertex_count()));
            success = component_exceeds(graph, v, k);
          }
          if (success) ++hits;
        }
        counts[w] += hits;
      });

  TailEstimate estimate;
  estimate.k = k;
  estimate.A = config.A;
  estimate.trials = config.trials;
  estimate.successes =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  estimate.p_hat = static_cast<double>(estimate.successes) /
                   static_cast<double>(estimate.trials);
  const ConfidenceInterval ci =
      clopper_pearson(estimate.successes, estimate.trials);
  estimate.ci_low = ci.low;
  estimate.ci_high = ci.high;

  if (k >= 1) {
    if (const auto params = try_derive_params(config.model)) {
      if (config.A && *config.A > 1.0) {
        estimate.bound = tail_bound_for_A(model_vertex_count(config.model),
                                          *config.A, *params);
      } else {
        estimate.bound =
            tail_bound_for_k(model_vertex_count(config.model), k, *params);
      }
    }
  }

  estimate.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return estimate;
}

double exact_tail_oracle(const ModelConfig& model, std::uint64_t k) {
  std::vector<WeightedEdge> open;
  std::vector<Edge> forced;
  if (const auto* er = std::get_if<ErConfig>(&model)) {
    for (Vertex i = 0; i + 1 < er->n; ++i)
      for (Vertex j = i + 1; j < er->n; ++j)
        classify_edge(open, forced, Edge{i, j}, er->p);
    return edge_subset_oracle(er->n, k, open, forced);
  }
  if (const auto* nr = std::get_if<NrConfig>(&model)) {
    for (Vertex i = 0; i + 1 < nr->n; ++i) {
      for (Vertex j = i + 1; j < nr->n; ++j) {
        const double pij =
            nr->total_weight > 0.0
                ? -std::expm1(-nr->weights[i] * nr->weights[j] /
                              nr->total_weight)
                : 0.0;
        classify_edge(open, forced, Edge{i, j}, pij);
      }
    }
    return edge_subset_oracle(nr->n, k, open, forced);
  }
  if (const auto* rp = std::get_if<RegularPercolationConfig>(&model)) {
    if (rp->base == RegularBase::RandomRegular)
      throw std::invalid_argument(
          "oracle: random-regular base is not deterministic");
    RandomStream unused(0);
    const Graph base = regular_base_graph(*rp, unused);
    for (Vertex u = 0; u < base.vertex_count(); ++u)
      for (Vertex v : base.neighbors(u))
        if (v > u) classify_edge(open, forced, Edge{u, v}, rp->p);
    return edge_subset_oracle(rp->n, k, open, forced);
  }
  return intersection_oracle(std::get<IntersectionConfig>(model), k);
}

DominationReport check_domination(const ModelConfig& model, std::uint64_t k,
                                  std::uint64_t trials,
                                  std::uint64_t master_seed,
                                  unsigned workers) {
  if (trials == 0) throw std::invalid_argument("domination: trials >= 1");
  const ModelSampler sampler(model);
  const OffspringDistribution walk_dist = offspring_for_model(model);
  const unsigned nworkers = resolve_workers(workers);

  std::vector<std::uint64_t> graph_hits(nworkers, 0);
  std::vector<std::uint64_t> walk_hits(nworkers, 0);
  parallel_trials(
      trials, nworkers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Graph graph;
        std::vector<Edge> scratch;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = RandomStream::for_trial(master_seed, trial);
          sampler.sample(rng, scratch, graph);
          const Vertex v =
              static_cast<Vertex>(rng.uniform_below(graph.vertex_count()));
          if (component_exceeds(graph, v, k)) ++graph_hits[w];

          RandomStream walk_rng =
              RandomStream::for_trial(master_seed, trials + trial);
          std::int64_t pos = 2;
          bool alive = true;
          for (std::uint64_t t = 0; t < k; ++t) {
            pos += static_cast<std::int64_t>(walk_dist.sample(walk_rng)) - 1;
            if (pos <= 0) {
              alive = false;
              break;
            }
          }
          if (alive) ++walk_hits[w];
        }
      });

  DominationReport report;
  report.k = k;
  report.trials = trials;
  const std::uint64_t lhs_count =
      std::accumulate(graph_hits.begin(), graph_hits.end(), std::uint64_t{0});
  const std::uint64_t rhs_count =
      std::accumulate(walk_hits.begin(), walk_hits.end(), std::uint64_t{0});
  report.lhs_hat =
      static_cast<double>(lhs_count) / static_cast<double>(trials);
  report.rhs_hat =
      static_cast<double>(rhs_count) / static_cast<double>(trials);
  const double se_l = binomial_standard_error(lhs_count, trials);
  const double se_r = binomial_standard_error(rhs_count, trials);
  report.pooled_se = std::sqrt(se_l * se_l + se_r * se_r);
  report.slack = report.rhs_hat + 3.0 * report.pooled_se - report.lhs_hat;
  report.ok = report.slack >= 0.0;
  return report;
}

std::vector<TailEstimate> scaling_sweep(const ModelConfig& model,
                                        std::span<const double> A_list,
                                        std::uint64_t trials,
                                        std::uint64_t master_seed,
                                        unsigned workers) {
  if (A_list.empty()) throw std::invalid_argument("sweep: empty A list");
  for (std::size_t i = 0; i < A_list.size(); ++i) {
    if (!(A_list[i] > 1.0))
      throw std::invalid_argument("sweep: A values must exceed 1");
    if (i > 0 && A_list[i] <= A_list[i - 1])
      throw std::invalid_argument("sweep: A values must be ascending");
  }
  if (trials == 0) throw std::invalid_argument("sweep: trials >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  const ModelSampler sampler(model);
  const Vertex n = sampler.n();
  std::vector<std::uint64_t> thresholds;
  thresholds.reserve(A_list.size());
  for (double A : A_list) thresholds.push_back(component_threshold(n, A));

  const unsigned nworkers = resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> counts(
      nworkers, std::vector<std::uint64_t>(A_list.size(), 0));
  parallel_trials(
      trials, nworkers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Graph graph;
        std::vector<Edge> scratch;
        BfsWorkspace ws;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = RandomStream::for_trial(master_seed, trial);
          sampler.sample(rng, scratch, graph);
          const std::uint32_t cmax = largest_component_size(graph, ws);
          for (std::size_t i = 0; i < thresholds.size(); ++i)
            if (cmax > thresholds[i]) ++counts[w][i];
        }
      });

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const auto params = try_derive_params(model);

  std::vector<TailEstimate> estimates;
  estimates.reserve(A_list.size());
  for (std::size_t i = 0; i < A_list.size(); ++i) {
    TailEstimate est;
    est.k = thresholds[i];
    est.A = A_list[i];
    est.trials = trials;
    for (unsigned w = 0; w < nworkers; ++w) est.successes += counts[w][i];
    est.p_hat =
        static_cast<double>(est.successes) / static_cast<double>(trials);
    const ConfidenceInterval ci = clopper_pearson(est.successes, trials);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    if (params) est.bound = tail_bound_for_A(n, A_list[i], *params);
    est.wall_time_s = elapsed;  // whole-sweep time, same for every row
    estimates.push_back(est);
  }
  return estimates;
}

std::string tail_estimates_csv(const ModelConfig& model,
                               std::span<const TailEstimate> estimates,
                               std::uint64_t master_seed,
                               bool include_timing) {
  std::ostringstream out;
  out << "# schema=" << kCsvSchemaVersion << "\n";
  out << "model,n,params,k,A,trials,successes,p_hat,ci_low,ci_high,"
         "bound_value,bound_certified,seed,wall_time_s\n";
  for (const TailEstimate& est : estimates) {
    out << model_name(model) << "," << model_vertex_count(model) << ","
        << model_params_flat(model) << "," << est.k << ",";
    if (est.A) out << fmt10(*est.A);
    out << "," << est.trials << "," << est.successes << ","
        << fmt10(est.p_hat) << "," << fmt10(est.ci_low) << ","
        << fmt10(est.ci_high) << ",";
    if (est.bound) {
      out << fmt10(est.bound->value) << ","
          << (est.bound->certified() ? "true" : "false");
    } else {
      out << ",";
    }
    out << "," << master_seed << ",";
    if (include_timing) out << fmt10(est.wall_time_s);
    out << "\n";
  }
  return out.str();
}

std::string tail_estimates_json(const ModelConfig& model,
                                std::span<const TailEstimate> estimates,
                                std::uint64_t master_seed,
                                bool include_timing) {
  nlohmann::json doc;
  doc["schema"] = kCsvSchemaVersion;
  doc["model"] = model_name(model);
  doc["n"] = model_vertex_count(model);
  doc["params"] = model_params_flat(model);
  doc["seed"] = master_seed;
  doc["rows"] = nlohmann::json::array();
  for (const TailEstimate& est : estimates) {
    nlohmann::json row;
    row["k"] = est.k;
    if (est.A)
      row["A"] = *est.A;
    else
      row["A"] = nullptr;
    row["trials"] = est.trials;
    row["successes"] = est.successes;
    row["p_hat"] = est.p_hat;
    row["ci_low"] = est.ci_low;
    row["ci_high"] = est.ci_high;
    if (est.bound) {
      row["bound_value"] = est.bound->value;
      row["bound_certified"] = est.bound->certified();
    } else {
      row["bound_value"] = nullptr;
      row["bound_certified"] = nullptr;
    }
    if (include_timing)
      row["wall_time_s"] = est.wall_time_s;
    else
      row["wall_time_s"] = nullptr;
    doc["rows"].push_back(row);
  }
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace critgraph
