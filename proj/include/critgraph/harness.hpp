#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "critgraph/bounds.hpp"
#include "critgraph/models.hpp"

namespace critgraph {

using ModelConfig = std::variant<ErConfig, IntersectionConfig,
                                 RegularPercolationConfig, NrConfig>;

std::string model_name(const ModelConfig& model);
Vertex model_vertex_count(const ModelConfig& model);
// Flattened parameter list for CSV ("key=value;key=value").
std::string model_params_flat(const ModelConfig& model);

enum class Estimator {
  MaxComponent,   // success iff |C_max| > k, via the BFS oracle
  UniformVertex,  // success iff |C(V)| > k for a uniform V, via exploration
};

struct ExperimentConfig {
  ModelConfig model;
  std::optional<std::uint64_t> k;  // exactly one of k and A is set
  std::optional<double> A;         // k = ceil(A n^{2/3})
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency
  Estimator estimator = Estimator::MaxComponent;

  std::uint64_t resolved_k() const;
};

struct TailEstimate {
  std::uint64_t k = 0;
  std::optional<double> A;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // 99% Clopper-Pearson
  double ci_high = 0.0;
  std::optional<TailBound> bound;  // attached when parameters certify
  double wall_time_s = 0.0;
};

// One draw from whichever model the config describes.
Graph sample_graph(const ModelConfig& model, RandomStream& rng);

// Samples `trials` independent graphs on per-trial derived streams and
// counts threshold exceedances. Counts are independent of the worker
// split; two runs with the same config and seed but different `workers`
// agree exactly.
TailEstimate estimate_tail(const ExperimentConfig& config);

// Exact P(|C_max| > k) by enumerating edge subsets (or bipartite edge
// subsets for the intersection model). Throws ResourceLimitError beyond
// 2^20 subsets; the percolation model requires a deterministic base.
double exact_tail_oracle(const ModelConfig& model, std::uint64_t k);

struct DominationReport {
  std::uint64_t k = 0;
  std::uint64_t trials = 0;
  double lhs_hat = 0.0;   // P(|C(V)| > k) from graph exploration
  double rhs_hat = 0.0;   // dominating-walk survival through k steps
  double pooled_se = 0.0;
  double slack = 0.0;     // rhs + 3 se - lhs; negative means violation
  bool ok = false;
};

// Statistical check of the domination inequality
//   P(|C(V)| > k) <= P(2 + sum (X_i - 1) > 0 for all t in [k]),
// both sides estimated with `trials` samples. A violation beyond three
// pooled standard errors indicates an implementation bug.
DominationReport check_domination(const ModelConfig& model, std::uint64_t k,
                                  std::uint64_t trials,
                                  std::uint64_t master_seed,
                                  unsigned workers = 0);

// One estimate per A over a shared per-trial graph stream (each sampled
// graph is measured once against every threshold, so the p_hat column is
// exactly non-increasing in A). A values must be ascending and > 1.
std::vector<TailEstimate> scaling_sweep(const ModelConfig& model,
                                        std::span<const double> A_list,
                                        std::uint64_t trials,
                                        std::uint64_t master_seed,
                                        unsigned workers = 0);

// CSV with a "# schema=1" first line and one row per estimate; floats
// carry 10 significant digits. Wall times vary run to run, so the
// wall_time_s field is left empty unless include_timing is set; all
// other fields are deterministic.
std::string tail_estimates_csv(const ModelConfig& model,
                               std::span<const TailEstimate> estimates,
                               std::uint64_t master_seed,
                               bool include_timing = false);
std::string tail_estimates_json(const ModelConfig& model,
                                std::span<const TailEstimate> estimates,
                                std::uint64_t master_seed,
                                bool include_timing = false);

// Write-to-temp-then-rename, so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace critgraph
