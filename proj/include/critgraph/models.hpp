#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critgraph/graph.hpp"
#include "critgraph/rng.hpp"

namespace critgraph {

// ---------------------------------------------------------------------------
// Erdos-Renyi G(n, p)

struct ErConfig {
  Vertex n = 0;
  double p = 0.0;
  std::optional<double> lambda;  // critical-window offset, if p came from it

  static ErConfig with_p(Vertex n, double p);
  // p = 1/n + lambda * n^{-4/3}, clamped to [0,1].
  static ErConfig critical_window(Vertex n, double lambda);
};

// Sparse sampler: geometric skipping over the C(n,2) pair sequence,
// O(n + |E|) expected.
Graph gen_er(const ErConfig& config, RandomStream& rng);

// Bernoulli draw per pair; quadratic, kept as a correctness oracle for
// small n (refuses n > 2048).
Graph gen_er_dense(const ErConfig& config, RandomStream& rng);

// ---------------------------------------------------------------------------
// Random intersection graph G(n, m, p): vertices adjacent iff they share
// an auxiliary in a random bipartite graph with m = floor(beta n)
// auxiliaries and per-pair probability p = gamma / n.

struct IntersectionConfig {
  Vertex n = 0;
  double beta = 1.0;
  double gamma = 1.0;

  std::uint64_t m() const;
  double p() const { return gamma / static_cast<double>(n); }
  double mu() const { return beta * gamma * gamma; }  // criticality parameter
};

Graph gen_intersection(const IntersectionConfig& config, RandomStream& rng);

// ---------------------------------------------------------------------------
// Bond percolation on a d-regular base graph.

enum class RegularBase { Circulant, RandomRegular, Complete };

struct RegularPercolationConfig {
  std::uint32_t d = 4;
  Vertex n = 0;
  double p = 0.0;  // retention probability
  RegularBase base = RegularBase::Circulant;
};

// The d-regular base graph alone (exposed for degree audits):
//  - Circulant: chords 1..d/2; odd d adds the n/2 chord (needs even n).
//  - RandomRegular: configuration-model pairing, whole sample rejected
//    until simple.
//  - Complete: requires d == n-1.
Graph regular_base_graph(const RegularPercolationConfig& config,
                         RandomStream& rng);

Graph gen_regular_percolation(const RegularPercolationConfig& config,
                              RandomStream& rng);

// ---------------------------------------------------------------------------
// Norros-Reittu inhomogeneous random graph: edge {i,j} present
// independently with probability 1 - exp(-w_i w_j / l_n).

struct NrConfig {
  Vertex n = 0;
  double tau = 5.0;     // weight tail exponent, > 4
  double scale = 0.0;   // Pareto scale a; weights w_j = a (n/j)^{1/(tau-1)}
  double c_f = 0.0;     // tail constant: 1 - F(x) <= c_f x^{-(tau-1)}
  bool pareto_family = false;  // weights came from the built-in family
  std::vector<double> weights;  // non-increasing, w_n = 0 for the family
  double total_weight = 0.0;    // l_n

  double max_weight() const { return weights.empty() ? 0.0 : weights[0]; }

  // Arbitrary weight vector (testing / external data). tau and c_f are
  // only used for bound derivation and may be left at defaults.
  static NrConfig custom(std::vector<double> weights, double tau = 5.0,
                         double c_f = 1.0);
};

// Weight sequence from the scaled-Pareto family
//   F(x) = 1 - (x/a)^{-(tau-1)} for x >= a,
// via w_j = [1-F]^{-1}(j/n), with the convention [1-F]^{-1}(1) = 0 (so
// w_n = 0). The default scale a = (tau-3)/(tau-2) makes the model
// critical: nu = E(W^2)/E(W) = 1. Requires tau > 4.
NrConfig nr_weights(Vertex n, double tau,
                    std::optional<double> scale = std::nullopt);

struct NuReport {
  std::optional<double> analytic;  // a (tau-2)/(tau-3) for the family
  double empirical;                // sum w^2 / sum w
};

NuReport nr_nu(const NrConfig& config);

// Sampler with per-config precomputation (weight alias table, cached
// exp(-w_i)); immutable after construction and safe to share across
// threads with per-thread streams. Expected O(n + |E|) per sample via
// the multigraph construction that assigns each ordered proposal
// (i -> j), j > i, a Poisson(w_i w_j / l_n) multiplicity.
class NrSampler {
 public:
  explicit NrSampler(const NrConfig& config);

  const NrConfig& config() const { return config_; }
  Graph sample(RandomStream& rng) const;
  void sample(RandomStream& rng, std::vector<Edge>& scratch, Graph& out) const;

 private:
  struct AliasSlot {
    double accept;
    Vertex alias;
  };
  NrConfig config_;
  std::vector<AliasSlot> alias_;
  std::vector<double> exp_neg_w_;
};

Graph gen_nr(const NrConfig& config, RandomStream& rng);

// Bernoulli draw per pair; quadratic oracle for small n (<= 2048).
Graph gen_nr_dense(const NrConfig& config, RandomStream& rng);

// ---------------------------------------------------------------------------
// Percolation sampler with a cached base edge list for the deterministic
// bases; RandomRegular draws a fresh base per sample (two-step model).
class PercolationSampler {
 public:
  explicit PercolationSampler(const RegularPercolationConfig& config);

  const RegularPercolationConfig& config() const { return config_; }
  Graph sample(RandomStream& rng) const;
  void sample(RandomStream& rng, std::vector<Edge>& scratch, Graph& out) const;

 private:
  RegularPercolationConfig config_;
  std::vector<Edge> base_edges_;  // empty for RandomRegular
};

// In-place variants used on the Monte Carlo hot path.
void gen_er(const ErConfig& config, RandomStream& rng,
            std::vector<Edge>& scratch, Graph& out);
void gen_intersection(const IntersectionConfig& config, RandomStream& rng,
                      std::vector<Edge>& scratch, Graph& out);

}  // namespace critgraph
