#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "critgraph/models.hpp"
#include "critgraph/rng.hpp"

namespace critgraph {

enum class OffspringKind { Binomial, CompoundBinomial, MixedPoisson, Explicit };

// Model-specific law of the i.i.d. variables X_i that dominate the
// exploration increments:
//   Binomial(t, p)            percolation on (d-regular) graphs, t = d-1;
//                             also the Erdos-Renyi stand-in with t = n-1
//   CompoundBinomial(m, p, t) intersection graph: a Bin(m,p) number of
//                             auxiliaries, each contributing Bin(t, p)
//   MixedPoisson(w)           Norros-Reittu: Poi(w_M), P(M=i) = w_i/l_n
//   Explicit(values, probs)   finite support, for tests and the CLI
// Immutable after construction; sampling is safe concurrently with
// per-thread streams.
class OffspringDistribution {
 public:
  static OffspringDistribution binomial(std::uint64_t trials, double p);
  static OffspringDistribution compound_binomial(std::uint64_t outer_trials,
                                                 double p,
                                                 std::uint64_t inner_trials);
  static OffspringDistribution mixed_poisson(std::vector<double> weights);
  static OffspringDistribution explicit_finite(std::vector<std::uint64_t> values,
                                               std::vector<double> probs);

  OffspringKind kind() const;

  std::uint64_t sample(RandomStream& rng) const;

  // Exact P(X = j). The compound binomial is evaluated by truncated
  // polynomial powers of its generating function, not by convolving
  // samples.
  double pmf(std::uint64_t j) const;

  // P(X = j) for all j <= j_max in one pass (cheaper than repeated pmf
  // calls for MixedPoisson).
  std::vector<double> pmf_table(std::uint64_t j_max) const;

  double p3() const { return pmf(3); }

  // log E(exp(rX)); all four kinds admit a closed form. Computed in log
  // space so large r cannot overflow.
  double mgf_log(double r) const;
  double mgf(double r) const;

  double mean() const;
  double variance() const;

  // Largest support point for the finite kinds, nullopt for MixedPoisson.
  std::optional<std::uint64_t> max_support() const;

 private:
  struct Binomial {
    std::uint64_t trials;
    double p;
  };
  struct Compound {
    std::uint64_t outer_trials;
    double p;
    std::uint64_t inner_trials;
  };
  struct Mixed {
    std::vector<double> weights;
    double total_weight;
    std::vector<double> exp_neg_w;
    std::vector<double> accept;  // alias table over w_i / l_n
    std::vector<std::uint32_t> alias;
  };
  struct Explicit {
    std::vector<std::uint64_t> values;  // sorted, distinct
    std::vector<double> probs;
    std::vector<double> accept;
    std::vector<std::uint32_t> alias;
  };

  using Impl = std::variant<Binomial, Compound, Mixed, Explicit>;
  explicit OffspringDistribution(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

// Dominating law for each graph model at its configured parameters.
OffspringDistribution offspring_for(const ErConfig& config);
OffspringDistribution offspring_for(const IntersectionConfig& config);
OffspringDistribution offspring_for(const RegularPercolationConfig& config);
OffspringDistribution offspring_for(const NrConfig& config);

// P(X = 3) for Bin(d-1, 1/(d-1)) in closed form:
// (d-2)(d-3) / (6 (d-1)^2) * (1 - 1/(d-1))^{d-4}. Positive iff d > 3.
double regular_p3_closed_form(std::uint32_t d);

// Moments of the size-biased empirical weight distribution W*:
// mean = sum w^2 / sum w, second_moment = sum w^3 / sum w.
struct SizeBiasedView {
  double mean;
  double second_moment;
};

SizeBiasedView size_biased_moments(std::span<const double> weights);

// One row of the weight-sequence audit: the max-weight bound
// max w_i <= (c_f n)^{1/(tau-1)} plus the size-biased moment and the
// scaled deviation n^{(tau-3)/(tau-1)} |1 - E(W*)| whose suprema estimate
// the constants C1 and C2.
struct WeightMomentRow {
  std::uint64_t n;
  double max_weight;
  double max_weight_bound;
  bool max_weight_ok;
  double sb_mean;
  double sb_second_moment;
  double rate_term;
};

struct WeightMomentReport {
  double tau;
  std::vector<WeightMomentRow> rows;
  double c1_estimate;  // sup over rows of E((W*)^2)
  double c2_estimate;  // sup over rows of n^{(tau-3)/(tau-1)} |1 - E(W*)|
  bool all_max_weight_ok;
};

WeightMomentRow weight_moment_row(const NrConfig& config);
WeightMomentReport verify_weight_moments(double tau,
                                         std::span<const std::uint64_t> n_grid);

}  // namespace critgraph
