#pragma once

#include <cstdint>
#include <vector>

#include "critgraph/offspring.hpp"
#include "critgraph/rng.hpp"
#include "critgraph/stats.hpp"

namespace critgraph {

// Finite integer step law for walk enumeration. Steps are offspring
// counts shifted by -1, so the support lives in {-1, 0, 1, ...}.
struct StepDistribution {
  std::vector<std::int64_t> values;  // sorted, distinct, >= -1
  std::vector<double> probs;         // sums to 1 within 1e-12

  static StepDistribution make(std::vector<std::int64_t> values,
                               std::vector<double> probs);
  // Shift a finite offspring law by -1. Throws for MixedPoisson
  // (unbounded support).
  static StepDistribution from_offspring(const OffspringDistribution& dist);

  double prob_of(std::int64_t v) const;
  std::int64_t max_step() const { return values.back(); }
};

// The dominating walk: start + sum of (X_i - 1) with X_i drawn from
// `offspring`. The proofs use start = 2.
struct WalkSpec {
  OffspringDistribution offspring;
  std::int64_t start = 2;
  std::uint64_t horizon = 1;
};

struct SurvivalEstimate {
  std::uint64_t trials;
  std::uint64_t successes;
  double p_hat;
  double ci_low;   // 99% Clopper-Pearson unless stated otherwise
  double ci_high;
};

// Monte Carlo estimate of P(start + S_t > 0 for all t in [horizon]).
// Exits a trial at the first non-positive prefix.
SurvivalEstimate survival_probability_mc(const WalkSpec& spec,
                                         std::uint64_t trials,
                                         RandomStream& rng);

// Exact survival probability via dynamic programming over walk
// positions. Throws ResourceLimitError when horizon * max-position
// exceeds the 1e8 state budget.
double survival_probability_exact(const StepDistribution& steps,
                                  std::int64_t start, std::uint64_t horizon);
double survival_probability_exact(const WalkSpec& spec);

// One endpoint row of the ballot inequality
//   P(r + S_t > 0 forall t in [h], r + S_h = j)
//     <= P(step = r)^{-1} * j/(h+1) * P(S_{h+1} = j).
// lhs/rhs are exact rational values reported as doubles; `ok` is decided
// on the rationals, with zero tolerance.
struct BallotRow {
  std::int64_t j;
  double lhs;
  double rhs;
  double margin;  // rhs - lhs
  bool ok;
};

struct BallotReport {
  std::int64_t r;
  std::uint64_t horizon;
  double p_step_r;
  std::vector<BallotRow> rows;
  bool all_ok;
  // Exact sum of the lhs column; equals the survival probability (the
  // decomposition over endpoints), reported for cross-checking.
  double lhs_total;
};

// Exact verification of the ballot inequality over every endpoint j >= 1
// reachable by either side. Requires P(step = r) > 0. All arithmetic is
// rational (probabilities are taken bit-exactly from the doubles and
// normalized by their exact sum), so the comparisons carry no tolerance.
BallotReport verify_ballot(const StepDistribution& steps, std::int64_t r,
                           std::uint64_t horizon);

}  // namespace critgraph
