#include "critgraph/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "critgraph/common.hpp"

namespace critgraph {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::uint64_t kStateBudget = 100'000'000;

// Survival-constrained DP: mass over positions 1..max_pos after each
// step, with non-positive positions absorbed (killed). Returns the final
// position distribution.
template <typename Num>
std::vector<Num> survival_dp(const std::vector<std::int64_t>& values,
                             const std::vector<Num>& probs, std::int64_t start,
                             std::uint64_t horizon, std::int64_t max_pos) {
  std::vector<Num> cur(static_cast<std::size_t>(max_pos) + 1, Num(0));
  std::vector<Num> next(cur.size(), Num(0));
  cur[static_cast<std::size_t>(start)] = Num(1);
  for (std::uint64_t t = 0; t < horizon; ++t) {
    std::fill(next.begin(), next.end(), Num(0));
    for (std::int64_t pos = 1; pos <= max_pos; ++pos) {
      const Num& mass = cur[static_cast<std::size_t>(pos)];
      if (mass == Num(0)) continue;
      for (std::size_t s = 0; s < values.size(); ++s) {
        const std::int64_t np = pos + values[s];
        if (np >= 1 && np <= max_pos)
          next[static_cast<std::size_t>(np)] += mass * probs[s];
      }
    }
    cur.swap(next);
  }
  return cur;
}

// Unconstrained sum distribution of `steps` i.i.d. draws. On return
// min_sum holds the sum encoded by index 0.
template <typename Num>
std::vector<Num> sum_dp(const std::vector<std::int64_t>& values,
                        const std::vector<Num>& probs, std::uint64_t steps,
                        std::int64_t& min_sum) {
  const std::int64_t lo = *std::min_element(values.begin(), values.end());
  const std::int64_t hi = *std::max_element(values.begin(), values.end());
  std::vector<Num> dist(1, Num(1));
  std::int64_t cur_min = 0;
  for (std::uint64_t t = 0; t < steps; ++t) {
    const std::int64_t new_min = cur_min + lo;
    std::vector<Num> out(dist.size() + static_cast<std::size_t>(hi - lo),
                         Num(0));
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (dist[i] == Num(0)) continue;
      const std::int64_t s = cur_min + static_cast<std::int64_t>(i);
      for (std::size_t k = 0; k < values.size(); ++k) {
        out[static_cast<std::size_t>(s + values[k] - new_min)] +=
            dist[i] * probs[k];
      }
    }
    dist.swap(out);
    cur_min = new_min;
  }
  min_sum = cur_min;
  return dist;
}

void check_state_budget(std::int64_t max_pos, std::uint64_t horizon) {
  if (max_pos <= 0) return;
  const std::uint64_t states =
      static_cast<std::uint64_t>(max_pos) * (horizon + 1);
  if (states > kStateBudget)
    throw ResourceLimitError("walk enumeration: state space exceeds budget");
}

std::vector<Rational> normalized_rational_probs(
    const std::vector<double>& probs) {
  std::vector<Rational> out;
  out.reserve(probs.size());
  Rational total = 0;
  for (double p : probs) {
    Rational rp(p);  // exact dyadic value of the double
    out.push_back(rp);
    total += rp;
  }
  for (Rational& rp : out) rp /= total;
  return out;
}

}  // namespace

StepDistribution StepDistribution::make(std::vector<std::int64_t> values,
                                        std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("steps: values/probs size mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  StepDistribution d;
  double total = 0.0;
  for (std::size_t idx : order) {
    if (values[idx] < -1)
      throw std::invalid_argument("steps: support must be >= -1");
    if (!(probs[idx] >= 0.0))
      throw std::invalid_argument("steps: probabilities must be >= 0");
    if (!d.values.empty() && d.values.back() == values[idx])
      throw std::invalid_argument("steps: duplicate support point");
    d.values.push_back(values[idx]);
    d.probs.push_back(probs[idx]);
    total += probs[idx];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("steps: probabilities must sum to 1");
  return d;
}

StepDistribution StepDistribution::from_offspring(
    const OffspringDistribution& dist) {
  const auto top = dist.max_support();
  if (!top)
    throw std::invalid_argument(
        "steps: offspring law has unbounded support; exact enumeration "
        "unavailable");
  const std::vector<double> table = dist.pmf_table(*top);
  std::vector<std::int64_t> values;
  std::vector<double> probs;
  for (std::uint64_t j = 0; j <= *top; ++j) {
    if (table[j] > 0.0) {
      values.push_back(static_cast<std::int64_t>(j) - 1);
      probs.push_back(table[j]);
    }
  }
  return make(std::move(values), std::move(probs));
}

double StepDistribution::prob_of(std::int64_t v) const {
  const auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it != values.end() && *it == v)
    return probs[static_cast<std::size_t>(it - values.begin())];
  return 0.0;
}

SurvivalEstimate survival_probability_mc(const WalkSpec& spec,
                                         std::uint64_t trials,
                                         RandomStream& rng) {
  if (trials == 0)
    throw std::invalid_argument("survival_probability_mc: trials >= 1");
  if (spec.start < 1)
    throw std::invalid_argument("walk: start must be >= 1");
  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::int64_t pos = spec.start;
    bool alive = true;
    for (std::uint64_t t = 0; t < spec.horizon; ++t) {
      pos += static_cast<std::int64_t>(spec.offspring.sample(rng)) - 1;
      if (pos <= 0) {
        alive = false;
        break;
      }
    }
    if (alive) ++successes;
  }
  const ConfidenceInterval ci = clopper_pearson(successes, trials);
  return SurvivalEstimate{trials, successes,
                          static_cast<double>(successes) /
                              static_cast<double>(trials),
                          ci.low, ci.high};
}

double survival_probability_exact(const StepDistribution& steps,
                                  std::int64_t start, std::uint64_t horizon) {
  if (start < 1) throw std::invalid_argument("walk: start must be >= 1");
  const std::int64_t max_pos =
      start + std::max<std::int64_t>(steps.max_step(), 0) *
                  static_cast<std::int64_t>(horizon);
  check_state_budget(max_pos, horizon);
  const std::vector<double> final_mass =
      survival_dp<double>(steps.values, steps.probs, start, horizon, max_pos);
  double total = 0.0;
  for (double m : final_mass) total += m;
  return total;
}

double survival_probability_exact(const WalkSpec& spec) {
  return survival_probability_exact(
      StepDistribution::from_offspring(spec.offspring), spec.start,
      spec.horizon);
}

BallotReport verify_ballot(const StepDistribution& steps, std::int64_t r,
                           std::uint64_t horizon) {
  if (r < 1) throw std::invalid_argument("verify_ballot: r must be >= 1");
  const double p_r = steps.prob_of(r);
  if (p_r <= 0.0)
    throw std::invalid_argument("verify_ballot: requires P(step = r) > 0");

  const std::int64_t max_step = std::max<std::int64_t>(steps.max_step(), 0);
  const std::int64_t max_pos =
      r + max_step * static_cast<std::int64_t>(horizon);
  check_state_budget(max_pos, horizon + 1);

  const std::vector<Rational> rprobs = normalized_rational_probs(steps.probs);

  // Endpoint-resolved survival mass: positions are r + S_t.
  const std::vector<Rational> lhs =
      survival_dp<Rational>(steps.values, rprobs, r, horizon, max_pos);

  // Unconstrained law of S_{horizon+1}.
  std::int64_t min_sum = 0;
  const std::vector<Rational> sums =
      sum_dp<Rational>(steps.values, rprobs, horizon + 1, min_sum);

  Rational p_r_exact = 0;
  for (std::size_t i = 0; i < steps.values.size(); ++i)
    if (steps.values[i] == r) p_r_exact = rprobs[i];

  const std::int64_t rhs_max =
      min_sum + static_cast<std::int64_t>(sums.size()) - 1;
  const std::int64_t j_top = std::max(max_pos, rhs_max);

  BallotReport report;
  report.r = r;
  report.horizon = horizon;
  report.p_step_r = static_cast<double>(p_r_exact);
  report.all_ok = true;
  Rational lhs_total = 0;

  for (std::int64_t j = 1; j <= j_top; ++j) {
    Rational lhs_j = 0;
    if (j <= max_pos) lhs_j = lhs[static_cast<std::size_t>(j)];
    Rational sum_j = 0;
    if (j >= min_sum && j <= rhs_max)
      sum_j = sums[static_cast<std::size_t>(j - min_sum)];
    const Rational rhs_j = sum_j * Rational(j) /
                           (Rational(static_cast<std::int64_t>(horizon) + 1) *
                            p_r_exact);
    lhs_total += lhs_j;
    if (lhs_j == 0 && rhs_j == 0) continue;
    BallotRow row;
    row.j = j;
    row.lhs = static_cast<double>(lhs_j);
    row.rhs = static_cast<double>(rhs_j);
    row.margin = static_cast<double>(rhs_j - lhs_j);
    row.ok = lhs_j <= rhs_j;
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(row);
  }
  report.lhs_total = static_cast<double>(lhs_total);
  return report;
}

}  // namespace critgraph
