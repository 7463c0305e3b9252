#include "critgraph/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace critgraph {

namespace {

void build_alias(std::span<const double> weights, std::vector<double>& accept,
                 std::vector<std::uint32_t>& alias) {
  const std::size_t n = weights.size();
  double total = 0.0;
  for (double w : weights) total += w;
  accept.assign(n, 0.0);
  alias.assign(n, 0);
  if (total <= 0.0) return;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    scaled[i] = weights[i] * static_cast<double>(n) / total;
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    if (scaled[i] < 1.0)
      small.push_back(static_cast<std::uint32_t>(i));
    else
      large.push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    large.pop_back();
    accept[s] = scaled[s];
    alias[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0)
      small.push_back(l);
    else
      large.push_back(l);
  }
  for (std::uint32_t v : large) {
    accept[v] = 1.0;
    alias[v] = v;
  }
  for (std::uint32_t v : small) {
    accept[v] = 1.0;
    alias[v] = v;
  }
}

std::uint32_t alias_sample(std::span<const double> accept,
                           std::span<const std::uint32_t> alias,
                           RandomStream& rng) {
  const auto idx =
      static_cast<std::uint32_t>(rng.uniform_below(accept.size()));
  return rng.uniform01() < accept[idx] ? idx : alias[idx];
}

// Binomial pmf values b(0..j_max) for Bin(trials, p), by the stable
// recurrence from b(0) = (1-p)^trials.
std::vector<double> binomial_pmf_prefix(std::uint64_t trials, double p,
                                        std::uint64_t j_max) {
  std::vector<double> out(j_max + 1, 0.0);
  if (p <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (p >= 1.0) {
    if (trials <= j_max) out[trials] = 1.0;
    return out;
  }
  const double log_q = std::log1p(-p);
  out[0] = std::exp(static_cast<double>(trials) * log_q);
  const double ratio = p / (1.0 - p);
  const std::uint64_t top = std::min(trials, j_max);
  for (std::uint64_t j = 0; j < top; ++j) {
    out[j + 1] = out[j] * ratio * static_cast<double>(trials - j) /
                 static_cast<double>(j + 1);
  }
  // For very large `trials` the recurrence can underflow at j=0 while
  // later terms are sizable; fall back to logs if b(0) vanished.
  if (out[0] == 0.0) {
    for (std::uint64_t j = 0; j <= top; ++j) {
      double log_b = std::lgamma(static_cast<double>(trials) + 1.0) -
                     std::lgamma(static_cast<double>(j) + 1.0) -
                     std::lgamma(static_cast<double>(trials - j) + 1.0) +
                     static_cast<double>(j) * std::log(p) +
                     static_cast<double>(trials - j) * log_q;
      out[j] = std::exp(log_b);
    }
  }
  return out;
}

// Coefficients of base(s)^e truncated at degree j_max.
std::vector<double> poly_pow_truncated(std::vector<double> base,
                                       std::uint64_t e,
                                       std::uint64_t j_max) {
  const std::size_t len = static_cast<std::size_t>(j_max) + 1;
  base.resize(len, 0.0);
  std::vector<double> result(len, 0.0);
  result[0] = 1.0;
  std::vector<double> tmp(len, 0.0);
  auto mul = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < len; ++j) tmp[i + j] += a[i] * b[j];
    }
    return tmp;
  };
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    if (e >>= 1) base = mul(base, base);
  }
  return result;
}

double log_sum_exp(std::span<const double> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

}  // namespace

OffspringDistribution OffspringDistribution::binomial(std::uint64_t trials,
                                                      double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("offspring: p must lie in [0,1]");
  return OffspringDistribution(Impl{Binomial{trials, p}});
}

OffspringDistribution OffspringDistribution::compound_binomial(
    std::uint64_t outer_trials, double p, std::uint64_t inner_trials) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("offspring: p must lie in [0,1]");
  return OffspringDistribution(Impl{Compound{outer_trials, p, inner_trials}});
}

OffspringDistribution OffspringDistribution::mixed_poisson(
    std::vector<double> weights) {
  if (weights.empty())
    throw std::invalid_argument("offspring: weights must be non-empty");
  Mixed m;
  m.total_weight = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw std::invalid_argument("offspring: weights must be >= 0");
    m.total_weight += w;
  }
  if (m.total_weight <= 0.0)
    throw std::invalid_argument("offspring: all-zero weight vector");
  m.exp_neg_w.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    m.exp_neg_w[i] = std::exp(-weights[i]);
  build_alias(weights, m.accept, m.alias);
  m.weights = std::move(weights);
  return OffspringDistribution(Impl{std::move(m)});
}

OffspringDistribution OffspringDistribution::explicit_finite(
    std::vector<std::uint64_t> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("offspring: values/probs size mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Explicit e;
  double total = 0.0;
  for (std::size_t idx : order) {
    if (!(probs[idx] >= 0.0))
      throw std::invalid_argument("offspring: probabilities must be >= 0");
    if (!e.values.empty() && e.values.back() == values[idx])
      throw std::invalid_argument("offspring: duplicate support point");
    e.values.push_back(values[idx]);
    e.probs.push_back(probs[idx]);
    total += probs[idx];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("offspring: probabilities must sum to 1");
  build_alias(e.probs, e.accept, e.alias);
  return OffspringDistribution(Impl{std::move(e)});
}

OffspringKind OffspringDistribution::kind() const {
  switch (impl_.index()) {
    case 0: return OffspringKind::Binomial;
    case 1: return OffspringKind::CompoundBinomial;
    case 2: return OffspringKind::MixedPoisson;
    default: return OffspringKind::Explicit;
  }
}

std::uint64_t OffspringDistribution::sample(RandomStream& rng) const {
  return std::visit(
      [&rng](const auto& d) -> std::uint64_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return rng.binomial(d.trials, d.p);
        } else if constexpr (std::is_same_v<T, Compound>) {
          const std::uint64_t k = rng.binomial(d.outer_trials, d.p);
          std::uint64_t total = 0;
          for (std::uint64_t i = 0; i < k; ++i)
            total += rng.binomial(d.inner_trials, d.p);
          return total;
        } else if constexpr (std::is_same_v<T, Mixed>) {
          const std::uint32_t m = alias_sample(d.accept, d.alias, rng);
          return rng.poisson(d.weights[m], d.exp_neg_w[m]);
        } else {
          return d.values[alias_sample(d.accept, d.alias, rng)];
        }
      },
      impl_);
}

std::vector<double> OffspringDistribution::pmf_table(
    std::uint64_t j_max) const {
  return std::visit(
      [j_max](const auto& d) -> std::vector<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return binomial_pmf_prefix(d.trials, d.p, j_max);
        } else if constexpr (std::is_same_v<T, Compound>) {
          // pgf {1 - p + p (1 - p + p s)^t}^m truncated at degree j_max;
          // the inner polynomial's coefficients are the Bin(t, p) pmf.
          std::vector<double> inner =
              binomial_pmf_prefix(d.inner_trials, d.p, j_max);
          for (double& c : inner) c *= d.p;
          inner[0] += 1.0 - d.p;
          return poly_pow_truncated(std::move(inner), d.outer_trials, j_max);
        } else if constexpr (std::is_same_v<T, Mixed>) {
          // P(X=j) = sum_i (w_i/l) e^{-w_i} w_i^j / j!, built iteratively
          // over j for all weights at once.
          std::vector<double> out(j_max + 1, 0.0);
          std::vector<double> term(d.weights.size());
          for (std::size_t i = 0; i < d.weights.size(); ++i) {
            term[i] = d.weights[i] / d.total_weight * d.exp_neg_w[i];
            out[0] += term[i];
          }
          for (std::uint64_t j = 1; j <= j_max; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.weights.size(); ++i) {
              term[i] *= d.weights[i] / static_cast<double>(j);
              acc += term[i];
            }
            out[j] = acc;
          }
          return out;
        } else {
          std::vector<double> out(j_max + 1, 0.0);
          for (std::size_t i = 0; i < d.values.size(); ++i)
            if (d.values[i] <= j_max) out[d.values[i]] = d.probs[i];
          return out;
        }
      },
      impl_);
}

double OffspringDistribution::pmf(std::uint64_t j) const {
  if (const auto* e = std::get_if<Explicit>(&impl_)) {
    const auto it = std::lower_bound(e->values.begin(), e->values.end(), j);
    if (it != e->values.end() && *it == j)
      return e->probs[static_cast<std::size_t>(it - e->values.begin())];
    return 0.0;
  }
  if (const auto* b = std::get_if<Binomial>(&impl_)) {
    if (j > b->trials) return 0.0;
  }
  if (const auto* c = std::get_if<Compound>(&impl_)) {
    if (j > c->outer_trials * c->inner_trials) return 0.0;
  }
  return pmf_table(j)[j];
}

double OffspringDistribution::mgf_log(double r) const {
  return std::visit(
      [r](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return static_cast<double>(d.trials) *
                 std::log1p(d.p * std::expm1(r));
        } else if constexpr (std::is_same_v<T, Compound>) {
          const double inner_log = static_cast<double>(d.inner_trials) *
                                   std::log1p(d.p * std::expm1(r));
          // log(1 - p + p e^{inner_log}) = log1p(p expm1(inner_log))
          return static_cast<double>(d.outer_trials) *
                 std::log1p(d.p * std::expm1(inner_log));
        } else if constexpr (std::is_same_v<T, Mixed>) {
          const double growth = std::expm1(r);
          std::vector<double> terms;
          terms.reserve(d.weights.size());
          for (std::size_t i = 0; i < d.weights.size(); ++i) {
            const double w = d.weights[i];
            if (w <= 0.0) continue;
            terms.push_back(std::log(w / d.total_weight) + w * growth);
          }
          return log_sum_exp(terms);
        } else {
          std::vector<double> terms;
          terms.reserve(d.values.size());
          for (std::size_t i = 0; i < d.values.size(); ++i) {
            if (d.probs[i] <= 0.0) continue;
            terms.push_back(std::log(d.probs[i]) +
                            r * static_cast<double>(d.values[i]));
          }
          return log_sum_exp(terms);
        }
      },
      impl_);
}

double OffspringDistribution::mgf(double r) const {
  return std::exp(mgf_log(r));
}

double OffspringDistribution::mean() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return static_cast<double>(d.trials) * d.p;
        } else if constexpr (std::is_same_v<T, Compound>) {
          return static_cast<double>(d.outer_trials) * d.p *
                 static_cast<double>(d.inner_trials) * d.p;
        } else if constexpr (std::is_same_v<T, Mixed>) {
          double s2 = 0.0;
          for (double w : d.weights) s2 += w * w;
          return s2 / d.total_weight;
        } else {
          double m = 0.0;
          for (std::size_t i = 0; i < d.values.size(); ++i)
            m += static_cast<double>(d.values[i]) * d.probs[i];
          return m;
        }
      },
      impl_);
}

double OffspringDistribution::variance() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return static_cast<double>(d.trials) * d.p * (1.0 - d.p);
        } else if constexpr (std::is_same_v<T, Compound>) {
          const double inner_mean = static_cast<double>(d.inner_trials) * d.p;
          const double inner_var =
              static_cast<double>(d.inner_trials) * d.p * (1.0 - d.p);
          const double outer_mean = static_cast<double>(d.outer_trials) * d.p;
          const double outer_var =
              static_cast<double>(d.outer_trials) * d.p * (1.0 - d.p);
          return outer_mean * inner_var + outer_var * inner_mean * inner_mean;
        } else if constexpr (std::is_same_v<T, Mixed>) {
          double s2 = 0.0, s3 = 0.0;
          for (double w : d.weights) {
            s2 += w * w;
            s3 += w * w * w;
          }
          const double mean = s2 / d.total_weight;
          const double lambda_second = s3 / d.total_weight;
          return mean + lambda_second - mean * mean;
        } else {
          double m = 0.0, m2 = 0.0;
          for (std::size_t i = 0; i < d.values.size(); ++i) {
            const double v = static_cast<double>(d.values[i]);
            m += v * d.probs[i];
            m2 += v * v * d.probs[i];
          }
          return m2 - m * m;
        }
      },
      impl_);
}

std::optional<std::uint64_t> OffspringDistribution::max_support() const {
  return std::visit(
      [](const auto& d) -> std::optional<std::uint64_t> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Binomial>) {
          return d.trials;
        } else if constexpr (std::is_same_v<T, Compound>) {
          return d.outer_trials * d.inner_trials;
        } else if constexpr (std::is_same_v<T, Mixed>) {
          return std::nullopt;
        } else {
          return d.values.back();
        }
      },
      impl_);
}

OffspringDistribution offspring_for(const ErConfig& config) {
  return OffspringDistribution::binomial(config.n - 1, config.p);
}

OffspringDistribution offspring_for(const IntersectionConfig& config) {
  return OffspringDistribution::compound_binomial(config.m(), config.p(),
                                                  config.n - 1);
}

OffspringDistribution offspring_for(const RegularPercolationConfig& config) {
  return OffspringDistribution::binomial(config.d - 1, config.p);
}

OffspringDistribution offspring_for(const NrConfig& config) {
  return OffspringDistribution::mixed_poisson(config.weights);
}

double regular_p3_closed_form(std::uint32_t d) {
  if (d < 4) return 0.0;
  const double dm1 = static_cast<double>(d) - 1.0;
  return (d - 2.0) * (d - 3.0) / (6.0 * dm1 * dm1) *
         std::pow(1.0 - 1.0 / dm1, static_cast<double>(d) - 4.0);
}

SizeBiasedView size_biased_moments(std::span<const double> weights) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw std::invalid_argument("size_biased_moments: weights must be >= 0");
    s1 += w;
    s2 += w * w;
    s3 += w * w * w;
  }
  if (s1 <= 0.0)
    throw std::invalid_argument("size_biased_moments: all-zero weights");
  return SizeBiasedView{s2 / s1, s3 / s1};
}

WeightMomentRow weight_moment_row(const NrConfig& config) {
  WeightMomentRow row;
  row.n = config.n;
  row.max_weight = 0.0;
  for (double w : config.weights) row.max_weight = std::max(row.max_weight, w);
  row.max_weight_bound =
      std::pow(config.c_f * static_cast<double>(config.n),
               1.0 / (config.tau - 1.0));
  // Exact equality holds for the built-in family; allow rounding slack.
  row.max_weight_ok = row.max_weight <= row.max_weight_bound * (1.0 + 1e-12);
  const SizeBiasedView sb = size_biased_moments(config.weights);
  row.sb_mean = sb.mean;
  row.sb_second_moment = sb.second_moment;
  const double rate_exp = (config.tau - 3.0) / (config.tau - 1.0);
  row.rate_term = std::pow(static_cast<double>(config.n), rate_exp) *
                  std::abs(1.0 - sb.mean);
  return row;
}

WeightMomentReport verify_weight_moments(
    double tau, std::span<const std::uint64_t> n_grid) {
  WeightMomentReport report;
  report.tau = tau;
  report.c1_estimate = 0.0;
  report.c2_estimate = 0.0;
  report.all_max_weight_ok = true;
  for (std::uint64_t n : n_grid) {
    const NrConfig cfg = nr_weights(static_cast<Vertex>(n), tau);
    WeightMomentRow row = weight_moment_row(cfg);
    report.c1_estimate = std::max(report.c1_estimate, row.sb_second_moment);
    report.c2_estimate = std::max(report.c2_estimate, row.rate_term);
    report.all_max_weight_ok = report.all_max_weight_ok && row.max_weight_ok;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace critgraph
