#include "critgraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critgraph {

BoundParams make_bound_params(double delta, double rho, double epsilon,
                              double c_precondition, double p3) {
  if (!(delta > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("bound params: delta, rho must be positive");
  if (!(epsilon >= 0.0) || !(c_precondition >= 0.0))
    throw std::invalid_argument(
        "bound params: epsilon, c_precondition must be >= 0");
  if (!(p3 > 0.0 && p3 <= 1.0))
    throw std::invalid_argument("bound params: p3 must lie in (0,1]");
  BoundParams params;
  params.delta = delta;
  params.rho = rho;
  params.epsilon = epsilon;
  params.c_precondition = c_precondition;
  params.p3 = p3;
  params.C = 1.0 + 3.0 * std::exp(delta + 2.0 * c_precondition - 1.0);
  return params;
}

BoundParams derive_params(const ErConfig& config) {
  if (config.n < 2) throw std::invalid_argument("derive_params: n >= 2");
  const double lambda = config.lambda.value_or(0.0);
  const double epsilon =
      std::max(0.0, lambda) *
      std::pow(static_cast<double>(config.n), -1.0 / 3.0);
  const double p3 = offspring_for(config).p3();
  return make_bound_params(1.0, 1.0, epsilon, epsilon > 0.0 ? 1.0 : 0.0, p3);
}

BoundParams derive_params(const IntersectionConfig& config) {
  if (config.n < 2) throw std::invalid_argument("derive_params: n >= 2");
  if (std::abs(config.mu() - 1.0) > 1e-12)
    throw std::invalid_argument(
        "derive_params: intersection bound needs beta * gamma^2 = 1");
  const double gamma = config.gamma;
  const double delta = 1.0 + 4.0 * gamma;
  const double rho = std::min(1.0, 1.0 / (2.0 * gamma));
  const double p3 = offspring_for(config).p3();
  return make_bound_params(delta, rho, 0.0, 0.0, p3);
}

BoundParams derive_params(const RegularPercolationConfig& config) {
  if (config.d <= 3)
    throw std::invalid_argument(
        "derive_params: regular bound needs d > 3 (P(X=3) vanishes "
        "otherwise)");
  if (config.p > 1.0 / (config.d - 1.0) + 1e-15)
    throw std::invalid_argument(
        "derive_params: regular bound needs p <= 1/(d-1)");
  const double p3 = offspring_for(config).p3();
  return make_bound_params(1.0, 1.0, 0.0, 0.0, p3);
}

BoundParams derive_params(const NrConfig& config) {
  if (!config.pareto_family)
    throw std::invalid_argument(
        "derive_params: constants are only measured for the built-in "
        "weight family");
  if (!(config.tau > 4.0))
    throw std::invalid_argument("derive_params: tau must exceed 4");

  std::vector<std::uint64_t> grid(std::begin(kWeightMomentGrid),
                                  std::end(kWeightMomentGrid));
  if (std::find(grid.begin(), grid.end(), config.n) == grid.end())
    grid.push_back(config.n);
  std::sort(grid.begin(), grid.end());
  const WeightMomentReport moments = verify_weight_moments(config.tau, grid);

  const double delta = 1.0 + 5.0 * moments.c1_estimate;
  const double rho = std::min(1.0, 1.0 / (2.0 * config.max_weight()));
  const double rate_exp = (config.tau - 3.0) / (config.tau - 1.0);
  const double epsilon =
      moments.c2_estimate *
      std::pow(static_cast<double>(config.n), -rate_exp);

  const double p3 = offspring_for(config).p3();
  BoundParams params =
      make_bound_params(delta, rho, epsilon, epsilon > 0.0 ? 1.0 : 0.0, p3);
  params.p3_asymptotic_proxy = p3 / 2.0;
  return params;
}

MgfCheckReport check_mgf_condition(const OffspringDistribution& dist,
                                   const BoundParams& params,
                                   std::size_t grid_size, double tolerance) {
  if (grid_size < 2)
    throw std::invalid_argument("check_mgf_condition: grid_size >= 2");
  MgfCheckReport report;
  report.rho = params.rho;
  report.grid_size = grid_size;
  report.tolerance = tolerance;
  report.max_violation = -std::numeric_limits<double>::infinity();
  report.margins.reserve(grid_size);
  for (std::size_t i = 1; i <= grid_size; ++i) {
    const double r = params.rho * static_cast<double>(i) /
                     static_cast<double>(grid_size + 1);
    const double lhs = dist.mgf_log(r);
    const double rhs = r * (1.0 + params.epsilon) + r * r * params.delta;
    const double violation = lhs - rhs;
    report.margins.emplace_back(r, violation);
    report.max_violation = std::max(report.max_violation, violation);
  }
  report.pass = report.max_violation <= tolerance;
  return report;
}

std::uint64_t component_threshold(std::uint64_t n, double A) {
  if (!(A > 0.0))
    throw std::invalid_argument("component_threshold: A must be positive");
  const long double target =
      static_cast<long double>(A) * powl(static_cast<long double>(n),
                                         2.0L / 3.0L);
  std::uint64_t k = static_cast<std::uint64_t>(ceill(target));
  if (k == 0) k = 1;
  // Settle the boundary exactly: k is minimal with k^3 >= A^3 n^2.
  const long double cube_target = static_cast<long double>(A) *
                                  static_cast<long double>(A) *
                                  static_cast<long double>(A) *
                                  static_cast<long double>(n) *
                                  static_cast<long double>(n);
  auto cube = [](std::uint64_t x) {
    return static_cast<long double>(x) * static_cast<long double>(x) *
           static_cast<long double>(x);
  };
  while (k > 1 && cube(k - 1) >= cube_target) --k;
  while (cube(k) < cube_target) ++k;
  return k;
}

TailBound tail_bound_for_k(std::uint64_t n, std::uint64_t k,
                           const BoundParams& params) {
  if (k == 0) throw std::invalid_argument("tail bound: k must be positive");
  TailBound bound;
  bound.n = n;
  bound.k = k;
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  bound.epsilon_ok = params.epsilon * sqrt_k <= params.c_precondition;
  bound.rho_ok = params.rho * sqrt_k >= 1.0;
  bound.value = params.C / params.p3 * static_cast<double>(n) /
                std::pow(static_cast<double>(k), 1.5);
  return bound;
}

TailBound tail_bound_for_A(std::uint64_t n, double A,
                           const BoundParams& params) {
  if (!(A > 1.0))
    throw std::invalid_argument("tail bound: A must exceed 1");
  TailBound bound = tail_bound_for_k(n, component_threshold(n, A), params);
  bound.A = A;
  return bound;
}

}  // namespace critgraph
