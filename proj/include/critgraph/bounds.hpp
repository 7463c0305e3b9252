#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "critgraph/models.hpp"
#include "critgraph/offspring.hpp"

namespace critgraph {

// Certified parameters for the dominating-walk tail bound: the offspring
// law must satisfy P(X = 3) = p3 > 0 and
//   E(exp(rX)) <= exp(r (1 + epsilon) + r^2 delta)  for r in (0, rho),
// and the target size k must satisfy epsilon sqrt(k) <= c_precondition
// and rho sqrt(k) >= 1. The bound constant is C = 1 + 3 e^{delta+2c-1}.
struct BoundParams {
  double delta = 0.0;
  double rho = 0.0;
  double epsilon = 0.0;
  double c_precondition = 0.0;
  double p3 = 0.0;
  double C = 0.0;
  // Asymptotic stand-in E(e^{-W*} (W*)^3)/12 for the mixed-Poisson model
  // (half the exact finite-n p3); reported alongside, never used in the
  // bound itself.
  std::optional<double> p3_asymptotic_proxy;
};

BoundParams make_bound_params(double delta, double rho, double epsilon,
                              double c_precondition, double p3);

// Certified parameter sets per model:
//   Erdos-Renyi (stand-in):  delta=1, rho=1, epsilon=max(0,lambda) n^{-1/3}
//   intersection (mu=1):     delta=1+4 gamma, rho=min(1,1/(2 gamma)), eps=0
//   regular (d>3, p<=1/(d-1)): delta=1, rho=1, eps=0
//   Norros-Reittu (tau>4):   delta=1+5 C1, rho=min(1,1/(2 max w)),
//                            eps=C2 n^{-(tau-3)/(tau-1)},
// with C1, C2 the measured grid suprema from verify_weight_moments.
// c_precondition defaults to 0 when epsilon = 0 and to 1 otherwise.
BoundParams derive_params(const ErConfig& config);
BoundParams derive_params(const IntersectionConfig& config);
BoundParams derive_params(const RegularPercolationConfig& config);
BoundParams derive_params(const NrConfig& config);

// n values over which the weight-moment constants are measured; the
// config's own n is always added.
inline constexpr std::uint64_t kWeightMomentGrid[] = {1000, 10000, 100000,
                                                      1000000};

struct MgfCheckReport {
  double rho;
  std::size_t grid_size;
  double max_violation;  // max over the grid of log-mgf minus the bound
  double tolerance;
  bool pass;
  std::vector<std::pair<double, double>> margins;  // (r, violation)
};

// Evaluates log E(exp(rX)) against r(1+epsilon) + r^2 delta on a uniform
// grid in the open interval (0, rho). A failing check is a report, not
// an error.
MgfCheckReport check_mgf_condition(const OffspringDistribution& dist,
                                   const BoundParams& params,
                                   std::size_t grid_size,
                                   double tolerance = 1e-12);

struct TailBound {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::optional<double> A;  // set when k came from ceil(A n^{2/3})
  double value = 0.0;       // C / p3 * n / k^{3/2}
  bool epsilon_ok = false;  // epsilon sqrt(k) <= c_precondition
  bool rho_ok = false;      // rho sqrt(k) >= 1

  bool certified() const { return epsilon_ok && rho_ok; }
};

// Smallest k with k >= A n^{2/3}, computed so that floating-point error
// cannot shift the integer boundary.
std::uint64_t component_threshold(std::uint64_t n, double A);

// The closed-form tail bound on P(|C_max| > k). Preconditions are
// evaluated and flagged; a failing precondition marks the bound
// non-certified but the value is still computed.
TailBound tail_bound_for_k(std::uint64_t n, std::uint64_t k,
                           const BoundParams& params);
// k = ceil(A n^{2/3}); requires A > 1.
TailBound tail_bound_for_A(std::uint64_t n, double A,
                           const BoundParams& params);

}  // namespace critgraph
