#pragma once

#include <cstdint>

namespace critgraph {

struct ConfidenceInterval {
  double low;
  double high;
};

// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
// Preferred over the normal approximation here because the estimated
// probabilities sit near zero.
ConfidenceInterval clopper_pearson(std::uint64_t successes,
                                   std::uint64_t trials,
                                   double confidence = 0.99);

// sqrt(p(1-p)/trials) with p = successes/trials.
double binomial_standard_error(std::uint64_t successes, std::uint64_t trials);

// Upper quantile of the chi-squared distribution (tests use it for
// goodness-of-fit thresholds).
double chi_squared_quantile(double probability, double degrees_of_freedom);

}  // namespace critgraph
