#include "critgraph/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace critgraph {

ConfidenceInterval clopper_pearson(std::uint64_t successes,
                                   std::uint64_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("clopper_pearson: no trials");
  if (successes > trials)
    throw std::invalid_argument("clopper_pearson: successes > trials");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("clopper_pearson: confidence in (0,1)");
  const double alpha = 1.0 - confidence;
  const double s = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  ConfidenceInterval ci;
  ci.low = successes == 0
               ? 0.0
               : boost::math::ibeta_inv(s, n - s + 1.0, alpha / 2.0);
  ci.high = successes == trials
                ? 1.0
                : boost::math::ibeta_inv(s + 1.0, n - s, 1.0 - alpha / 2.0);
  return ci;
}

double binomial_standard_error(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("standard_error: no trials");
  const double p =
      static_cast<double>(successes) / static_cast<double>(trials);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double chi_squared_quantile(double probability, double degrees_of_freedom) {
  boost::math::chi_squared dist(degrees_of_freedom);
  return boost::math::quantile(dist, probability);
}

}  // namespace critgraph
