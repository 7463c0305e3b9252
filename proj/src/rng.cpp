#include "critgraph/rng.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critgraph {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t mask =
      ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    const std::uint64_t x = next_u64() & mask;
    if (x < n) return x;
  }
}

std::uint64_t RandomStream::binomial(std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  const double u = uniform01();
  double pmf = std::exp(static_cast<double>(n) * std::log1p(-q));
  double cdf = pmf;
  const double ratio = q / (1.0 - q);
  std::uint64_t k = 0;
  while (u > cdf && k < n) {
    pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
  }
  return flip ? n - k : k;
}

std::uint64_t RandomStream::poisson(double lambda) {
  return poisson(lambda, std::exp(-lambda));
}

std::uint64_t RandomStream::poisson(double lambda, double exp_neg_lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda > 700.0)
    throw std::invalid_argument("poisson: lambda too large for inversion");
  const double u = uniform01();
  double pmf = exp_neg_lambda;
  double cdf = pmf;
  std::uint64_t k = 0;
  // cdf saturates well before k ~ lambda + 40 sqrt(lambda); the hard cap
  // only guards against pmf underflow at u extremely close to 1.
  const std::uint64_t cap = static_cast<std::uint64_t>(lambda + 1.0) * 4 + 200;
  while (u > cdf && k < cap) {
    ++k;
    pmf *= lambda / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::uint64_t RandomStream::geometric_skip(double p) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
  const double u = uniform01_pos();
  const double g = std::floor(std::log(u) / std::log1p(-p));
  if (g >= 9.0e18) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(g);
}

}  // namespace critgraph
