#pragma once

#include <cstdint>
#include <random>

namespace critgraph {

// Derives an independent stream seed from (master, index) with the
// splitmix64 finalizer. Used for per-trial streams so that results do
// not depend on how trials are split across workers.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 plus hand-rolled samplers. The standard library's
// distribution objects are implementation-defined, so every variate here
// is generated by a fixed algorithm on top of the (fully specified)
// engine; identical seeds give identical streams regardless of the
// standard library in use.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_trial(std::uint64_t master, std::uint64_t trial) {
    return RandomStream(derive_seed(master, trial));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe to pass to log().
  double uniform01_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n); n >= 1. Masked rejection, unbiased.
  std::uint64_t uniform_below(std::uint64_t n);

  // Bin(n, p) by inversion with the pmf recurrence; O(result) expected.
  std::uint64_t binomial(std::uint64_t n, double p);

  // Poi(lambda) by inversion; requires lambda <= 700 so that
  // exp(-lambda) stays normal. exp_neg_lambda = exp(-lambda) may be
  // passed when cached by the caller.
  std::uint64_t poisson(double lambda);
  std::uint64_t poisson(double lambda, double exp_neg_lambda);

  // Number of failures before the next success in Bernoulli(p) trials.
  // Returns a huge sentinel for p <= 0 (no further success).
  std::uint64_t geometric_skip(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace critgraph
