#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "critgraph/exploration.hpp"
#include "critgraph/models.hpp"
#include "critgraph/stats.hpp"
#include "test_util.hpp"

using namespace critgraph;

namespace {

double mean_edge_count(std::uint64_t samples, std::uint64_t seed,
                       const std::function<Graph(RandomStream&)>& gen) {
  double total = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = RandomStream::for_trial(seed, i);
    total += static_cast<double>(gen(rng).edge_count());
  }
  return total / static_cast<double>(samples);
}

// Empirical probability that edge {u,v} shows up.
double edge_frequency(std::uint64_t samples, std::uint64_t seed, Vertex u,
                      Vertex v, const std::function<Graph(RandomStream&)>& gen) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = RandomStream::for_trial(seed, i);
    if (gen(rng).has_edge(u, v)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

bool same_graph(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  for (Vertex v = 0; v < a.vertex_count(); ++v) {
    const auto na = a.neighbors(v);
    const auto nb = b.neighbors(v);
    if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("er p=1 gives the complete graph, p=0 the empty graph") {
  RandomStream rng(1);
  const Graph full = gen_er(ErConfig::with_p(3, 1.0), rng);
  CHECK(full.edge_count() == 3);
  CHECK(largest_component_size(full) == 3);
  const Graph empty = gen_er(ErConfig::with_p(3, 0.0), rng);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("er sparse sampler matches binomial edge counts") {
  // mean within 3 standard errors of C(n,2) p over 1e4 samples at n=100
  const Vertex n = 100;
  const double p = 0.02;
  const std::uint64_t samples = 10000;
  const double pairs = n * (n - 1) / 2.0;
  const double expected = pairs * p;
  const double se = std::sqrt(pairs * p * (1 - p) / samples);
  const ErConfig cfg = ErConfig::with_p(n, p);
  const double mean = mean_edge_count(samples, 7, [&](RandomStream& rng) {
    return gen_er(cfg, rng);
  });
  CHECK(std::abs(mean - expected) < 3.0 * se);
}

TEST_CASE("er sparse and dense samplers agree in distribution") {
  const ErConfig cfg = ErConfig::with_p(30, 0.1);
  const std::uint64_t samples = 3000;
  const double pairs = 30 * 29 / 2.0;
  const double se = std::sqrt(pairs * 0.1 * 0.9 / samples);
  const double fast = mean_edge_count(samples, 11, [&](RandomStream& rng) {
    return gen_er(cfg, rng);
  });
  const double dense = mean_edge_count(samples, 12, [&](RandomStream& rng) {
    return gen_er_dense(cfg, rng);
  });
  CHECK(std::abs(fast - dense) < 4.0 * se * std::sqrt(2.0));
  CHECK(std::abs(fast - pairs * 0.1) < 4.0 * se);
}

TEST_CASE("critical window p formula and clamping") {
  const ErConfig cfg = ErConfig::critical_window(1000, 2.0);
  CHECK(cfg.p == doctest::Approx(1.0 / 1000 + 2.0 * std::pow(1000.0, -4.0 / 3.0))
                     .epsilon(1e-14));
  REQUIRE(cfg.lambda.has_value());
  const ErConfig clamped = ErConfig::critical_window(2, -100.0);
  CHECK(clamped.p == 0.0);
}

TEST_CASE("generators are deterministic given the seed") {
  const ErConfig er = ErConfig::with_p(60, 0.05);
  const IntersectionConfig ig{60, 1.0, 1.0};
  const RegularPercolationConfig rp{4, 60, 1.0 / 3.0, RegularBase::Circulant};
  const NrConfig nr = nr_weights(60, 5.0);
  for (int rep = 0; rep < 3; ++rep) {
    RandomStream a(42), b(42);
    CHECK(same_graph(gen_er(er, a), gen_er(er, b)));
    RandomStream c(43), d(43);
    CHECK(same_graph(gen_intersection(ig, c), gen_intersection(ig, d)));
    RandomStream e(44), f(44);
    CHECK(same_graph(gen_regular_percolation(rp, e),
                     gen_regular_percolation(rp, f)));
    RandomStream g(45), h(45);
    CHECK(same_graph(gen_nr(nr, g), gen_nr(nr, h)));
  }
}

TEST_CASE("all generators produce valid simple graphs") {
  RandomStream rng(5150);
  for (int i = 0; i < 30; ++i) {
    CHECK(gen_er(ErConfig::with_p(40, 0.08), rng).is_valid());
    CHECK(gen_intersection({40, 1.0, 1.2}, rng).is_valid());
    CHECK(gen_regular_percolation({4, 40, 0.4, RegularBase::Circulant}, rng)
              .is_valid());
    CHECK(gen_nr(nr_weights(40, 5.0), rng).is_valid());
  }
}

TEST_CASE("intersection graph edge cases") {
  RandomStream rng(2);
  CHECK(gen_intersection({5, 1.0, 0.0}, rng).edge_count() == 0);
  // one auxiliary adjacent to every vertex projects to a complete graph
  const Graph k3 = gen_intersection({3, 0.5, 3.0}, rng);  // m=1, p=1
  CHECK(k3.edge_count() == 3);
}

TEST_CASE("intersection edge probability: both bipartite edges needed") {
  // n=2, m=1, p=1/2: the single pair is adjacent iff the auxiliary picked
  // both endpoints, probability 1/4.
  const IntersectionConfig cfg{2, 0.6, 1.0};  // m = floor(1.2) = 1, p = 1/2
  REQUIRE(cfg.m() == 1);
  REQUIRE(cfg.p() == doctest::Approx(0.5));
  const std::uint64_t samples = 40000;
  const double freq = edge_frequency(samples, 21, 0, 1, [&](RandomStream& rng) {
    return gen_intersection(cfg, rng);
  });
  const double se = std::sqrt(0.25 * 0.75 / samples);
  CHECK(std::abs(freq - 0.25) < 4.0 * se);
}

TEST_CASE("intersection edge probability with two auxiliaries") {
  // P(edge) = 1 - (1 - p^2)^m exactly
  const IntersectionConfig cfg{3, 0.7, 1.2};  // m = 2, p = 0.4
  REQUIRE(cfg.m() == 2);
  const double exact = 1.0 - std::pow(1.0 - 0.16, 2);
  const std::uint64_t samples = 40000;
  const double freq = edge_frequency(samples, 22, 0, 2, [&](RandomStream& rng) {
    return gen_intersection(cfg, rng);
  });
  const double se = std::sqrt(exact * (1 - exact) / samples);
  CHECK(std::abs(freq - exact) < 4.0 * se);
}

TEST_CASE("circulant bases are exactly d-regular") {
  RandomStream rng(3);
  for (auto [d, n] : std::vector<std::pair<std::uint32_t, Vertex>>{
           {2, 5}, {4, 11}, {3, 8}, {5, 12}, {6, 20}}) {
    const Graph base = regular_base_graph({d, n, 1.0}, rng);
    for (Vertex v = 0; v < n; ++v) CHECK(base.degree(v) == d);
  }
}

TEST_CASE("cycle base with p=1 is a single cycle") {
  RandomStream rng(4);
  const Graph g =
      gen_regular_percolation({2, 5, 1.0, RegularBase::Circulant}, rng);
  CHECK(g.edge_count() == 5);
  const auto sizes = component_sizes_bfs(g);
  CHECK(sizes == std::vector<std::uint32_t>{5});
}

TEST_CASE("percolation with p=0 keeps nothing") {
  RandomStream rng(5);
  CHECK(gen_regular_percolation({4, 12, 0.0, RegularBase::Circulant}, rng)
            .edge_count() == 0);
}

TEST_CASE("random regular base passes the degree audit") {
  RandomStream rng(6);
  const Graph base =
      regular_base_graph({4, 1000, 1.0, RegularBase::RandomRegular}, rng);
  for (Vertex v = 0; v < 1000; ++v) CHECK(base.degree(v) == 4);
  CHECK(base.is_valid());
}

TEST_CASE("complete base is K_n") {
  RandomStream rng(7);
  const Graph k5 = regular_base_graph({4, 5, 1.0, RegularBase::Complete}, rng);
  CHECK(k5.edge_count() == 10);
}

TEST_CASE("infeasible regular configurations are rejected") {
  RandomStream rng(8);
  CHECK_THROWS_AS(regular_base_graph({3, 7, 0.5, RegularBase::Circulant}, rng),
                  std::invalid_argument);  // odd d, odd n
  CHECK_THROWS_AS(regular_base_graph({5, 5, 0.5, RegularBase::Circulant}, rng),
                  std::invalid_argument);  // d >= n
  CHECK_THROWS_AS(regular_base_graph({3, 6, 0.5, RegularBase::Complete}, rng),
                  std::invalid_argument);  // complete needs d = n-1
  CHECK_THROWS_AS(
      regular_base_graph({3, 7, 0.5, RegularBase::RandomRegular}, rng),
      std::invalid_argument);  // odd n*d
}

TEST_CASE("weight sequence of the critical family") {
  const NrConfig cfg = nr_weights(4, 5.0);
  REQUIRE(cfg.weights.size() == 4);
  CHECK(cfg.weights[0] == doctest::Approx(0.9428090415820634).epsilon(1e-12));
  CHECK(cfg.weights[1] == doctest::Approx(0.7928047433351473).epsilon(1e-12));
  CHECK(cfg.weights[2] == doctest::Approx(0.7163799545490277).epsilon(1e-12));
  CHECK(cfg.weights[3] == 0.0);
  CHECK(cfg.scale == doctest::Approx(2.0 / 3.0));

  // non-increasing with w_n = 0, max weight saturates the tail bound
  for (auto [n, tau] : std::vector<std::pair<Vertex, double>>{
           {10, 4.5}, {100, 5.0}, {1000, 6.0}}) {
    const NrConfig c = nr_weights(n, tau);
    for (std::size_t j = 1; j < c.weights.size(); ++j)
      CHECK(c.weights[j] <= c.weights[j - 1]);
    CHECK(c.weights.back() == 0.0);
    const double bound =
        std::pow(c.c_f * static_cast<double>(n), 1.0 / (tau - 1.0));
    CHECK(c.max_weight() == doctest::Approx(bound).epsilon(1e-12));
  }
  CHECK_THROWS_AS(nr_weights(10, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(nr_weights(10, 3.5), std::invalid_argument);
}

TEST_CASE("criticality parameter nu") {
  // critical scale: nu = 1 for any tau > 4
  for (double tau : {4.5, 5.0, 6.0}) {
    const NuReport r = nr_nu(nr_weights(100, tau));
    REQUIRE(r.analytic.has_value());
    CHECK(*r.analytic == doctest::Approx(1.0).epsilon(1e-12));
  }
  // unscaled Pareto (a=1): nu = (tau-2)/(tau-3) = 3/2 at tau = 5
  const NuReport unscaled = nr_nu(nr_weights(100, 5.0, 1.0));
  CHECK(*unscaled.analytic == doctest::Approx(1.5).epsilon(1e-12));
  // finite-n surrogate approaches 1 for the critical family
  const NuReport big = nr_nu(nr_weights(1000000, 5.0));
  CHECK(std::abs(big.empirical - 1.0) < 2e-3);
  const NuReport small = nr_nu(nr_weights(1000, 5.0));
  CHECK(std::abs(small.empirical - 1.0) <
        10.0 * std::abs(big.empirical - 1.0) + 0.05);
}

TEST_CASE("nr edge probability matches 1 - exp(-w_i w_j / l_n)") {
  // custom weights (1,1): p = 1 - e^{-1/2}
  const NrConfig cfg = NrConfig::custom({1.0, 1.0});
  const double exact = -std::expm1(-0.5);
  CHECK(exact == doctest::Approx(0.3934693402873666));
  const std::uint64_t samples = 40000;
  const NrSampler sampler(cfg);
  const double fast = edge_frequency(samples, 31, 0, 1, [&](RandomStream& rng) {
    return sampler.sample(rng);
  });
  const double dense = edge_frequency(samples, 32, 0, 1, [&](RandomStream& rng) {
    return gen_nr_dense(cfg, rng);
  });
  const double se = std::sqrt(exact * (1 - exact) / samples);
  CHECK(std::abs(fast - exact) < 4.0 * se);
  CHECK(std::abs(dense - exact) < 4.0 * se);
}

TEST_CASE("nr symmetric three-vertex case") {
  const NrConfig cfg = NrConfig::custom({1.0, 1.0, 1.0});
  const double exact = -std::expm1(-1.0 / 3.0);
  const std::uint64_t samples = 30000;
  const NrSampler sampler(cfg);
  for (auto [u, v] :
       std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {1, 2}}) {
    const double freq = edge_frequency(samples, 33, u, v, [&](RandomStream& rng) {
      return sampler.sample(rng);
    });
    const double se = std::sqrt(exact * (1 - exact) / samples);
    CHECK(std::abs(freq - exact) < 4.0 * se);
  }
}

TEST_CASE("zero-weight vertices stay isolated") {
  const NrConfig cfg = nr_weights(4, 5.0);  // w_4 = 0
  RandomStream rng(34);
  for (int i = 0; i < 200; ++i) {
    const Graph g = gen_nr(cfg, rng);
    CHECK(g.degree(3) == 0);
  }
}

TEST_CASE("nr fast sampler agrees with the dense oracle at n=50") {
  const NrConfig cfg = nr_weights(50, 5.0);
  // expected edge count = sum_{i<j} (1 - exp(-w_i w_j / l))
  double expected = 0.0;
  for (std::size_t i = 0; i + 1 < cfg.weights.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.weights.size(); ++j)
      expected += -std::expm1(-cfg.weights[i] * cfg.weights[j] /
                              cfg.total_weight);
  const std::uint64_t samples = 3000;
  const NrSampler sampler(cfg);
  const double fast = mean_edge_count(samples, 35, [&](RandomStream& rng) {
    return sampler.sample(rng);
  });
  const double dense = mean_edge_count(samples, 36, [&](RandomStream& rng) {
    return gen_nr_dense(cfg, rng);
  });
  // edge count variance is at most its mean (sum of Bernoulli variances)
  const double se = std::sqrt(expected / samples);
  CHECK(std::abs(fast - expected) < 4.0 * se);
  CHECK(std::abs(dense - expected) < 4.0 * se);
}

TEST_CASE("edge list round trip") {
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}});
  std::stringstream buffer;
  write_edge_list(g, buffer);
  const Graph back = read_edge_list(buffer);
  CHECK(back.vertex_count() == 4);  // trailing isolated vertex preserved
  CHECK(same_graph(g, back));

  std::stringstream selfloop("1 1\n");
  CHECK_THROWS_AS(read_edge_list(selfloop), std::invalid_argument);
  std::stringstream headerless("1 2\n2 3\n");
  CHECK(read_edge_list(headerless).vertex_count() == 3);
  std::stringstream duplicates("# n 3\n1 2\n2 1\n1 2\n");
  CHECK(read_edge_list(duplicates).edge_count() == 1);
}
