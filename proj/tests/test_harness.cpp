#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "critgraph/harness.hpp"
#include "test_util.hpp"

using namespace critgraph;

TEST_CASE("exact oracle on tiny Erdos-Renyi graphs") {
  // n=3, p=1/2: the largest component beats 2 iff the graph is connected,
  // which happens for 4 of the 8 equally likely edge subsets.
  const ModelConfig er3 = ErConfig::with_p(3, 0.5);
  CHECK(exact_tail_oracle(er3, 2) == doctest::Approx(0.5).epsilon(1e-15));
  // single possible edge
  const ModelConfig er2 = ErConfig::with_p(2, 0.37);
  CHECK(exact_tail_oracle(er2, 1) == doctest::Approx(0.37).epsilon(1e-15));
  // k >= n is impossible
  CHECK(exact_tail_oracle(er3, 3) == 0.0);
  // k = 0 always happens
  CHECK(exact_tail_oracle(er3, 0) == 1.0);
}

TEST_CASE("exact oracle on percolated complete graphs") {
  const ModelConfig k4 =
      RegularPercolationConfig{3, 4, 1.0, RegularBase::Complete};
  CHECK(exact_tail_oracle(k4, 3) == doctest::Approx(1.0));
  const ModelConfig k4half =
      RegularPercolationConfig{3, 4, 0.5, RegularBase::Complete};
  const double p_conn = exact_tail_oracle(k4half, 3);
  // connectivity probability of G(4, 1/2): 38/64
  CHECK(p_conn == doctest::Approx(38.0 / 64.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      exact_tail_oracle(
          ModelConfig{RegularPercolationConfig{4, 8, 0.5,
                                               RegularBase::RandomRegular}},
          2),
      std::invalid_argument);
}

TEST_CASE("exact oracle on the intersection model") {
  // n=2, m=1, p=1/2: edge iff both bipartite edges present
  const ModelConfig tiny = IntersectionConfig{2, 0.6, 1.0};
  CHECK(exact_tail_oracle(tiny, 1) == doctest::Approx(0.25).epsilon(1e-12));

  // n=2, m=2: 1 - (1 - p^2)^2
  const ModelConfig two = IntersectionConfig{2, 1.2, 1.0};  // m=2, p=1/2
  CHECK(exact_tail_oracle(two, 1) ==
        doctest::Approx(1.0 - std::pow(0.75, 2)).epsilon(1e-12));
}

TEST_CASE("exact oracle on a tiny Norros-Reittu graph") {
  // with w_3 = 0 only the edge {1,2} can appear
  const NrConfig cfg = nr_weights(3, 5.0);
  const double p01 =
      -std::expm1(-cfg.weights[0] * cfg.weights[1] / cfg.total_weight);
  CHECK(exact_tail_oracle(ModelConfig{cfg}, 1) ==
        doctest::Approx(p01).epsilon(1e-12));
}

TEST_CASE("oracle refuses oversized instances") {
  CHECK_THROWS_AS(exact_tail_oracle(ModelConfig{ErConfig::with_p(10, 0.5)}, 2),
                  ResourceLimitError);
}

TEST_CASE("estimate_tail trivial thresholds") {
  ExperimentConfig cfg;
  cfg.model = ErConfig::with_p(5, 0.5);
  cfg.trials = 200;
  cfg.master_seed = 9;
  cfg.k = 5;  // components cannot exceed n
  CHECK(estimate_tail(cfg).p_hat == 0.0);
  cfg.k = 0;  // every component has at least one vertex
  CHECK(estimate_tail(cfg).p_hat == 1.0);
}

TEST_CASE("estimate_tail covers the exact oracle value") {
  ExperimentConfig cfg;
  cfg.model = ErConfig::with_p(3, 0.5);
  cfg.trials = 100000;
  cfg.master_seed = 12345;
  cfg.k = 2;
  const TailEstimate est = estimate_tail(cfg);
  CHECK(est.ci_low <= 0.5);
  CHECK(0.5 <= est.ci_high);
  CHECK(std::abs(est.p_hat - 0.5) < 0.01);
}

TEST_CASE("results do not depend on the worker split") {
  ExperimentConfig cfg;
  cfg.model = IntersectionConfig{200, 1.0, 1.0};
  cfg.trials = 4000;
  cfg.master_seed = 77;
  cfg.k = 20;
  cfg.workers = 1;
  const TailEstimate one = estimate_tail(cfg);
  cfg.workers = 3;
  const TailEstimate three = estimate_tail(cfg);
  CHECK(one.successes == three.successes);

  const std::string csv_one =
      tail_estimates_csv(cfg.model, std::vector<TailEstimate>{one}, 77);
  const std::string csv_three =
      tail_estimates_csv(cfg.model, std::vector<TailEstimate>{three}, 77);
  CHECK(csv_one == csv_three);  // byte identical without timing
}

TEST_CASE("uniform-vertex estimator obeys the first-moment inequality") {
  ExperimentConfig cfg;
  cfg.model = ErConfig::with_p(100, 0.01);
  cfg.trials = 20000;
  cfg.master_seed = 31;
  cfg.k = 10;
  cfg.estimator = Estimator::MaxComponent;
  const TailEstimate max_est = estimate_tail(cfg);
  cfg.estimator = Estimator::UniformVertex;
  const TailEstimate uv_est = estimate_tail(cfg);
  const double scale = 100.0 / 10.0;  // n / k
  const double se = binomial_standard_error(max_est.successes, cfg.trials);
  CHECK(uv_est.p_hat * scale >= max_est.p_hat - 3.0 * se);
  CHECK(uv_est.p_hat <= max_est.p_hat);  // C(V) large implies C_max large
}

TEST_CASE("domination holds on a small regular model") {
  const ModelConfig model = RegularPercolationConfig{4, 500, 1.0 / 3.0};
  const DominationReport report = check_domination(model, 63, 20000, 4242);
  CHECK(report.ok);
  CHECK(report.lhs_hat <= report.rhs_hat + 3.0 * report.pooled_se);
}

TEST_CASE("domination is vacuous at p = 0") {
  const ModelConfig model = RegularPercolationConfig{4, 100, 0.0};
  const DominationReport report = check_domination(model, 10, 2000, 1);
  CHECK(report.lhs_hat == 0.0);
  CHECK(report.ok);
}

TEST_CASE("scaling sweep shares graphs across thresholds") {
  const ModelConfig model = ErConfig::with_p(1000, 0.001);
  const std::vector<double> As{1.5, 2.0, 3.0};
  const auto rows = scaling_sweep(model, As, 2000, 555);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].k == component_threshold(1000, As[i]));
    if (i > 0) CHECK(rows[i].p_hat <= rows[i - 1].p_hat);
  }
  CHECK_THROWS_AS(scaling_sweep(model, std::vector<double>{0.5}, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(scaling_sweep(model, std::vector<double>{2.0, 1.5}, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("csv layout is stable") {
  TailEstimate est;
  est.k = 4;
  est.A = 2.0;
  est.trials = 100;
  est.successes = 25;
  est.p_hat = 0.25;
  est.ci_low = 0.2;
  est.ci_high = 0.3;
  est.wall_time_s = 1.25;
  const ModelConfig model = ErConfig::with_p(8, 0.5);
  const std::string csv =
      tail_estimates_csv(model, std::vector<TailEstimate>{est}, 99);
  CHECK(csv ==
        "# schema=1\n"
        "model,n,params,k,A,trials,successes,p_hat,ci_low,ci_high,"
        "bound_value,bound_certified,seed,wall_time_s\n"
        "er,8,p=0.5,4,2,100,25,0.25,0.2,0.3,,,99,\n");
  const std::string with_timing =
      tail_estimates_csv(model, std::vector<TailEstimate>{est}, 99, true);
  CHECK(with_timing.find("99,1.25\n") != std::string::npos);
}

TEST_CASE("json mirror carries the same fields") {
  const ModelConfig model = RegularPercolationConfig{4, 100, 0.25};
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.trials = 500;
  cfg.master_seed = 3;
  cfg.A = 1.5;
  const TailEstimate est = estimate_tail(cfg);
  const std::string text =
      tail_estimates_json(model, std::vector<TailEstimate>{est}, 3);
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["schema"] == 1);
  CHECK(doc["model"] == "regular");
  CHECK(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["trials"] == 500);
  CHECK(doc["rows"][0]["k"] == component_threshold(100, 1.5));
  CHECK(doc["rows"][0]["bound_value"].is_number());
}

TEST_CASE("atomic write leaves no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "critgraph_test_atomic.csv";
  write_file_atomic(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n");
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("experiment config resolves k from A") {
  ExperimentConfig cfg;
  cfg.model = ErConfig::with_p(1000, 0.001);
  cfg.trials = 1;
  cfg.A = 2.0;
  CHECK(cfg.resolved_k() == component_threshold(1000, 2.0));
  cfg.k = 7;
  CHECK_THROWS_AS(cfg.resolved_k(), std::invalid_argument);  // both set
  cfg.k.reset();
  cfg.A.reset();
  CHECK_THROWS_AS(cfg.resolved_k(), std::invalid_argument);  // neither set
}
