#include <doctest.h>

#include <cmath>

#include "critgraph/bounds.hpp"
#include "test_util.hpp"

using namespace critgraph;

TEST_CASE("bound constant follows delta and c") {
  const BoundParams p = make_bound_params(1.0, 1.0, 0.0, 0.0, 1.0 / 27.0);
  CHECK(p.C == doctest::Approx(4.0).epsilon(1e-14));  // 1 + 3 e^0
  CHECK_THROWS_AS(make_bound_params(0.0, 1.0, 0.0, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_bound_params(1.0, 1.0, 0.0, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("derived parameters per model") {
  const BoundParams regular =
      derive_params(RegularPercolationConfig{4, 1000, 1.0 / 3.0});
  CHECK(regular.delta == 1.0);
  CHECK(regular.rho == 1.0);
  CHECK(regular.epsilon == 0.0);
  CHECK(regular.c_precondition == 0.0);
  CHECK(regular.p3 == doctest::Approx(1.0 / 27.0).epsilon(1e-13));
  CHECK(regular.C == doctest::Approx(4.0).epsilon(1e-13));

  const BoundParams inter = derive_params(IntersectionConfig{1000, 1.0, 1.0});
  CHECK(inter.delta == doctest::Approx(5.0));
  CHECK(inter.rho == doctest::Approx(0.5));
  CHECK(inter.epsilon == 0.0);
  CHECK(inter.p3 > 0.0);

  const NrConfig nr = nr_weights(10000, 5.0);
  const BoundParams nrp = derive_params(nr);
  CHECK(nrp.rho ==
        doctest::Approx(1.0 / (2.0 * nr.max_weight())).epsilon(1e-12));
  CHECK(nrp.epsilon > 0.0);
  CHECK(nrp.c_precondition == 1.0);
  CHECK(nrp.delta > 1.0);
  REQUIRE(nrp.p3_asymptotic_proxy.has_value());
  CHECK(*nrp.p3_asymptotic_proxy == doctest::Approx(nrp.p3 / 2.0));
  // epsilon = C2 * n^{-(tau-3)/(tau-1)} with the measured constant
  const WeightMomentReport moments = verify_weight_moments(
      5.0, std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
  CHECK(nrp.epsilon ==
        doctest::Approx(moments.c2_estimate / 100.0).epsilon(1e-9));

  const BoundParams er = derive_params(ErConfig::critical_window(1000, 0.0));
  CHECK(er.epsilon == 0.0);
  const BoundParams er_pos = derive_params(ErConfig::critical_window(1000, 2.0));
  CHECK(er_pos.epsilon ==
        doctest::Approx(2.0 * std::pow(1000.0, -1.0 / 3.0)).epsilon(1e-12));
  CHECK(er_pos.c_precondition == 1.0);
}

TEST_CASE("inadmissible configurations are refused") {
  CHECK_THROWS_AS(derive_params(RegularPercolationConfig{3, 1000, 0.4}),
                  std::invalid_argument);  // P(X=3) = 0 at d=3
  CHECK_THROWS_AS(derive_params(RegularPercolationConfig{4, 1000, 0.5}),
                  std::invalid_argument);  // p > 1/(d-1)
  CHECK_THROWS_AS(derive_params(IntersectionConfig{1000, 1.01, 1.0}),
                  std::invalid_argument);  // mu != 1
  CHECK_THROWS_AS(derive_params(NrConfig::custom({1.0, 2.0})),
                  std::invalid_argument);  // constants need the family
}

TEST_CASE("mgf condition holds for the certified parameters") {
  const RegularPercolationConfig reg{4, 1000, 1.0 / 3.0};
  const MgfCheckReport r1 =
      check_mgf_condition(offspring_for(reg), derive_params(reg), 1000);
  CHECK(r1.pass);
  CHECK(r1.max_violation < 0.0);

  const IntersectionConfig inter{1000, 1.0, 1.0};
  const MgfCheckReport r2 =
      check_mgf_condition(offspring_for(inter), derive_params(inter), 1000);
  CHECK(r2.pass);

  const ErConfig er = ErConfig::critical_window(10000, 0.0);
  const MgfCheckReport r3 =
      check_mgf_condition(offspring_for(er), derive_params(er), 200);
  CHECK(r3.pass);
}

TEST_CASE("mgf condition fails for a drifting walk") {
  // X = 2 has mean 2 > 1 + epsilon: the condition cannot hold near 0
  const auto two = OffspringDistribution::explicit_finite({2}, {1.0});
  const BoundParams params = make_bound_params(0.1, 1.0, 0.0, 0.0, 0.5);
  const MgfCheckReport report = check_mgf_condition(two, params, 100);
  CHECK(!report.pass);
  CHECK(report.max_violation > 0.0);
}

TEST_CASE("component threshold boundaries") {
  CHECK(component_threshold(8, 1.0) == 4);       // 8^{2/3} exactly
  CHECK(component_threshold(8, 1.5) == 6);       // 1.5 * 4
  CHECK(component_threshold(1000000, 1.0) == 10000);
  CHECK(component_threshold(10000, 1.0) == 465);  // ceil(464.158...)
  CHECK(component_threshold(100000, 1.5) == 3232);
}

TEST_CASE("closed-form bound value") {
  const BoundParams params = make_bound_params(1.0, 1.0, 0.0, 0.0, 1.0 / 27.0);
  const TailBound bound = tail_bound_for_k(1000000, 10000, params);
  CHECK(bound.value == doctest::Approx(108.0).epsilon(1e-12));
  CHECK(bound.certified());

  // exact k^{-3/2} scaling: k -> 4k divides the value by 8
  const TailBound four = tail_bound_for_k(1000000, 40000, params);
  CHECK(bound.value / four.value == doctest::Approx(8.0).epsilon(1e-12));

  // doubling A multiplies the A-form bound by 2^{-3/2} up to ceil slack
  const TailBound a2 = tail_bound_for_A(100000, 2.0, params);
  const TailBound a4 = tail_bound_for_A(100000, 4.0, params);
  CHECK(a4.value / a2.value ==
        doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-3));

  // monotone: decreasing in k, increasing in n, decreasing in p3
  CHECK(tail_bound_for_k(1000, 100, params).value >
        tail_bound_for_k(1000, 200, params).value);
  CHECK(tail_bound_for_k(2000, 100, params).value >
        tail_bound_for_k(1000, 100, params).value);
  const BoundParams bigger_p3 = make_bound_params(1.0, 1.0, 0.0, 0.0, 0.5);
  CHECK(tail_bound_for_k(1000, 100, bigger_p3).value <
        tail_bound_for_k(1000, 100, params).value);
}

TEST_CASE("preconditions are flagged, not fatal") {
  // rho sqrt(k) >= 1 holds with equality at rho = 1, k = 1
  const BoundParams params = make_bound_params(1.0, 1.0, 0.0, 0.0, 0.5);
  const TailBound unit = tail_bound_for_k(10, 1, params);
  CHECK(unit.rho_ok);
  CHECK(unit.epsilon_ok);

  const BoundParams tiny_rho = make_bound_params(1.0, 0.01, 0.0, 0.0, 0.5);
  const TailBound flagged = tail_bound_for_k(1000, 100, params);
  CHECK(flagged.certified());
  const TailBound not_certified = tail_bound_for_k(1000, 100, tiny_rho);
  CHECK(!not_certified.rho_ok);
  CHECK(!not_certified.certified());
  CHECK(not_certified.value > 0.0);  // still reported

  CHECK_THROWS_AS(tail_bound_for_k(1000, 0, params), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_for_A(1000, 1.0, params), std::invalid_argument);
}

TEST_CASE("nr epsilon precondition vanishes along n at fixed A") {
  // epsilon(n) sqrt(k(n)) with k = ceil(A n^{2/3}) shrinks like n^{-1/6}
  double prev = 1e9;
  for (std::uint64_t n : {1000, 10000, 100000}) {
    const NrConfig cfg = nr_weights(static_cast<Vertex>(n), 5.0);
    const BoundParams params = derive_params(cfg);
    const std::uint64_t k = component_threshold(n, 2.0);
    const double value = params.epsilon * std::sqrt(static_cast<double>(k));
    CHECK(value < prev);
    prev = value;
  }
  CHECK(prev < 1.0);  // comfortably under the default c_precondition
}
