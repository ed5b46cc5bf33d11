#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrbeta/report_io.hpp"
#include "corrbeta/validation.hpp"
#include "oracles.hpp"

using namespace corrbeta;

TEST_CASE("regularized_incomplete_beta closed forms") {
  for (double x : {0.0, 0.3, 1.0}) CHECK(std::abs(regularized_incomplete_beta(x, 1, 1) - x) < 1e-10);
  CHECK(std::abs(regularized_incomplete_beta(0.5, 2, 2) - 0.5) < 1e-10);
  CHECK(std::abs(regularized_incomplete_beta(0.5, 2, 1) - 0.25) < 1e-10);
  for (int i = 1; i < 100; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(regularized_incomplete_beta(x, 2, 1) - x * x) < 1e-10);
    CHECK(std::abs(regularized_incomplete_beta(x, 3.5, 1) - std::pow(x, 3.5)) < 1e-10);
    CHECK(std::abs(regularized_incomplete_beta(x, 1, 0.3) - (1 - std::pow(1 - x, 0.3))) < 1e-10);
    // Reflection identity.
    CHECK(std::abs(regularized_incomplete_beta(x, 0.7, 2.2) +
                   regularized_incomplete_beta(1 - x, 2.2, 0.7) - 1.0) < 1e-10);
  }
}

TEST_CASE("regularized_incomplete_beta against numeric integration") {
  // Smooth integrands only (a, b >= 1) so Simpson converges cleanly.
  const std::array<std::pair<double, double>, 5> shapes{
      {{2, 2}, {1.5, 3.25}, {4, 1.2}, {7.5, 9}, {1, 5}}};
  for (const auto& [a, b] : shapes) {
    const long double log_beta = std::lgamma(static_cast<long double>(a)) +
                                 std::lgamma(static_cast<long double>(b)) -
                                 std::lgamma(static_cast<long double>(a + b));
    // t = u^2 turns t^(a-1) dt into 2 u^(2a-1) du, smooth at the origin for a >= 1.
    auto integrand = [a = a, b = b, log_beta](long double u) -> long double {
      const long double t = u * u;
      return 2.0L * std::pow(u, 2.0L * a - 1.0L) *
             std::exp((b - 1) * std::log1p(-t) - log_beta);
    };
    for (double x : {0.05, 0.2, 0.45, 0.5, 0.73, 0.96}) {
      const long double ref = oracle::simpson(integrand, 0.0L, std::sqrt(static_cast<long double>(x)), 20000);
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(x);
      CHECK(std::abs(regularized_incomplete_beta(x, a, b) - ref) < 1e-10);
    }
  }
}

TEST_CASE("regularized_incomplete_beta domain") {
  CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1, 1), InvalidInput);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.1, 1, 1), InvalidInput);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0, 1), InvalidInput);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 1, -2), InvalidInput);
}

TEST_CASE("beta moments") {
  const BetaParams uniform{1, 1};
  CHECK(uniform.mean() == 0.5);
  CHECK(uniform.variance() == doctest::Approx(1.0 / 12.0));
  CHECK(uniform.excess_kurtosis() == doctest::Approx(-1.2));
}

TEST_CASE("ks_statistic") {
  // Midpoint quantiles of U(0,1) sit at distance exactly 1/(2n).
  std::vector<double> q;
  for (int i = 0; i < 100; ++i) q.push_back((i + 0.5) / 100.0);
  CHECK(ks_statistic(q, BetaParams{1, 1}) == doctest::Approx(0.005));
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, BetaParams{1, 1}), InvalidInput);
}

TEST_CASE("validate_sampler") {
  SUBCASE("uniform marginals, gamma route") {
    RngStream s(1);
    const auto rep = validate_sampler(s, {1, 1, 1, 0.5}, 1'000'000, Method::Gamma);
    CHECK(rep.pass);
    CHECK(rep.expected_mean_y1 == 0.5);
    CHECK(rep.expected_var_y1 == doctest::Approx(1.0 / 12.0));
    CHECK(rep.expected_corr == 0.5);
    CHECK(rep.tolerance_spec.ks == doctest::Approx(1.63e-3));
    CHECK(rep.tolerance_spec.corr == 0.01);
  }
  SUBCASE("small shapes, Johnk route") {
    RngStream s(2);
    const auto rep = validate_sampler(s, {0.25, 0.25, 0.25, 0.75}, 100'000, Method::Johnk);
    CHECK(rep.pass);
    CHECK(rep.expected_corr == 0.75);
  }
  SUBCASE("wrong reference marginal is rejected") {
    RngStream s(3);
    const CorrelatedBetaTarget<> t{1, 1, 1, 0.5};
    const auto batch = sample_correlated_beta(s, t, 1'000'000, Method::Gamma);
    CHECK(validate_batch(batch, t).pass);
    const auto rep =
        validate_batch(batch, t, std::pair{BetaParams{t.c1 + 1, t.c2}, BetaParams{t.c3, t.c4()}});
    CHECK_FALSE(rep.pass);
    CHECK(rep.ks_y1 > rep.tolerance_spec.ks);
    CHECK(rep.ks_y2 < rep.tolerance_spec.ks);
  }
  SUBCASE("deterministic and expected values depend only on the target") {
    RngStream a(9);
    RngStream b(9);
    const CorrelatedBetaTarget<> t{0.8, 1.7, 1.1, 0.3};
    const auto ra = validate_sampler(a, t, 5000, Method::Johnk);
    const auto rb = validate_sampler(b, t, 5000, Method::Johnk);
    CHECK(to_json(ra) == to_json(rb));
    RngStream c(10);
    const auto rc = validate_sampler(c, t, 5000, Method::Gamma);
    CHECK(rc.expected_mean_y2 == ra.expected_mean_y2);
    CHECK(rc.expected_var_y1 == ra.expected_var_y1);
    CHECK(rc.expected_mean_y1 == doctest::Approx(0.8 / 2.5));
    CHECK(rc.expected_var_y2 == doctest::Approx(1.1 * 1.4 / (2.5 * 2.5 * 3.5)));
  }
  SUBCASE("errors") {
    RngStream s(4);
    CHECK_THROWS_AS(validate_sampler(s, {1, 1, 1, 0.5}, 999, Method::Gamma), InvalidInput);
    CHECK_THROWS_AS(validate_sampler(s, {2, 1, 1, 0.6}, 1000, Method::Gamma), Infeasible);
  }
}

TEST_CASE("validation report JSON field names") {
  RngStream s(5);
  const auto j = to_json(validate_sampler(s, {1, 1, 1, 0.2}, 2000, Method::Gamma));
  for (const char* key :
       {"n", "mean_y1", "mean_y2", "var_y1", "var_y2", "corr", "expected_mean_y1",
        "expected_mean_y2", "expected_var_y1", "expected_var_y2", "expected_corr", "ks_y1",
        "ks_y2", "pass", "tolerance_spec"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.size() == 15);
}
