#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrbeta/efficiency.hpp"
#include "corrbeta/samplers.hpp"

using namespace corrbeta;

namespace {

struct Summary {
  double mean = 0.0;
  double var = 0.0;
};

template <typename F>
Summary summarize(std::size_t n, F&& draw) {
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw();
    sum += x;
    sq += x * x;
  }
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  return {mean, (sq - dn * mean * mean) / (dn - 1.0)};
}

double correlation(const Eigen::MatrixX2d& m) {
  const Eigen::RowVector2d mean = m.colwise().mean();
  const Eigen::MatrixX2d c = m.rowwise() - mean;
  const Eigen::Matrix2d cov = c.transpose() * c;
  return cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1));
}

}  // namespace

TEST_CASE("uniform stream determinism and range") {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 3; ++i) CHECK(uniform(a) == uniform(b));

  RngStream s0(42, 0);
  RngStream s1(42, 1);
  CHECK(s0.next_u64() != s1.next_u64());

  RngStream s(7);
  const auto stats = summarize(1'000'000, [&] {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    return u;
  });
  CHECK(std::abs(stats.mean - 0.5) < 0.002);
}

TEST_CASE("distinct stream ids are uncorrelated") {
  RngStream s0(99, 0);
  RngStream s1(99, 1);
  Eigen::MatrixX2d m(100'000, 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, 0) = s0.uniform();
    m(i, 1) = s1.uniform();
  }
  CHECK(std::abs(correlation(m)) < 0.01);
}

TEST_CASE("sample_gamma moments") {
  RngStream s(2024);
  const std::size_t n = 1'000'000;
  SUBCASE("shape 1 (exponential)") {
    const auto st = summarize(n, [&] { return sample_gamma(s, 1.0); });
    CHECK(std::abs(st.mean - 1.0) < 0.003);
    CHECK(std::abs(st.var - 1.0) < 0.01);
  }
  SUBCASE("shape 0.0625 (boosted small shape)") {
    const auto st = summarize(n, [&] { return sample_gamma(s, 0.0625); });
    CHECK(std::abs(st.mean - 0.0625) < 3.0 * 0.25 / 1e3);
    CHECK(std::abs(st.var - 0.0625) < 0.003);
  }
  SUBCASE("shape 5") {
    const auto st = summarize(n, [&] { return sample_gamma(s, 5.0); });
    CHECK(std::abs(st.mean - 5.0) < 3.0 * std::sqrt(5.0) / 1e3);
    CHECK(std::abs(st.var - 5.0) < 0.05);
  }
  SUBCASE("invalid shapes") {
    CHECK_THROWS_AS(sample_gamma(s, 0.0), InvalidShape);
    CHECK_THROWS_AS(sample_gamma(s, -2.0), InvalidShape);
    CHECK_THROWS_AS(sample_gamma(s, std::nan("")), InvalidShape);
  }
}

TEST_CASE("gamma-ratio Dirichlet") {
  RngStream s(3);
  SUBCASE("symmetric means") {
    const DirichletAlphas<> a(1, 1, 1, 1);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
      const auto d = sample_dirichlet_gamma(s, a);
      REQUIRE(d.x1 > 0.0);
      REQUIRE(d.x2 > 0.0);
      REQUIRE(d.x3 > 0.0);
      REQUIRE(d.x1 + d.x2 + d.x3 < 1.0);
      sum += Eigen::Vector3d(d.x1, d.x2, d.x3);
    }
    sum /= n;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(sum[k] - 0.25) < 0.003);
  }
  SUBCASE("pair covariance matches the closed form") {
    const DirichletAlphas<> a(0.75, 0.25, 0.25, 0.75);
    const int n = 400'000;
    std::vector<double> x1(n), x2(n);
    double m1 = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
      const auto d = sample_dirichlet_gamma(s, a);
      x1[i] = d.x1;
      x2[i] = d.x2;
      m1 += d.x1;
      m2 += d.x2;
    }
    m1 /= n;
    m2 /= n;
    double cov = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      const double p = (x1[i] - m1) * (x2[i] - m2);
      cov += p;
      sq += p * p;
    }
    cov /= n;
    const double se = std::sqrt((sq / n - cov * cov) / n);
    const double expected = dirichlet_pair_covariances(a)[0];
    CHECK(expected == doctest::Approx(-0.0625 / 12.0));
    CHECK(std::abs(cov - expected) < 3.0 * se);
  }
}

TEST_CASE("Johnk Dirichlet sampler") {
  SUBCASE("uniform shapes accept with probability 1/24") {
    RngStream s(17);
    JohnkStats stats;
    const DirichletAlphas<> a(1, 1, 1, 1);
    while (stats.attempts < 100'000) sample_dirichlet_johnk(s, a, kDefaultMaxAttempts, stats);
    const double p = 1.0 / 24.0;
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(stats.attempts));
    CHECK(stats.accepts <= stats.attempts);
    CHECK(std::abs(stats.acceptance_rate() - p) < 3.0 * sigma);
  }
  SUBCASE("grid cell (0.25, 0.25)") {
    RngStream s(18);
    JohnkStats stats;
    const auto a = solve_alphas(CorrelatedBetaTarget<>{0.25, 0.25, 0.25, 0.5});
    while (stats.attempts < 100'000) sample_dirichlet_johnk(s, a, kDefaultMaxAttempts, stats);
    const double sigma = std::sqrt(0.897 * 0.103 / static_cast<double>(stats.attempts));
    CHECK(std::abs(stats.acceptance_rate() - 0.897) < 3.0 * sigma);
  }
  SUBCASE("rejection budget") {
    RngStream s(19);
    JohnkStats stats;
    const DirichletAlphas<> big(50, 50, 50, 50);
    CHECK_THROWS_AS(sample_dirichlet_johnk(s, big, 10, stats), TooManyRejections);
    CHECK(stats.attempts == 10);
    CHECK(stats.accepts == 0);
  }
  SUBCASE("coordinate means agree with the gamma route") {
    const DirichletAlphas<> a(0.6, 0.3, 0.45, 0.9);
    RngStream sj(20);
    RngStream sg(21);
    JohnkStats stats;
    const int n = 100'000;
    Eigen::MatrixXd xj(n, 3), xg(n, 3);
    for (int i = 0; i < n; ++i) {
      const auto dj = sample_dirichlet_johnk(sj, a, kDefaultMaxAttempts, stats);
      const auto dg = sample_dirichlet_gamma(sg, a);
      REQUIRE(dj.x1 + dj.x2 + dj.x3 < 1.0);
      xj.row(i) << dj.x1, dj.x2, dj.x3;
      xg.row(i) << dg.x1, dg.x2, dg.x3;
    }
    for (int k = 0; k < 3; ++k) {
      const double mj = xj.col(k).mean();
      const double mg = xg.col(k).mean();
      const double vj = (xj.col(k).array() - mj).square().sum() / (n - 1);
      const double vg = (xg.col(k).array() - mg).square().sum() / (n - 1);
      CHECK(std::abs(mj - mg) < 4.0 * std::sqrt(vj / n + vg / n));
    }
  }
}

TEST_CASE("to_pair") {
  const auto p = to_pair(DirichletDraw{0.2, 0.3, 0.1});
  CHECK(p.y1 == doctest::Approx(0.3));
  CHECK(p.y2 == doctest::Approx(0.4));
  const auto tiny = to_pair(DirichletDraw{1e-300, 2e-300, 3e-300});
  CHECK(tiny.y1 > 0.0);
  CHECK(tiny.y2 < 1.0);
}

TEST_CASE("sample_correlated_beta") {
  SUBCASE("gamma route realises r = 0.5 on uniform marginals") {
    RngStream s(5);
    const auto batch = sample_correlated_beta(s, {1, 1, 1, 0.5}, 1'000'000, Method::Gamma);
    CHECK(batch.size() == 1'000'000);
    CHECK_FALSE(batch.johnk.has_value());
    CHECK(std::abs(correlation(batch.pairs) - 0.5) < 0.01);
    CHECK(std::abs(batch.pairs.col(0).mean() - 0.5) < 0.002);
    const double m = batch.pairs.col(0).mean();
    const double var = (batch.pairs.col(0).array() - m).square().sum() / (batch.size() - 1.0);
    CHECK(std::abs(var - 1.0 / 12.0) < 0.001);
    CHECK((batch.pairs.array() > 0.0).all());
    CHECK((batch.pairs.array() < 1.0).all());
  }
  SUBCASE("independence limit") {
    RngStream s(6);
    const auto batch = sample_correlated_beta(s, {1, 1, 1, 0.0}, 1'000'000, Method::Gamma);
    CHECK(std::abs(correlation(batch.pairs)) < 0.01);
  }
  SUBCASE("Johnk route reports its acceptance rate") {
    RngStream s(8);
    const auto batch = sample_correlated_beta(s, {0.25, 0.25, 0.25, 0.5}, 100'000, Method::Johnk);
    REQUIRE(batch.johnk.has_value());
    const double n = static_cast<double>(batch.johnk->attempts);
    const double sigma = std::sqrt(0.897 * 0.103 / n);
    CHECK(std::abs(batch.johnk->acceptance_rate() - 0.897) < 3.0 * sigma);
    CHECK(batch.johnk->accepts == 100'000);
  }
  SUBCASE("determinism") {
    for (Method m : {Method::Gamma, Method::Johnk}) {
      RngStream a(77, 3);
      RngStream b(77, 3);
      const auto ba = sample_correlated_beta(a, {0.7, 1.3, 0.9, 0.4}, 5000, m);
      const auto bb = sample_correlated_beta(b, {0.7, 1.3, 0.9, 0.4}, 5000, m);
      CHECK(ba.pairs == bb.pairs);
      CHECK(ba.seed == 77);
      CHECK(ba.stream_id == 3);
      CHECK(ba.method == m);
    }
  }
  SUBCASE("errors") {
    RngStream s(1);
    CHECK_THROWS_AS(sample_correlated_beta(s, {2, 1, 1, 0.6}, 10, Method::Gamma), Infeasible);
    CHECK_THROWS_AS(sample_correlated_beta(s, {1, 1, 1, 0.5}, 0, Method::Gamma),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_correlated_beta(s, {20, 20, 20, 0.5}, 10, Method::Johnk, 5),
                    TooManyRejections);
  }
}

TEST_CASE("method names") {
  CHECK(to_string(Method::Gamma) == "gamma");
  CHECK(parse_method("johnk") == Method::Johnk);
  CHECK_FALSE(parse_method("jonk").has_value());
}
