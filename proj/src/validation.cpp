#include "corrbeta/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "corrbeta/efficiency.hpp"
#include "corrbeta/errors.hpp"

namespace corrbeta {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

struct Moments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double corr = 0.0;
};

Moments sample_moments(const SampleBatch& batch) {
  const auto n = static_cast<double>(batch.pairs.rows());
  const Eigen::RowVector2d mean = batch.pairs.colwise().mean();
  const Eigen::MatrixX2d centered = batch.pairs.rowwise() - mean;
  const Eigen::Matrix2d cov = (centered.transpose() * centered) / (n - 1.0);
  return {mean(0), mean(1), cov(0, 0), cov(1, 1), cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1))};
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0) || !std::isfinite(a) ||
      !std::isfinite(b)) {
    throw InvalidInput("regularized_incomplete_beta requires 0 <= x <= 1, a > 0, b > 0");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  double result;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    result = front * beta_continued_fraction(x, a, b) / a;
  } else {
    result = 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
  }
  return std::clamp(result, 0.0, 1.0);
}

double ks_statistic(std::span<const double> samples, const BetaParams& reference) {
  if (samples.empty()) {
    throw InvalidInput("ks_statistic needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference.cdf(sorted[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - f, f - lo});
  }
  return d;
}

ValidationReport validate_batch(const SampleBatch& batch, const CorrelatedBetaTarget<>& target,
                                std::optional<std::pair<BetaParams, BetaParams>> reference) {
  if (batch.size() < 2) {
    throw InvalidInput("validation needs at least two pairs");
  }
  const auto [ref1, ref2] =
      reference.value_or(std::pair{BetaParams{target.c1, target.c2},
                                   BetaParams{target.c3, derived_c4(target)}});

  ValidationReport rep;
  rep.n = batch.size();
  const double n = static_cast<double>(rep.n);
  const double root_n = std::sqrt(n);

  const Moments m = sample_moments(batch);
  rep.mean_y1 = m.mean1;
  rep.mean_y2 = m.mean2;
  rep.var_y1 = m.var1;
  rep.var_y2 = m.var2;
  rep.corr = m.corr;

  rep.expected_mean_y1 = ref1.mean();
  rep.expected_mean_y2 = ref2.mean();
  rep.expected_var_y1 = ref1.variance();
  rep.expected_var_y2 = ref2.variance();
  rep.expected_corr = target.r;

  const Eigen::VectorXd y1 = batch.pairs.col(0);
  const Eigen::VectorXd y2 = batch.pairs.col(1);
  rep.ks_y1 = ks_statistic(std::span<const double>(y1.data(), rep.n), ref1);
  rep.ks_y2 = ks_statistic(std::span<const double>(y2.data(), rep.n), ref2);

  ToleranceSpec& tol = rep.tolerance_spec;
  // Standard error of the sample variance: sigma^2 sqrt((kurtosis_excess + 2) / n).
  auto var_se = [&](const BetaParams& p) {
    return p.variance() * std::sqrt((p.excess_kurtosis() + 2.0) / n);
  };
  tol.mean_y1 = tol.sigmas * std::sqrt(ref1.variance() / n);
  tol.mean_y2 = tol.sigmas * std::sqrt(ref2.variance() / n);
  tol.var_y1 = tol.sigmas * var_se(ref1);
  tol.var_y2 = tol.sigmas * var_se(ref2);
  tol.corr = std::max(0.01, tol.sigmas * (1.0 - target.r * target.r) / root_n);
  tol.ks = 1.63 / root_n;

  rep.pass = std::abs(rep.mean_y1 - rep.expected_mean_y1) <= tol.mean_y1 &&
             std::abs(rep.mean_y2 - rep.expected_mean_y2) <= tol.mean_y2 &&
             std::abs(rep.var_y1 - rep.expected_var_y1) <= tol.var_y1 &&
             std::abs(rep.var_y2 - rep.expected_var_y2) <= tol.var_y2 &&
             std::abs(rep.corr - rep.expected_corr) <= tol.corr && rep.ks_y1 < tol.ks &&
             rep.ks_y2 < tol.ks;
  return rep;
}

ValidationReport validate_sampler(RngStream& stream, const CorrelatedBetaTarget<>& target,
                                  std::size_t n, Method method) {
  if (n < 1000) {
    throw InvalidInput("validate_sampler needs n >= 1000");
  }
  return validate_batch(sample_correlated_beta(stream, target, n, method), target);
}

}  // namespace corrbeta
