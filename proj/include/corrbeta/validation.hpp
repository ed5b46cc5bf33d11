#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "corrbeta/core_params.hpp"
#include "corrbeta/rng.hpp"
#include "corrbeta/samplers.hpp"

namespace corrbeta {

/// I_x(a, b), continued fraction with the I_x(a,b) = 1 - I_{1-x}(b,a) swap.
double regularized_incomplete_beta(double x, double a, double b);

struct BetaParams {
  double a;
  double b;

  double mean() const { return a / (a + b); }
  double variance() const {
    const double s = a + b;
    return a * b / (s * s * (s + 1.0));
  }
  double excess_kurtosis() const {
    const double s = a + b;
    return 6.0 * ((a - b) * (a - b) * (s + 1.0) - a * b * (s + 2.0)) /
           (a * b * (s + 2.0) * (s + 3.0));
  }
  double cdf(double x) const { return regularized_incomplete_beta(x, a, b); }
};

/// One-sample Kolmogorov-Smirnov distance to Be(a, b).
double ks_statistic(std::span<const double> samples, const BetaParams& reference);

/// Half-widths of the acceptance bands used by a report.
struct ToleranceSpec {
  double sigmas = 4.0;
  double mean_y1 = 0.0;
  double mean_y2 = 0.0;
  double var_y1 = 0.0;
  double var_y2 = 0.0;
  double corr = 0.0;
  double ks = 0.0;
};

struct ValidationReport {
  std::size_t n = 0;
  double mean_y1 = 0.0;
  double mean_y2 = 0.0;
  double var_y1 = 0.0;
  double var_y2 = 0.0;
  double corr = 0.0;
  double expected_mean_y1 = 0.0;
  double expected_mean_y2 = 0.0;
  double expected_var_y1 = 0.0;
  double expected_var_y2 = 0.0;
  double expected_corr = 0.0;
  double ks_y1 = 0.0;
  double ks_y2 = 0.0;
  bool pass = false;
  ToleranceSpec tolerance_spec;
};

/// Checks a batch against the target's marginals and correlation. The
/// reference marginals default to Be(c1, c2) and Be(c3, c4); overriding
/// them is how the harness's own power is tested.
ValidationReport validate_batch(
    const SampleBatch& batch, const CorrelatedBetaTarget<>& target,
    std::optional<std::pair<BetaParams, BetaParams>> reference = std::nullopt);

/// Draws n >= 1000 pairs and validates them.
ValidationReport validate_sampler(RngStream& stream, const CorrelatedBetaTarget<>& target,
                                  std::size_t n, Method method);

}  // namespace corrbeta
