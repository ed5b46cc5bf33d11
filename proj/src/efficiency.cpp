#include "corrbeta/efficiency.hpp"

#include <cmath>
#include <numbers>

#include "corrbeta/errors.hpp"
#include "corrbeta/samplers.hpp"

namespace corrbeta {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for x >= 0.5.
double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidInput("log_gamma requires a finite positive argument");
  }
  if (x < 0.5) {
    return log_gamma_lanczos(x + 1.0) - std::log(x);
  }
  return log_gamma_lanczos(x);
}

double johnk_efficiency(const DirichletAlphas<>& alphas) {
  double log_eff = -log_gamma(alphas.gamma_sum() + 1.0);
  for (Eigen::Index i = 0; i < 4; ++i) {
    log_eff += log_gamma(alphas[i] + 1.0);
  }
  // exp underflows to +0.0 on its own for very negative arguments.
  return std::min(1.0, std::exp(log_eff));
}

EfficiencyGrid efficiency_grid(double r, std::span<const double> c1_values,
                               std::span<const double> c2_values) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw InvalidInput("r must lie in [0, 1)");
  }
  auto all_positive = [](std::span<const double> values) {
    for (double v : values) {
      if (!(v > 0.0) || !std::isfinite(v)) return false;
    }
    return !values.empty();
  };
  if (!all_positive(c1_values) || !all_positive(c2_values)) {
    throw InvalidInput("grid values must be non-empty lists of positive numbers");
  }

  EfficiencyGrid grid;
  grid.r = r;
  grid.c1_values.assign(c1_values.begin(), c1_values.end());
  grid.c2_values.assign(c2_values.begin(), c2_values.end());
  grid.cells.resize(static_cast<Eigen::Index>(c1_values.size()),
                    static_cast<Eigen::Index>(c2_values.size()));
  for (Eigen::Index i = 0; i < grid.cells.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.cells.cols(); ++j) {
      const double c1 = grid.c1_values[static_cast<std::size_t>(i)];
      const double c2 = grid.c2_values[static_cast<std::size_t>(j)];
      grid.cells(i, j) = johnk_efficiency(solve_alphas(CorrelatedBetaTarget<>{c1, c2, c1, r}));
    }
  }
  return grid;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

EmpiricalEfficiency empirical_efficiency(RngStream& stream, const DirichletAlphas<>& alphas,
                                         std::uint64_t attempts) {
  if (attempts == 0) {
    throw InvalidInput("attempts must be at least 1");
  }
  EmpiricalEfficiency out;
  out.attempts = attempts;
  Eigen::Vector4d z;
  for (std::uint64_t k = 0; k < attempts; ++k) {
    if (johnk_trial(stream, alphas, z)) ++out.accepts;
  }
  const double n = static_cast<double>(attempts);
  out.rate = static_cast<double>(out.accepts) / n;
  out.half_width = 3.0 * std::sqrt(out.rate * (1.0 - out.rate) / n);
  return out;
}

}  // namespace corrbeta
