#pragma once

// Acceptance probability of the generalized Johnk sampler.
//
// For shapes a_0..a_3 with sum g,
//   P{S <= 1} = prod_i a_i Gamma(a_i) / (g Gamma(g))
//             = exp(sum_i lnGamma(a_i + 1) - lnGamma(g + 1)).

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "corrbeta/core_params.hpp"
#include "corrbeta/rng.hpp"

namespace corrbeta {

/// Natural log of Gamma(x) for x > 0 (Lanczos, g = 7, nine terms).
double log_gamma(double x);

double johnk_efficiency(const DirichletAlphas<>& alphas);

/// Efficiency over c1 (rows) x c2 (columns) with c3 = c1 at fixed r.
struct EfficiencyGrid {
  static constexpr std::string_view constraint_tag = "c1=c3";

  double r = 0.0;
  std::vector<double> c1_values;
  std::vector<double> c2_values;
  Eigen::MatrixXd cells;
};

inline constexpr std::array<double, 8> kTableC1Values{0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0};
inline constexpr std::array<double, 8> kTableC2Values{0.23, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 5.0};

EfficiencyGrid efficiency_grid(double r, std::span<const double> c1_values,
                               std::span<const double> c2_values);

/// Half-up rounding to a fixed number of decimals (table rendering).
double round_half_up(double value, int decimals = 3);

struct EmpiricalEfficiency {
  double rate = 0.0;
  /// Three binomial standard errors.
  double half_width = 0.0;
  std::uint64_t attempts = 0;
  std::uint64_t accepts = 0;
};

EmpiricalEfficiency empirical_efficiency(RngStream& stream, const DirichletAlphas<>& alphas,
                                         std::uint64_t attempts);

}  // namespace corrbeta
