#pragma once

// Dirichlet and correlated-beta samplers.
//
// Two exact routes to a Dirichlet(a0, a1, a2, a3) draw:
//  - gamma ratios: Z_i ~ Gamma(a_i, 1), X_i = Z_i / sum(Z);
//  - generalized Johnk: Z_i = U_i^(1/a_i), accepted when S = sum(Z) <= 1,
//    then X_i = Z_i / S. The acceptance probability is johnk_efficiency().

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "corrbeta/core_params.hpp"
#include "corrbeta/errors.hpp"
#include "corrbeta/rng.hpp"

namespace corrbeta {

/// Coordinates (x1, x2, x3); x0 = 1 - x1 - x2 - x3.
struct DirichletDraw {
  double x1;
  double x2;
  double x3;

  double x0() const { return 1.0 - x1 - x2 - x3; }
};

struct SamplePair {
  double y1;
  double y2;
};

struct JohnkStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepts = 0;

  double acceptance_rate() const {
    return attempts == 0 ? 0.0
                         : static_cast<double>(accepts) / static_cast<double>(attempts);
  }
};

enum class Method { Gamma, Johnk };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;

double standard_normal(RngStream& stream);

/// Exact Gamma(shape, 1) variate for any shape > 0.
double sample_gamma(RngStream& stream, double shape);

DirichletDraw sample_dirichlet_gamma(RngStream& stream, const DirichletAlphas<>& alphas);

/// One Johnk trial: fills z with U_i^(1/a_i) and returns whether S <= 1.
bool johnk_trial(RngStream& stream, const DirichletAlphas<>& alphas, Eigen::Vector4d& z);

/// Retries Johnk trials until acceptance, updating stats on every trial.
/// Throws TooManyRejections after max_attempts consecutive rejections.
DirichletDraw sample_dirichlet_johnk(RngStream& stream, const DirichletAlphas<>& alphas,
                                     std::uint64_t max_attempts, JohnkStats& stats);

SamplePair to_pair(const DirichletDraw& draw);

/// n correlated beta pairs, one per row (y1, y2).
struct SampleBatch {
  Eigen::Matrix<double, Eigen::Dynamic, 2> pairs;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  Method method = Method::Gamma;
  std::optional<JohnkStats> johnk;

  std::size_t size() const { return static_cast<std::size_t>(pairs.rows()); }
  SamplePair operator[](std::size_t i) const {
    const auto row = static_cast<Eigen::Index>(i);
    return {pairs(row, 0), pairs(row, 1)};
  }
};

/// Solves the target for its Dirichlet shapes and draws n pairs whose
/// marginals are Be(c1, c2), Be(c3, c4) with correlation r.
/// Throws Infeasible, or TooManyRejections for the Johnk method.
SampleBatch sample_correlated_beta(RngStream& stream, const CorrelatedBetaTarget<>& target,
                                   std::size_t n, Method method,
                                   std::uint64_t max_attempts = kDefaultMaxAttempts);

}  // namespace corrbeta
