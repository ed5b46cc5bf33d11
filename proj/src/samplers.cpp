#include "corrbeta/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace corrbeta {

std::string_view to_string(Method m) {
  return m == Method::Johnk ? "johnk" : "gamma";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "gamma") return Method::Gamma;
  if (name == "johnk") return Method::Johnk;
  return std::nullopt;
}

double standard_normal(RngStream& stream) {
  // Marsaglia polar method; the second variate is discarded so that each
  // call consumes a self-contained chunk of the stream.
  for (;;) {
    const double u = 2.0 * stream.uniform() - 1.0;
    const double v = 2.0 * stream.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

namespace {

// Marsaglia & Tsang (2000), valid for shape >= 1.
double gamma_marsaglia_tsang(RngStream& stream, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(stream);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double sample_gamma(RngStream& stream, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw InvalidShape("gamma shape must be finite and positive");
  }
  if (shape >= 1.0) {
    return gamma_marsaglia_tsang(stream, shape);
  }
  // Gamma(a) = Gamma(a + 1) * U^(1/a), combined in log space.
  const double g = gamma_marsaglia_tsang(stream, shape + 1.0);
  const double u = stream.uniform();
  return std::exp(std::log(g) + std::log(u) / shape);
}

DirichletDraw sample_dirichlet_gamma(RngStream& stream, const DirichletAlphas<>& alphas) {
  Eigen::Vector4d z;
  for (Eigen::Index i = 0; i < 4; ++i) {
    z[i] = sample_gamma(stream, alphas[i]);
  }
  const double s = z.sum();
  return {z[1] / s, z[2] / s, z[3] / s};
}

bool johnk_trial(RngStream& stream, const DirichletAlphas<>& alphas, Eigen::Vector4d& z) {
  for (Eigen::Index i = 0; i < 4; ++i) {
    // exp(ln U / a) rather than pow(U, 1/a) for tiny shapes.
    z[i] = std::exp(std::log(stream.uniform()) / alphas[i]);
  }
  return z.sum() <= 1.0;
}

DirichletDraw sample_dirichlet_johnk(RngStream& stream, const DirichletAlphas<>& alphas,
                                     std::uint64_t max_attempts, JohnkStats& stats) {
  if (max_attempts == 0) {
    throw std::invalid_argument("max_attempts must be at least 1");
  }
  Eigen::Vector4d z;
  for (std::uint64_t k = 0; k < max_attempts; ++k) {
    ++stats.attempts;
    if (johnk_trial(stream, alphas, z)) {
      ++stats.accepts;
      const double s = z.sum();
      return {z[1] / s, z[2] / s, z[3] / s};
    }
  }
  throw TooManyRejections(max_attempts);
}

SamplePair to_pair(const DirichletDraw& draw) {
  return {draw.x1 + draw.x3, draw.x2 + draw.x3};
}

SampleBatch sample_correlated_beta(RngStream& stream, const CorrelatedBetaTarget<>& target,
                                   std::size_t n, Method method, std::uint64_t max_attempts) {
  if (n == 0) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  const DirichletAlphas<> alphas = solve_alphas(target);

  SampleBatch batch;
  batch.seed = stream.seed();
  batch.stream_id = stream.stream_id();
  batch.method = method;
  batch.pairs.resize(static_cast<Eigen::Index>(n), 2);

  JohnkStats stats;
  for (Eigen::Index i = 0; i < batch.pairs.rows(); ++i) {
    const DirichletDraw draw = method == Method::Johnk
                                   ? sample_dirichlet_johnk(stream, alphas, max_attempts, stats)
                                   : sample_dirichlet_gamma(stream, alphas);
    const SamplePair p = to_pair(draw);
    batch.pairs(i, 0) = p.y1;
    batch.pairs(i, 1) = p.y2;
  }
  if (method == Method::Johnk) batch.johnk = stats;
  return batch;
}

}  // namespace corrbeta
