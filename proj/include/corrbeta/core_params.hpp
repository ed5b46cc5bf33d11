#pragma once

// Inverse problem for positively correlated beta pairs.
//
// A target pair (Y1, Y2) with Y1 ~ Be(c1, c2), Y2 ~ Be(c3, c4) and
// corr(Y1, Y2) = r is realised as Y1 = X1 + X3, Y2 = X2 + X3 where
// (X1, X2, X3) is Dirichlet with shapes (a0, a1, a2, a3). The four marginal
// shapes fix c1 = a1 + a3, c2 = a0 + a2, c3 = a2 + a3, c4 = a0 + a1, and r
// pins the remaining degree of freedom through a3.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrbeta/errors.hpp"

namespace corrbeta {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Desired beta marginals Be(c1, c2), Be(c3, c4) and correlation r.
/// c4 is implied by c1 + c2 - c3 and never stored.
template <typename Scalar = double>
struct CorrelatedBetaTarget {
  Scalar c1{1};
  Scalar c2{1};
  Scalar c3{1};
  Scalar r{0};

  Scalar c4() const { return c1 + c2 - c3; }
};

/// Dirichlet shapes (a0, a1, a2, a3); a0 belongs to the implied coordinate
/// X0 = 1 - X1 - X2 - X3.
template <typename Scalar = double>
class DirichletAlphas {
 public:
  DirichletAlphas(Scalar a0, Scalar a1, Scalar a2, Scalar a3)
      : DirichletAlphas(Vector4<Scalar>(a0, a1, a2, a3)) {}

  explicit DirichletAlphas(const Vector4<Scalar>& values) : values_(values) {
    for (Eigen::Index i = 0; i < 4; ++i) {
      if (!(values_[i] > Scalar(0)) || !std::isfinite(values_[i])) {
        throw InvalidInput("Dirichlet shapes must be finite and positive");
      }
    }
  }

  Scalar a0() const { return values_[0]; }
  Scalar a1() const { return values_[1]; }
  Scalar a2() const { return values_[2]; }
  Scalar a3() const { return values_[3]; }
  Scalar operator[](Eigen::Index i) const { return values_[i]; }

  /// Sum of all four shapes (the Dirichlet concentration).
  Scalar gamma_sum() const { return values_.sum(); }

  const Vector4<Scalar>& values() const { return values_; }

 private:
  Vector4<Scalar> values_;
};

enum class SpecialCase { General, CaseI, CaseII, CaseIII, CaseIV };

inline std::string_view to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::CaseI: return "CaseI";
    case SpecialCase::CaseII: return "CaseII";
    case SpecialCase::CaseIII: return "CaseIII";
    case SpecialCase::CaseIV: return "CaseIV";
    case SpecialCase::General: break;
  }
  return "General";
}

/// Positivity restrictions on the solved shapes, plus c4 > 0.
enum class Restriction {
  C4Positive,
  Alpha1Positive,
  Alpha2Positive,
  Alpha0Positive,
  Alpha3Positive
};

inline std::string_view to_string(Restriction r) {
  switch (r) {
    case Restriction::C4Positive: return "c4_positive";
    case Restriction::Alpha1Positive: return "alpha1_positive";
    case Restriction::Alpha2Positive: return "alpha2_positive";
    case Restriction::Alpha0Positive: return "alpha0_positive";
    case Restriction::Alpha3Positive: return "alpha3_positive";
  }
  return "unknown";
}

/// Shapes as computed from the target, before any positivity check.
template <typename Scalar = double>
struct AlphaMargins {
  Scalar alpha1;
  Scalar alpha2;
  Scalar alpha0;
  Scalar alpha3;
};

template <typename Scalar = double>
struct FeasibilityReport {
  bool feasible = false;
  Scalar alpha3 = std::numeric_limits<Scalar>::quiet_NaN();
  AlphaMargins<Scalar> margins{};
  std::vector<Restriction> violated;
  SpecialCase special_case = SpecialCase::General;

  bool violates(Restriction r) const {
    return std::find(violated.begin(), violated.end(), r) != violated.end();
  }
};

template <typename Scalar>
class BasicInfeasible : public std::domain_error {
 public:
  explicit BasicInfeasible(FeasibilityReport<Scalar> report)
      : std::domain_error(message(report)), report_(std::move(report)) {}

  const FeasibilityReport<Scalar>& report() const noexcept { return report_; }

 private:
  static std::string message(const FeasibilityReport<Scalar>& report) {
    std::string msg = "infeasible target, violated:";
    for (Restriction r : report.violated) {
      msg += ' ';
      msg += to_string(r);
    }
    return msg;
  }

  FeasibilityReport<Scalar> report_;
};

using Infeasible = BasicInfeasible<double>;

/// Analytic feasibility condition of one of the special cases, evaluated at
/// a target. For Cases II and III the condition is lower < quantity < upper
/// (quantity is c1, resp. c1/c3); Cases I and IV hold unconditionally.
template <typename Scalar = double>
struct CaseBounds {
  SpecialCase special_case = SpecialCase::General;
  bool unconditional = false;
  Scalar quantity = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar lower = -std::numeric_limits<Scalar>::infinity();
  Scalar upper = std::numeric_limits<Scalar>::infinity();
  bool feasible = false;

  std::string describe() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << to_string(special_case) << ": ";
    if (unconditional) {
      os << "feasible for all 0 <= r < 1";
    } else {
      os << lower << " < "
         << (special_case == SpecialCase::CaseII ? "c1" : "c1/c3") << " = "
         << quantity << " < " << upper;
    }
    return os.str();
  }
};

namespace detail {

template <typename Scalar>
void require_shapes(Scalar c1, Scalar c2, Scalar c3) {
  auto ok = [](Scalar c) { return std::isfinite(c) && c > Scalar(0); };
  if (!ok(c1) || !ok(c2) || !ok(c3)) {
    throw InvalidTarget("marginal shapes c1, c2, c3 must be finite and positive");
  }
}

template <typename Scalar>
void require_domain(const CorrelatedBetaTarget<Scalar>& t) {
  require_shapes(t.c1, t.c2, t.c3);
  if (!(t.r >= Scalar(0) && t.r < Scalar(1))) {
    throw InvalidTarget("target correlation r must lie in [0, 1)");
  }
}

template <typename Scalar>
Scalar alpha3_formula(Scalar c1, Scalar c2, Scalar c3, Scalar r) {
  using std::sqrt;
  return (r * sqrt(c1 * c2 * c3 * (c1 + c2 - c3)) + c1 * c3) / (c1 + c2);
}

}  // namespace detail

/// Special case tag from exact equality of the input shapes.
template <typename Scalar>
SpecialCase classify_case(const CorrelatedBetaTarget<Scalar>& t) {
  const bool e13 = t.c1 == t.c3;
  const bool e23 = t.c2 == t.c3;
  const bool e12 = t.c1 == t.c2;
  if (e13 && e23) return SpecialCase::CaseIV;
  if (e13) return SpecialCase::CaseI;
  if (e23) return SpecialCase::CaseII;
  if (e12) return SpecialCase::CaseIII;
  return SpecialCase::General;
}

template <typename Scalar>
Scalar derived_c4(const CorrelatedBetaTarget<Scalar>& t) {
  detail::require_shapes(t.c1, t.c2, t.c3);
  const Scalar c4 = t.c4();
  if (!(c4 > Scalar(0))) {
    throw InvalidTarget("c1 + c2 must exceed c3");
  }
  return c4;
}

/// a3 = (r sqrt(c1 c2 c3 c4) + c1 c3) / (c1 + c2); strictly positive.
template <typename Scalar>
Scalar solve_alpha3(const CorrelatedBetaTarget<Scalar>& t) {
  detail::require_domain(t);
  derived_c4(t);
  return detail::alpha3_formula(t.c1, t.c2, t.c3, t.r);
}

template <typename Scalar>
FeasibilityReport<Scalar> check_feasibility(const CorrelatedBetaTarget<Scalar>& t) {
  detail::require_domain(t);

  FeasibilityReport<Scalar> report;
  report.special_case = classify_case(t);

  if (!(t.c4() > Scalar(0))) {
    const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    report.margins = {nan, nan, nan, nan};
    report.violated.push_back(Restriction::C4Positive);
    return report;
  }

  const Scalar a3 = detail::alpha3_formula(t.c1, t.c2, t.c3, t.r);
  report.alpha3 = a3;
  report.margins = {t.c1 - a3, t.c3 - a3, t.c2 - t.c3 + a3, a3};

  // Strict: a shape that is exactly zero is degenerate.
  const auto check = [&](Scalar value, Restriction r) {
    if (!(value > Scalar(0))) report.violated.push_back(r);
  };
  check(report.margins.alpha1, Restriction::Alpha1Positive);
  check(report.margins.alpha2, Restriction::Alpha2Positive);
  check(report.margins.alpha0, Restriction::Alpha0Positive);
  check(report.margins.alpha3, Restriction::Alpha3Positive);

  report.feasible = report.violated.empty();
  return report;
}

/// Solves (c1, c2, c3, r) for the Dirichlet shapes. Throws BasicInfeasible
/// carrying the feasibility report when a restriction fails.
template <typename Scalar>
DirichletAlphas<Scalar> solve_alphas(const CorrelatedBetaTarget<Scalar>& t) {
  auto report = check_feasibility(t);
  if (!report.feasible) {
    throw BasicInfeasible<Scalar>(std::move(report));
  }
  const auto& m = report.margins;
  return DirichletAlphas<Scalar>(m.alpha0, m.alpha1, m.alpha2, m.alpha3);
}

template <typename Scalar>
Scalar target_correlation(const DirichletAlphas<Scalar>& a) {
  using std::sqrt;
  const Scalar num = a.a0() * a.a3() - a.a1() * a.a2();
  return num / sqrt((a.a1() + a.a3()) * (a.a0() + a.a2()) * (a.a2() + a.a3()) *
                    (a.a0() + a.a1()));
}

template <typename Scalar>
Scalar covariance_y(const DirichletAlphas<Scalar>& a) {
  const Scalar g = a.gamma_sum();
  return (a.a0() * a.a3() - a.a1() * a.a2()) / (g * g * (g + 1));
}

/// (Cov(X1,X2), Cov(X1,X3), Cov(X2,X3)); every entry is negative.
template <typename Scalar>
Vector3<Scalar> dirichlet_pair_covariances(const DirichletAlphas<Scalar>& a) {
  const Scalar g = a.gamma_sum();
  const Scalar denom = g * g * (g + 1);
  return Vector3<Scalar>(-a.a1() * a.a2(), -a.a1() * a.a3(), -a.a2() * a.a3()) / denom;
}

template <typename Scalar>
Scalar variance_x3(const DirichletAlphas<Scalar>& a) {
  const Scalar g = a.gamma_sum();
  return a.a3() * (g - a.a3()) / (g * g * (g + 1));
}

/// Analytic feasibility bounds for Cases I-IV; empty for General targets.
template <typename Scalar>
std::optional<CaseBounds<Scalar>> case_bounds(const CorrelatedBetaTarget<Scalar>& t) {
  detail::require_domain(t);
  const SpecialCase kind = classify_case(t);
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  CaseBounds<Scalar> b;
  b.special_case = kind;
  switch (kind) {
    case SpecialCase::General:
      return std::nullopt;
    case SpecialCase::CaseI:
    case SpecialCase::CaseIV:
      b.unconditional = true;
      b.feasible = true;
      return b;
    case SpecialCase::CaseII:
      // r c2 < c1 < c2 / r
      b.quantity = t.c1;
      b.lower = t.r * t.c2;
      b.upper = t.r > Scalar(0) ? t.c2 / t.r : inf;
      break;
    case SpecialCase::CaseIII: {
      // (1 + r^2) / 2 < c1 / c3 < (1 + r^2) / (2 r^2)
      const Scalar r2 = t.r * t.r;
      b.quantity = t.c1 / t.c3;
      b.lower = (1 + r2) / 2;
      b.upper = t.r > Scalar(0) ? (1 + r2) / (2 * r2) : inf;
      break;
    }
  }
  b.feasible = b.lower < b.quantity && b.quantity < b.upper;
  return b;
}

/// Supremum of the feasible correlations for the shapes (c1, c2, c3).
/// Feasibility is monotone in r: a1 and a2 decrease while a0 and a3 grow.
template <typename Scalar>
Scalar max_feasible_r(Scalar c1, Scalar c2, Scalar c3) {
  const CorrelatedBetaTarget<Scalar> base{c1, c2, c3, Scalar(0)};
  derived_c4(base);

  switch (classify_case(base)) {
    case SpecialCase::CaseI:
    case SpecialCase::CaseIV:
      return Scalar(1);
    case SpecialCase::CaseII:
      return std::min({c1 / c2, c2 / c1, Scalar(1)});
    default:
      break;
  }

  // r = 0 is always feasible once c4 > 0.
  Scalar lo = 0;
  Scalar hi = 1;
  while (hi - lo > Scalar(1e-10)) {
    const Scalar mid = (lo + hi) / 2;
    if (check_feasibility(CorrelatedBetaTarget<Scalar>{c1, c2, c3, mid}).feasible) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace corrbeta
