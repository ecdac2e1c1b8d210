#pragma once

// Small-p solutions of the leading-order equation
//
//   -sqrt(p) psi'' + 2 gamma psi = 0,
//
// which is psi'' = c p^(-1/2) psi and is solved by sqrt(p) Z_(2/3)(z) with
// z = (4 sqrt(2)/3) sqrt(|gamma|) p^(3/4): modified Bessel I, K for gamma > 0,
// ordinary J, Y for gamma < 0.
//
// Only orders +-2/3 and moderate arguments are supported; everything is
// summed from the ascending series.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace branchlab {

enum class BesselKind { I, K, J, Y };

namespace detail {

// Gamma(1/3), Gamma(5/3) to 20 significant digits (Abramowitz & Stegun, Table 6.1
// via Gamma(1 + x); cross-checked with a multiprecision evaluation).
inline constexpr long double kGammaOneThird = 2.6789385347077476337L;
inline constexpr long double kGammaFiveThirds = 0.90274529295093361130L;

template <class Real>
Real order_two_thirds() {
  return Real(2) / Real(3);
}

/// I_nu (modified = true) or J_nu for nu = +-2/3 by the ascending series.
template <class Real>
Real ascending_series(bool modified, int sign_of_order, Real z) {
  using std::pow;
  const Real nu = sign_of_order * order_two_thirds<Real>();
  if (z == Real(0)) {
    return sign_of_order > 0 ? Real(0) : std::numeric_limits<Real>::infinity();
  }
  // 1 / Gamma(nu + 1): Gamma(5/3) for +2/3, Gamma(1/3) for -2/3
  const Real gamma_nu1 =
      sign_of_order > 0 ? Real(kGammaFiveThirds) : Real(kGammaOneThird);
  const Real half = z / Real(2);
  const Real q = (modified ? Real(1) : Real(-1)) * half * half;
  Real term = pow(half, nu) / gamma_nu1;
  Real sum = term;
  constexpr int kMaxTerms = 60;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= q / (Real(k) * (Real(k) + nu));
    sum += term;
    if (std::abs(term) < Real(1e-17) * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/// Z_order(z) for Z in {I, K, J, Y} and order = +-2/3, 0 <= z <= 30.
///
/// K and Y come from the connection formulas
///   K_mu = pi (I_-mu - I_mu) / (2 sin mu pi),   Y_mu = (J_mu cos mu pi - J_-mu) / sin mu pi.
/// K loses relative accuracy to cancellation as z grows; it is meant for the
/// small-argument regime.
template <class Real = double>
Real bessel_frac(BesselKind kind, Real order, Real z);

namespace detail {
// double callers get the series summed in extended precision
template <class Real>
using SeriesAccumulator = std::conditional_t<(sizeof(Real) < sizeof(long double)), long double, Real>;
}  // namespace detail

template <class Real>
Real bessel_frac(BesselKind kind, Real order, Real z) {
  using Acc = detail::SeriesAccumulator<Real>;
  if constexpr (!std::is_same_v<Acc, Real>) {
    return static_cast<Real>(bessel_frac<Acc>(kind, static_cast<Acc>(order), static_cast<Acc>(z)));
  }
  if (!(z >= Real(0))) throw DomainError("bessel_frac: z must be >= 0");
  if (z > Real(30)) throw DomainError("bessel_frac: z > 30 is outside the small-argument regime");
  const Real two_thirds = detail::order_two_thirds<Real>();
  int sgn = 0;
  if (std::abs(order - two_thirds) < Real(1e-12)) {
    sgn = 1;
  } else if (std::abs(order + two_thirds) < Real(1e-12)) {
    sgn = -1;
  } else {
    throw DomainError("bessel_frac: only orders +-2/3 are supported");
  }
  const Real mu = sgn * two_thirds;
  const Real pi = std::numbers::pi_v<Real>;
  switch (kind) {
    case BesselKind::I: return detail::ascending_series<Real>(true, sgn, z);
    case BesselKind::J: return detail::ascending_series<Real>(false, sgn, z);
    case BesselKind::K: {
      if (z == Real(0)) return std::numeric_limits<Real>::infinity();
      const Real ip = detail::ascending_series<Real>(true, sgn, z);
      const Real im = detail::ascending_series<Real>(true, -sgn, z);
      return pi * (im - ip) / (Real(2) * std::sin(mu * pi));
    }
    case BesselKind::Y: {
      if (z == Real(0)) return -std::numeric_limits<Real>::infinity();
      const Real jp = detail::ascending_series<Real>(false, sgn, z);
      const Real jm = detail::ascending_series<Real>(false, -sgn, z);
      return (jp * std::cos(mu * pi) - jm) / std::sin(mu * pi);
    }
  }
  return Real(0);
}

enum class SolutionFamily { ModifiedIK, OrdinaryJY };

inline const char* to_string(SolutionFamily f) {
  return f == SolutionFamily::ModifiedIK ? "modified_IK" : "ordinary_JY";
}

/// C1 sqrt(p) I(z) + C2 sqrt(p) K(z)   (gamma > 0), or
/// D1 sqrt(p) J(z) + D2 sqrt(p) Y(z)   (gamma < 0).
struct SmallPSolution {
  double gamma;
  SolutionFamily family;
  double coeff_regular;   // C1 or D1
  double coeff_singular;  // C2 or D2

  static SmallPSolution regular(double gamma) { return {gamma, family_for(gamma), 1.0, 0.0}; }
  static SmallPSolution singular(double gamma) { return {gamma, family_for(gamma), 0.0, 1.0}; }

  static SolutionFamily family_for(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw DomainError("small-p solutions need gamma != 0");
    return gamma > 0.0 ? SolutionFamily::ModifiedIK : SolutionFamily::OrdinaryJY;
  }
};

template <class Real = double>
Real bessel_argument(double gamma, Real p) {
  using std::pow;
  using std::sqrt;
  return Real(4) * sqrt(Real(2)) / Real(3) * sqrt(Real(std::abs(gamma))) * pow(p, Real(0.75));
}

template <class Real = double>
Real small_p_solution(Real p, const SmallPSolution& sol) {
  if (!(p > Real(0))) throw DomainError("small_p_solution: p must be > 0");
  if (SmallPSolution::family_for(sol.gamma) != sol.family) {
    throw DomainError("small_p_solution: family does not match the sign of gamma");
  }
  const Real z = bessel_argument<Real>(sol.gamma, p);
  const Real nu = detail::order_two_thirds<Real>();
  const bool modified = sol.family == SolutionFamily::ModifiedIK;
  const Real root = std::sqrt(p);
  Real psi = 0;
  if (sol.coeff_regular != 0.0) {
    psi += Real(sol.coeff_regular) * root * bessel_frac<Real>(modified ? BesselKind::I : BesselKind::J, nu, z);
  }
  if (sol.coeff_singular != 0.0) {
    psi += Real(sol.coeff_singular) * root * bessel_frac<Real>(modified ? BesselKind::K : BesselKind::Y, nu, z);
  }
  return psi;
}

namespace detail {

struct ValueAndCurvature {
  long double psi = 0;
  long double d2 = 0;
};

/// sqrt(p) * (I or J)_(sgn 2/3)(z(p)) and its second p-derivative, summed
/// term by term: every series term is a pure power p^e, so d2/dp2 is exact.
inline ValueAndCurvature series_in_p(bool modified, int sgn, double gamma, long double p) {
  using Real = long double;
  const Real nu = sgn * order_two_thirds<Real>();
  const Real half = bessel_argument<Real>(gamma, p) / 2;
  const Real q = (modified ? Real(1) : Real(-1)) * half * half;
  Real term = std::sqrt(p) * std::pow(half, nu) / (sgn > 0 ? kGammaFiveThirds : kGammaOneThird);
  ValueAndCurvature out;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= q / (Real(k) * (Real(k) + nu));
    const Real e = Real(0.5) + Real(0.75) * (2 * k + nu);
    out.psi += term;
    out.d2 += term * e * (e - 1) / (p * p);
    if (k > 0 && std::abs(term) < Real(1e-19) * std::abs(out.psi)) break;
  }
  return out;
}

}  // namespace detail

/// Relative residual of -sqrt(p) psi'' + 2 gamma psi = 0 at p, with psi''
/// from term-wise differentiation of the ascending series (extended
/// precision). Normalised by sqrt(p)|psi''| + 2|gamma psi|; exactly 0 for
/// psi == 0.
inline double verify_leading_order_ode(double p, const SmallPSolution& sol) {
  using Real = long double;
  if (!(p > 0.0) || p > 0.5) throw DomainError("verify_leading_order_ode: p must lie in (0, 0.5]");
  if (SmallPSolution::family_for(sol.gamma) != sol.family) {
    throw DomainError("verify_leading_order_ode: family does not match the sign of gamma");
  }
  if (sol.coeff_regular == 0.0 && sol.coeff_singular == 0.0) return 0.0;
  const bool modified = sol.family == SolutionFamily::ModifiedIK;
  const Real x = p;
  const auto plus = detail::series_in_p(modified, 1, sol.gamma, x);
  const auto minus = detail::series_in_p(modified, -1, sol.gamma, x);
  // singular element as a combination of the +-2/3 series (connection formulas)
  const Real mu_pi = detail::order_two_thirds<Real>() * std::numbers::pi_v<Real>;
  const Real sp = modified ? -std::numbers::pi_v<Real> / (2 * std::sin(mu_pi)) : std::cos(mu_pi) / std::sin(mu_pi);
  const Real sm = modified ? std::numbers::pi_v<Real> / (2 * std::sin(mu_pi)) : -1 / std::sin(mu_pi);
  const Real c1 = sol.coeff_regular;
  const Real c2 = sol.coeff_singular;
  const Real psi = (c1 + c2 * sp) * plus.psi + c2 * sm * minus.psi;
  const Real d2 = (c1 + c2 * sp) * plus.d2 + c2 * sm * minus.d2;
  const Real lhs = -std::sqrt(x) * d2;
  const Real rhs = 2 * Real(sol.gamma) * psi;
  return static_cast<double>((lhs + rhs) / (std::abs(lhs) + std::abs(rhs)));
}

struct BasisLimitSample {
  double p;
  double regular;   // basis element with coeff_regular = 1
  double singular;  // basis element with coeff_singular = 1
};

struct DirichletSelection {
  std::string vanishing_coefficient;  // "C2" or "D2"
  SolutionFamily family;
  std::vector<BasisLimitSample> samples;
};

/// Which coefficient psi(0+) = 0 forces to vanish, decided from the basis
/// values at p = 1e-4, 1e-6, 1e-8: the element whose value settles to a
/// nonzero constant violates the condition.
inline DirichletSelection dirichlet_selection(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw DomainError("dirichlet_selection: gamma must be nonzero");
  const auto reg = SmallPSolution::regular(gamma);
  const auto sing = SmallPSolution::singular(gamma);
  DirichletSelection out{"", reg.family, {}};
  for (double p : {1e-4, 1e-6, 1e-8}) {
    out.samples.push_back({p, small_p_solution(p, reg), small_p_solution(p, sing)});
  }
  const auto settles = [](double first, double last) {
    return std::abs(last) > 0.5 * std::abs(first) && last != 0.0;
  };
  const bool reg_violates = settles(out.samples.front().regular, out.samples.back().regular);
  const bool sing_violates = settles(out.samples.front().singular, out.samples.back().singular);
  if (reg_violates == sing_violates) {
    throw NumericalError("dirichlet_selection: could not separate the two basis limits");
  }
  const bool ik = out.family == SolutionFamily::ModifiedIK;
  if (sing_violates) {
    out.vanishing_coefficient = ik ? "C2" : "D2";
  } else {
    out.vanishing_coefficient = ik ? "C1" : "D1";
  }
  return out;
}

/// Least-squares slope of log|psi| against log p over log-spaced points.
inline double loglog_slope(const SmallPSolution& sol, double p_lo, double p_hi, int points = 21) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double a = std::log(p_lo);
  const double b = std::log(p_hi);
  for (int i = 0; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    const double y = std::log(std::abs(small_p_solution(std::exp(x), sol)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = points;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace branchlab
