#pragma once

// Numerov shooting for -psi'' + W(p) psi = E psi on (0, p_max), psi(p_max) = 0.
//
// Left solutions are started from the exact local expansion at p = 0, right
// solutions from the wall, and the two are matched through the normalised
// Wronskian at an interior node. This is the independent check on the
// finite-difference eigenvalues.

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pseudo_potential.hpp"

namespace branchlab {

/// Local solution psi(p) = sum_k a_k p^(k/2) of psi'' = (2 gamma/sqrt(p) + p - E) psi.
///
/// a_0 = psi(0) and a_2 = psi'(0) are free; the rest follow from
///   k (k-2) a_k = 4 (2 gamma a_{k-3} - E a_{k-4} + a_{k-6}),   a_1 = 0.
class OriginSeries {
 public:
  OriginSeries(double gamma, double energy, double a0, double a2)
      : gamma_(gamma), energy_(energy), a0_(a0), a2_(a2) {}

  double operator()(double p) const {
    constexpr int kMaxTerms = 2000;
    const double t = std::sqrt(p);
    std::vector<double> a(kMaxTerms + 1, 0.0);
    a[0] = a0_;
    a[2] = a2_;
    double tk = 1.0;  // t^k
    double sum = a0_;
    int small_run = 0;
    for (int k = 1; k <= kMaxTerms; ++k) {
      tk *= t;
      if (k >= 3) {
        const double am3 = a[static_cast<std::size_t>(k - 3)];
        const double am4 = k >= 4 ? a[static_cast<std::size_t>(k - 4)] : 0.0;
        const double am6 = k >= 6 ? a[static_cast<std::size_t>(k - 6)] : 0.0;
        a[static_cast<std::size_t>(k)] =
            4.0 * (2.0 * gamma_ * am3 - energy_ * am4 + am6) / (static_cast<double>(k) * (k - 2));
      }
      const double term = a[static_cast<std::size_t>(k)] * tk;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) {
        if (++small_run >= 6 && k > 6) return sum;
      } else {
        small_run = 0;
      }
    }
    throw NumericalError("origin series did not converge at p = " + std::to_string(p));
  }

 private:
  double gamma_;
  double energy_;
  double a0_;
  double a2_;
};

namespace detail {

/// (psi(0), psi'(0)) fixed by the boundary condition, up to scale.
inline std::pair<double, double> origin_data(const BoundaryCondition& bc) {
  switch (bc.kind) {
    case BcKind::Dirichlet: return {0.0, 1.0};
    case BcKind::Neumann: return {1.0, 0.0};
    case BcKind::Robin: return {1.0, bc.alpha};
  }
  return {0.0, 1.0};
}

struct NodePair {
  double at_m;
  double at_m1;
};

constexpr double kRescaleAbove = 1e150;

class Shooter {
 public:
  Shooter(const PseudoPotential& pot, const BoundaryCondition& bc, const Grid& grid)
      : pot_(pot), bc_(bc), grid_(grid), h_(grid.h()), h2_(h_ * h_ / 12.0) {}

  double u(int i, double energy) const {
    if (i == 0) return 1.0 - h2_ * (pot_(0.0) - energy);
    return 1.0 - h2_ * (pot_(grid_.node(i)) - energy);
  }

  /// First two nodes of the left solution: (index s, psi_s, psi_{s+1}).
  struct Start {
    int s;
    double psi_s;
    double psi_s1;
  };

  Start left_start(double energy) const {
    const auto [a0, a2] = origin_data(bc_);
    if (pot_.singular_at_origin()) {
      const double g = std::abs(pot_.gamma());
      double p_s = 0.05;
      p_s = std::min(p_s, 0.5 * std::pow(2.0 * g, -2.0 / 3.0));
      p_s = std::min(p_s, 0.5 / std::sqrt(std::abs(energy) + 1.0));
      const int s = std::max(1, static_cast<int>(p_s / h_));
      const OriginSeries series(pot_.gamma(), energy, a0, a2);
      return {s, series(grid_.node(s)), series(grid_.node(s + 1))};
    }
    // Regular origin: fourth-order Taylor step from p = 0.
    const double f0 = pot_(0.0) - energy;
    const double f1 = pot_.d1(0.0);
    const double f2 = pot_.d2(0.0);
    const double h = h_;
    const double psi1 = a0 + a2 * h + f0 * a0 * h * h / 2.0 + (f1 * a0 + f0 * a2) * h * h * h / 6.0 +
                        (f2 * a0 + 2.0 * f1 * a2 + f0 * f0 * a0) * h * h * h * h / 24.0;
    return {0, a0, psi1};
  }

  NodePair outward(double energy, int m, const Start& st) const {
    double prev = st.psi_s;
    double cur = st.psi_s1;
    if (m < st.s) throw NumericalError("shooting: matching node lies inside the series start");
    if (m == st.s) return {prev, cur};
    double u_prev = u(st.s, energy);
    double u_cur = u(st.s + 1, energy);
    for (int i = st.s + 1; i <= m; ++i) {
      const double u_next = u(i + 1, energy);
      const double next = ((12.0 - 10.0 * u_cur) * cur - u_prev * prev) / u_next;
      prev = cur;
      cur = next;
      u_prev = u_cur;
      u_cur = u_next;
      if (std::abs(cur) > kRescaleAbove) {
        prev /= kRescaleAbove;
        cur /= kRescaleAbove;
      }
    }
    return {prev, cur};
  }

  NodePair inward(double energy, int m) const {
    const int n = grid_.n();
    double nxt = 0.0;  // psi_{n+1}, the wall
    double cur = 1.0;  // psi_n
    double u_nxt = 1.0;
    double u_cur = u(n, energy);
    for (int i = n; i > m; --i) {
      const double u_prev = u(i - 1, energy);
      const double prev = ((12.0 - 10.0 * u_cur) * cur - u_nxt * nxt) / u_prev;
      nxt = cur;
      cur = prev;
      u_nxt = u_cur;
      u_cur = u_prev;
      if (std::abs(cur) > kRescaleAbove) {
        nxt /= kRescaleAbove;
        cur /= kRescaleAbove;
      }
    }
    return {cur, nxt};
  }

  /// sin of the angle between the left and right (psi_m, psi_{m+1}) vectors.
  double mismatch(double energy, int m) const {
    const Start st = left_start(energy);
    const NodePair l = outward(energy, m, st);
    const NodePair r = inward(energy, m);
    const double nl = std::hypot(l.at_m, l.at_m1);
    const double nr = std::hypot(r.at_m, r.at_m1);
    return (l.at_m * r.at_m1 - l.at_m1 * r.at_m) / (nl * nr);
  }

  /// Matching node: the interior minimum of W, else the turning point of e_hi.
  int match_index(double e_hi) const {
    const int n = grid_.n();
    int m = -1;
    if (pot_.gamma() > 0.0) {
      const double p_min = std::cbrt(pot_.gamma() * pot_.gamma()) - pot_.shift_lambda();
      if (p_min > 0.0 && p_min < grid_.p_max()) m = static_cast<int>(std::lround(p_min / h_));
    }
    if (m < 0) {
      m = n / 2;
      for (int i = 1; i <= n; ++i) {
        if (pot_(grid_.node(i)) >= e_hi) {
          m = i - 1;
          break;
        }
      }
    }
    // left starts never sit beyond p = 0.05
    const int lo = std::max(1, static_cast<int>(0.05 / h_)) + 1;
    return std::clamp(m, lo, n - 2);
  }

 private:
  PseudoPotential pot_;
  BoundaryCondition bc_;
  Grid grid_;
  double h_;
  double h2_;
};

}  // namespace detail

struct EnergyBracket {
  double lo;
  double hi;
};

/// Eigenvalue inside `bracket` by Numerov shooting with Wronskian matching.
/// The bracket must enclose exactly one level.
inline double shooting_eigenvalue(const PseudoPotential& pot, const BoundaryCondition& bc,
                                  const Grid& grid, EnergyBracket bracket) {
  if (!(bracket.lo < bracket.hi)) throw BracketError("shooting: empty energy bracket");
  const detail::Shooter shooter(pot, bc, grid);
  const int m = shooter.match_index(bracket.hi);
  auto f = [&](double e) { return shooter.mismatch(e, m); };
  const double f_lo = f(bracket.lo);
  const double f_hi = f(bracket.hi);
  if (f_lo == 0.0) return bracket.lo;
  if (f_hi == 0.0) return bracket.hi;
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketError("shooting: matching function has no sign change on [" +
                       std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) + "]");
  }
  std::uintmax_t max_iter = 200;
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4e-15 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  };
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, f_lo, f_hi, tol, max_iter);
  if (max_iter >= 200) throw NumericalError("shooting: root finder did not converge");
  return 0.5 * (a + b);
}

/// Plain Numerov solution with psi(0) = 0, psi(h) = h on nodes 0..steps,
/// for lambda = 0. The singular term multiplies psi(0) = 0 and drops out.
inline std::vector<double> numerov_dirichlet_profile(double gamma, double energy, double h,
                                                     int steps) {
  if (steps < 2 || !(h > 0.0)) throw DomainError("numerov profile: need h > 0 and steps >= 2");
  const double h2 = h * h / 12.0;
  auto u = [&](int i) {
    const double p = i * h;
    return 1.0 - h2 * (p + 2.0 * gamma / std::sqrt(p) - energy);
  };
  std::vector<double> psi(static_cast<std::size_t>(steps) + 1);
  psi[0] = 0.0;
  psi[1] = h;
  for (int i = 1; i < steps; ++i) {
    const double back = i == 1 ? 0.0 : u(i - 1) * psi[static_cast<std::size_t>(i - 1)];
    psi[static_cast<std::size_t>(i + 1)] =
        ((12.0 - 10.0 * u(i)) * psi[static_cast<std::size_t>(i)] - back) / u(i + 1);
  }
  return psi;
}

}  // namespace branchlab
