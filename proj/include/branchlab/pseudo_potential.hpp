#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perturbation.hpp"

namespace branchlab {

/// W(p) = p + 2 gamma / sqrt(p + lambda) on the half-line p > 0.
///
/// lambda = 0 is the model of interest; a positive shift moves the singular
/// point to p = -lambda, outside the domain.
class PseudoPotential {
 public:
  explicit PseudoPotential(double gamma, double shift_lambda = 0.0)
      : gamma_(gamma), lambda_(shift_lambda) {
    if (!std::isfinite(gamma) || gamma == 0.0) {
      throw DomainError(
          "pseudo-potential needs gamma != 0; gamma = 0 leaves W = p (Airy regime), which "
          "this solver does not treat");
    }
    if (!std::isfinite(shift_lambda) || shift_lambda < 0.0) {
      throw DomainError("pseudo-potential shift lambda must be >= 0");
    }
  }

  double gamma() const { return gamma_; }
  double shift_lambda() const { return lambda_; }
  bool singular_at_origin() const { return lambda_ == 0.0; }

  double operator()(double p) const { return p + 2.0 * gamma_ / std::sqrt(p + lambda_); }

  /// dW/dp and d2W/dp2, used by the regular-start shooting.
  double d1(double p) const {
    const double x = p + lambda_;
    return 1.0 - gamma_ / (x * std::sqrt(x));
  }
  double d2(double p) const {
    const double x = p + lambda_;
    return 1.5 * gamma_ / (x * x * std::sqrt(x));
  }

 private:
  double gamma_;
  double lambda_;
};

inline double eval_W(double p, const PseudoPotential& pot) {
  if (!(p > 0.0)) throw DomainError("eval_W: p must be > 0 (half-line)");
  return pot(p);
}

enum class BcKind { Dirichlet, Neumann, Robin };

/// Boundary condition at p = 0. Robin means psi'(0) = alpha psi(0).
struct BoundaryCondition {
  BcKind kind = BcKind::Dirichlet;
  double alpha = 0.0;

  static BoundaryCondition dirichlet() { return {BcKind::Dirichlet, 0.0}; }
  static BoundaryCondition neumann() { return {BcKind::Neumann, 0.0}; }
  static BoundaryCondition robin(double alpha) { return {BcKind::Robin, alpha}; }
};

inline std::string to_string(const BoundaryCondition& bc) {
  switch (bc.kind) {
    case BcKind::Dirichlet: return "dirichlet";
    case BcKind::Neumann: return "neumann";
    case BcKind::Robin: return "robin";
  }
  return "?";
}

/// Uniform grid p_i = i h, i = 1..n, with walls at p = 0 and p = p_max = (n+1) h.
class Grid {
 public:
  static constexpr int kMinInterior = 16;

  Grid(double p_max, int n) : p_max_(p_max), n_(n) {
    if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("grid: p_max must be > 0");
    if (n < kMinInterior) {
      throw DomainError("grid: need at least " + std::to_string(kMinInterior) +
                        " interior points (got " + std::to_string(n) + ")");
    }
  }

  double p_max() const { return p_max_; }
  int n() const { return n_; }
  double h() const { return p_max_ / (n_ + 1); }
  double node(int i) const { return i * h(); }

  /// Same walls, spacing h/2.
  Grid halved() const { return Grid(p_max_, 2 * n_ + 1); }

  /// Same spacing, wall moved to 2 p_max.
  Grid doubled_wall() const { return Grid(2.0 * p_max_, 2 * n_ + 1); }

 private:
  double p_max_;
  int n_;
};

/// Default resolution: p_max = max(p0 + 25 rho, 30), at least 40 nodes per
/// oscillator length rho and never fewer than `min_interior` nodes.
inline Grid default_grid(const PseudoPotential& pot, int min_interior = 20000) {
  double p0 = 0.0;
  double rho = 1.0;  // Airy length of W = p
  if (pot.gamma() > 0.0) {
    p0 = minimum_of_W(pot.gamma()).p0;
    rho = rescaling(pot.gamma()).rho;
  }
  const double p_max = std::max(p0 + 25.0 * rho, 30.0);
  const int by_width = static_cast<int>(std::ceil(40.0 * p_max / rho));
  return Grid(p_max, std::max(by_width, min_interior));
}

struct HalfLineReport {
  std::string summary;
  std::vector<std::string> warnings;
};

/// Why the problem lives on p > 0, and what the singular term at the origin does.
inline HalfLineReport left_halfline_guard(double gamma) {
  HalfLineReport r;
  if (gamma > 0.0) {
    r.summary = "half-line (0,inf); singularity repulsive";
  } else if (gamma < 0.0) {
    r.summary = "half-line (0,inf); singularity attractive, weak";
    r.warnings.push_back(
        "W -> -inf as p -> 0+; the inverse-square-root singularity is weak, so square "
        "integrability alone does not fix the boundary condition at p = 0");
    r.warnings.push_back("no completeness claim is made for the gamma < 0 spectrum");
  } else {
    r.summary = "half-line (0,inf); degenerate case gamma = 0: pure linear potential W = p, Airy regime";
  }
  r.warnings.push_back(
      "p < 0 excluded: W decreases linearly without bound on the left half-line, so no bound "
      "states exist there");
  return r;
}

inline HalfLineReport left_halfline_guard(const PseudoPotential& pot) {
  return left_halfline_guard(pot.gamma());
}

}  // namespace branchlab
