#pragma once

// Classical side of the branched model: the fractional-kinetic Lagrangian
//
//   L = C (v-1)^((2k-1)/(2k+1)) - f(v) - V(x),
//   C = (2k+1)/(2k-1) * (1/4)^(2/(2k+1)),
//
// its canonical momentum, the two velocity roots and the two Hamiltonian
// branches. The k = 1 family with f(v) = lambda v + 3 delta (v-1)^(1/3) is
// invertible in closed form; for general k only the f = 0 pair and the
// parametric-in-v relations are provided.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace branchlab {

enum class BranchSign { Plus, Minus };

inline double sign_factor(BranchSign s) { return s == BranchSign::Plus ? 1.0 : -1.0; }

inline const char* to_string(BranchSign s) { return s == BranchSign::Plus ? "plus" : "minus"; }

/// 4^(-2/3): the bare k = 1 kinetic scale, and the strict upper bound on delta.
inline const double kBareMu = std::pow(4.0, -2.0 / 3.0);

/// Parameters of the Lagrangian / Hamiltonian family.
///
/// Built either from (lambda, delta), in which case mu = 4^(-2/3) - delta and
/// gamma = mu^(3/2), or directly from gamma. The direct route leaves delta
/// unset and also admits gamma <= 0, which only the momentum-space
/// pseudo-potential can use; classical branch operations reject it.
class ModelParams {
 public:
  static ModelParams from_delta(int k, double lambda, double delta) {
    check_common(k, lambda);
    if (!std::isfinite(delta) || !(delta < kBareMu)) {
      throw DomainError("delta must satisfy delta < 4^(-2/3) = " + std::to_string(kBareMu) +
                        " (got " + std::to_string(delta) + ")");
    }
    ModelParams m;
    m.k_ = k;
    m.lambda_ = lambda;
    m.delta_ = delta;
    m.mu_ = kBareMu - delta;
    m.gamma_ = *m.mu_ * std::sqrt(*m.mu_);
    return m;
  }

  static ModelParams from_gamma(int k, double lambda, double gamma) {
    check_common(k, lambda);
    if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
    ModelParams m;
    m.k_ = k;
    m.lambda_ = lambda;
    m.gamma_ = gamma;
    if (gamma > 0.0) m.mu_ = std::cbrt(gamma * gamma);
    return m;
  }

  int k() const { return k_; }
  double lambda() const { return lambda_; }
  double gamma() const { return gamma_; }
  std::optional<double> delta() const { return delta_; }

  /// mu = 4^(-2/3) - delta = gamma^(2/3). Defined only for gamma > 0.
  double mu() const {
    require_classical();
    return *mu_;
  }

  /// delta as given, or 4^(-2/3) - mu for the direct-gamma construction.
  double effective_delta() const { return delta_ ? *delta_ : kBareMu - mu(); }

  void require_classical() const {
    if (!(gamma_ > 0.0) || !mu_) {
      throw DomainError("classical branch operations need gamma > 0 (got gamma = " +
                        std::to_string(gamma_) + ")");
    }
  }

 private:
  ModelParams() = default;

  static void check_common(int k, double lambda) {
    if (k < 1) throw DomainError("k must be a positive integer (got " + std::to_string(k) + ")");
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw DomainError("lambda must be finite and >= 0 (got " + std::to_string(lambda) + ")");
    }
  }

  int k_ = 1;
  double lambda_ = 0.0;
  std::optional<double> delta_;
  std::optional<double> mu_;
  double gamma_ = 0.0;
};

/// A velocity stored as its offset from the branch point v = 1.
///
/// The two roots approach v = 1 like (p+lambda)^(-3/2); storing 1 + offset as a
/// plain double would lose every significant digit of the offset at large p.
struct Velocity {
  double offset = 0.0;

  static Velocity from_value(double v) { return Velocity{v - 1.0}; }
  double value() const { return 1.0 + offset; }
};

struct VelocityBranches {
  Velocity plus;   // v < 1, pairs with H_plus
  Velocity minus;  // v > 1, pairs with H_minus
};

/// C(k) = (2k+1)/(2k-1) * (1/4)^(2/(2k+1)).
inline double kinetic_constant(int k) {
  if (k < 1) throw DomainError("kinetic_constant: k must be >= 1 (got " + std::to_string(k) + ")");
  const double a = 2.0 * k + 1.0;
  const double b = 2.0 * k - 1.0;
  return (a / b) * std::pow(0.25, 2.0 / a);
}

/// H_pm - V = p +- p^(-(2k-1)/2) / (4k-2), the f = 0 pair for any k.
inline double general_branch_hamiltonian(double p, int k, BranchSign sign) {
  if (k < 1) throw DomainError("general_branch_hamiltonian: k must be >= 1");
  if (!(p > 0.0)) throw DomainError("general_branch_hamiltonian: p must be > 0");
  const double tail = std::pow(p, -(2.0 * k - 1.0) / 2.0) / (4.0 * k - 2.0);
  return p + sign_factor(sign) * tail;
}

/// Velocity roots of the f = 0 general-k momentum relation:
/// v_pm = 1 -+ (1/4) p^(-(2k+1)/2).
inline VelocityBranches general_velocity_branches(double p, int k) {
  if (k < 1) throw DomainError("general_velocity_branches: k must be >= 1");
  if (!(p > 0.0)) throw DomainError("general_velocity_branches: p must be > 0");
  const double off = 0.25 * std::pow(p, -(2.0 * k + 1.0) / 2.0);
  return {Velocity{-off}, Velocity{off}};
}

/// f(v) = lambda v + 3 delta (v-1)^(1/3), real-signed cube root.
inline double f_of_v(double v, const ModelParams& params) {
  return params.lambda() * v + 3.0 * params.effective_delta() * std::cbrt(v - 1.0);
}

/// f'(v) = lambda + delta (v-1)^(-2/3).
inline double f_prime_of_v(Velocity v, const ModelParams& params) {
  if (v.offset == 0.0) throw DomainError("f'(v) diverges at v = 1");
  const double r = std::cbrt(v.offset);
  return params.lambda() + params.effective_delta() / (r * r);
}

/// p = mu (v-1)^(-2/3) - lambda for the k = 1 family.
inline double canonical_momentum_k1(Velocity v, const ModelParams& params) {
  const double mu = params.mu();
  if (v.offset == 0.0 || !std::isfinite(v.offset)) {
    throw DomainError("canonical momentum diverges at v = 1");
  }
  const double r = std::cbrt(v.offset);
  return mu / (r * r) - params.lambda();
}

inline double canonical_momentum_k1(double v, const ModelParams& params) {
  return canonical_momentum_k1(Velocity::from_value(v), params);
}

namespace detail {
inline double shifted_momentum(double p, const ModelParams& params, const char* who) {
  const double x = p + params.lambda();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": need p + lambda > 0; the cusp sits at p = -lambda = " +
                      std::to_string(-params.lambda()) + " (got p = " + std::to_string(p) + ")");
  }
  return x;
}
}  // namespace detail

/// v_pm(p) = 1 -+ gamma (p+lambda)^(-3/2), with gamma = mu^(3/2).
inline VelocityBranches velocity_branches(double p, const ModelParams& params) {
  params.require_classical();
  const double x = detail::shifted_momentum(p, params, "velocity_branches");
  const double off = params.gamma() / (x * std::sqrt(x));
  return {Velocity{-off}, Velocity{off}};
}

/// H_pm - V = (p+lambda) +- 2 gamma / sqrt(p+lambda).
inline double branch_hamiltonian_k1(double p, BranchSign sign, const ModelParams& params) {
  params.require_classical();
  const double x = detail::shifted_momentum(p, params, "branch_hamiltonian_k1");
  return x + sign_factor(sign) * 2.0 * params.gamma() / std::sqrt(x);
}

/// p = (1/4)^(2/(2k+1)) (v-1)^(-2/(2k+1)) - f'(v).
///
/// Forward map only. For general f the relation is not inverted; callers
/// trace (p(v), H(v)) parametrically.
inline double general_momentum_parametric(Velocity v, int k, double fprime_at_v) {
  if (k < 1) throw DomainError("general_momentum_parametric: k must be >= 1");
  if (v.offset == 0.0) throw DomainError("general_momentum_parametric: v = 1 excluded");
  const double a = 2.0 * k + 1.0;
  // even power of the real (2k+1)-st root
  return std::pow(0.25, 2.0 / a) * std::pow(std::abs(v.offset), -2.0 / a) - fprime_at_v;
}

inline double general_momentum_parametric(double v, int k, double fprime_at_v) {
  return general_momentum_parametric(Velocity::from_value(v), k, fprime_at_v);
}

/// Mixed-form branch pair
///
///   H_pm = p +- (1/4) P^(-(2k-1)/2) ((2k+1)/(2k-1) - p/P) + U,   P = p + f'(v).
///
/// Diagnostic only: it is a function of p and of v (through f' and U), so it
/// is a genuine Hamiltonian only on shell, p = p(v). The Plus sign is the
/// v < 1 root.
inline double general_mixed_hamiltonian(double p, int k, double fprime_at_v, double u_at_xv,
                                        BranchSign sign) {
  if (k < 1) throw DomainError("general_mixed_hamiltonian: k must be >= 1");
  const double P = p + fprime_at_v;
  if (!(P > 0.0)) throw DomainError("general_mixed_hamiltonian: need p + f'(v) > 0");
  const double b = 2.0 * k - 1.0;
  const double term = 0.25 * std::pow(P, -b / 2.0) * ((2.0 * k + 1.0) / b - p / P);
  return p + sign_factor(sign) * term + u_at_xv;
}

struct BranchPoint {
  double p;
  double value;
};

/// Sampled H_pm - V curve of the k = 1 family (plot data).
struct BranchCurve {
  std::vector<BranchPoint> points;
  BranchSign branch;
  ModelParams params;
};

inline std::vector<double> uniform_samples(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs.back() = hi;
  return xs;
}

inline BranchCurve sample_branch_curve(double p_min, double p_max, int n, BranchSign sign,
                                       const ModelParams& params) {
  if (n < 2) throw DomainError("sample_branch_curve: need n >= 2");
  if (!(p_min < p_max)) throw DomainError("sample_branch_curve: need p_min < p_max");
  if (!(p_min + params.lambda() > 0.0)) {
    throw DomainError("sample_branch_curve: p_min must lie right of the cusp p = -lambda = " +
                      std::to_string(-params.lambda()));
  }
  BranchCurve curve{{}, sign, params};
  curve.points.reserve(static_cast<std::size_t>(n));
  for (double p : uniform_samples(p_min, p_max, n)) {
    curve.points.push_back({p, branch_hamiltonian_k1(p, sign, params)});
  }
  return curve;
}

}  // namespace branchlab
