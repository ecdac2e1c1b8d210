#pragma once

// Large-gamma analysis of W(p) = p + 2 gamma / sqrt(p).
//
// The minimum sits at p0 = gamma^(2/3) with W(p0) = 3 gamma^(2/3). Around it
//
//   W(p) = W0 + (W2/2)(p-p0)^2 + (W3/6)(p-p0)^3 + ...,
//   W2 = (3/2) gamma^(-2/3),   W3 = -(15/4) gamma^(-4/3).
//
// Rescaling p = rho q with rho = (4/3)^(1/4) gamma^(1/6) turns
// -d^2/dp^2 + W0 + (W2/2)(p-p0)^2 into rho^-2 [-d^2/dq^2 + (q-q0)^2 + gamma sqrt(12)],
// because (3/4) rho^4 gamma^(-2/3) = 1 and rho^2 W0 = gamma sqrt(12). The unit
// oscillator has levels 2n+1, so
//
//   E_n rho^2 = gamma sqrt(12) + (2n+1)
//   E_n       = 3 gamma^(2/3) + (sqrt(3)/2)(2n+1) gamma^(-1/3).
//
// The cubic remainder sets the size of the neglected corrections.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace branchlab {

struct PotentialMinimum {
  double p0;
  double W0;
};

struct TaylorCoefficients {
  double W2;  // W''(p0)
  double W3;  // W'''(p0)
};

struct Rescaling {
  double rho;
  double q0;
  double constant_term;  // gamma sqrt(12), the additive constant after rescaling
};

struct PerturbativePrediction {
  double gamma;
  double p0;
  double W0;
  double W2;
  double W3;
  double rho;
  double q0;
  double constant_term;
  std::vector<double> levels;
};

namespace detail {
inline void require_positive_gamma(double gamma, const char* who) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError(std::string(who) +
                      ": needs gamma > 0 (W has no interior minimum otherwise); got gamma = " +
                      std::to_string(gamma));
  }
}
}  // namespace detail

inline PotentialMinimum minimum_of_W(double gamma) {
  detail::require_positive_gamma(gamma, "minimum_of_W");
  const double p0 = std::cbrt(gamma * gamma);
  return {p0, 3.0 * p0};
}

inline TaylorCoefficients taylor_coefficients(double gamma) {
  detail::require_positive_gamma(gamma, "taylor_coefficients");
  const double p0 = std::cbrt(gamma * gamma);
  return {1.5 / p0, -3.75 / (p0 * p0)};
}

inline Rescaling rescaling(double gamma) {
  detail::require_positive_gamma(gamma, "rescaling");
  const double rho = std::pow(4.0 / 3.0, 0.25) * std::pow(gamma, 1.0 / 6.0);
  const double p0 = std::cbrt(gamma * gamma);
  return {rho, p0 / rho, std::sqrt(12.0) * gamma};
}

/// Harmonic spacing E_{n+1} - E_n = sqrt(3) gamma^(-1/3).
inline double level_spacing(double gamma) {
  detail::require_positive_gamma(gamma, "level_spacing");
  return std::sqrt(3.0) / std::cbrt(gamma);
}

inline std::vector<double> predicted_levels(double gamma, int count) {
  detail::require_positive_gamma(gamma, "predicted_levels");
  if (count < 1) throw DomainError("predicted_levels: count must be >= 1");
  const double W0 = 3.0 * std::cbrt(gamma * gamma);
  const double half_quantum = 0.5 * std::sqrt(3.0) / std::cbrt(gamma);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) out[static_cast<std::size_t>(n)] = W0 + half_quantum * (2 * n + 1);
  return out;
}

/// Scale of the cubic remainder over one oscillator length: |W3|/6 * rho^3.
/// An order-of-magnitude estimate, not a bound.
inline double anharmonic_error_bound(double gamma) {
  detail::require_positive_gamma(gamma, "anharmonic_error_bound");
  const double W3 = taylor_coefficients(gamma).W3;
  const double rho = rescaling(gamma).rho;
  return std::abs(W3) / 6.0 * rho * rho * rho;
}

/// True when the anharmonic estimate stays below 10% of the level spacing.
inline bool perturbation_reliable(double gamma) {
  return anharmonic_error_bound(gamma) <= 0.1 * level_spacing(gamma);
}

/// max(1e-3 * spacing, 10 * anharmonic estimate)
inline double perturbative_tolerance(double gamma) {
  return std::max(1e-3 * level_spacing(gamma), 10.0 * anharmonic_error_bound(gamma));
}

inline PerturbativePrediction predict(double gamma, int count) {
  const auto [p0, W0] = minimum_of_W(gamma);
  const auto [W2, W3] = taylor_coefficients(gamma);
  const auto [rho, q0, c] = rescaling(gamma);
  return {gamma, p0, W0, W2, W3, rho, q0, c, predicted_levels(gamma, count)};
}

}  // namespace branchlab
