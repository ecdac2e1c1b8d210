#pragma once

#include <algorithm>
#include <cmath>

#include "bessel.hpp"
#include "numerov.hpp"

namespace branchlab {

struct ProportionalityCheck {
  double p_lo;
  double p_hi;
  double energy;
  double ratio;          // psi_full / psi_regular at p_lo
  double max_deviation;  // max |ratio(p)/ratio(p_lo) - 1| over the window
};

/// Compares the Dirichlet solution of the full equation
/// -psi'' + (p + 2 gamma/sqrt(p)) psi = E psi, integrated by plain Numerov from
/// psi(0) = 0, with the regular small-p Bessel element on [p_lo, p_hi].
inline ProportionalityCheck full_equation_proportionality(double gamma, double energy = 0.0,
                                                          double p_lo = 1e-3, double p_hi = 1e-2,
                                                          double h = 1e-6) {
  if (!(p_lo > 0.0 && p_lo < p_hi)) throw DomainError("proportionality window must satisfy 0 < p_lo < p_hi");
  const int steps = static_cast<int>(std::ceil(p_hi / h));
  const auto psi = numerov_dirichlet_profile(gamma, energy, h, steps);
  const auto reg = SmallPSolution::regular(gamma);
  const int first = static_cast<int>(std::lround(p_lo / h));
  const double ref = psi[static_cast<std::size_t>(first)] / small_p_solution(first * h, reg);
  double worst = 0.0;
  const int stride = std::max(1, (steps - first) / 200);
  for (int i = first; i <= steps; i += stride) {
    const double r = psi[static_cast<std::size_t>(i)] / small_p_solution(i * h, reg);
    worst = std::max(worst, std::abs(r / ref - 1.0));
  }
  return {p_lo, p_hi, energy, ref, worst};
}

}  // namespace branchlab
