// Ground-state energies under Dirichlet and Neumann conditions at p = 0 for a
// few couplings, next to the oscillator prediction. Shooting levels are shown
// because the matrix route is only first-order accurate under Neumann.

#include <cstdio>

#include <branchlab/spectral_solver.hpp>

int main() {
  using namespace branchlab;
  std::printf("%8s %20s %20s %12s %14s\n", "gamma", "E0 dirichlet", "E0 neumann", "gap", "E0 predicted");
  for (double gamma : {0.25, 1.0, 3.0, 10.0, 30.0, 100.0}) {
    const PseudoPotential pot(gamma);
    const double ed = solve_spectrum_auto(pot, BoundaryCondition::dirichlet(), 1).shooting.at(0);
    const double en = solve_spectrum_auto(pot, BoundaryCondition::neumann(), 1).shooting.at(0);
    std::printf("%8.2f %20.12f %20.12f %12.3e %14.8f\n", gamma, ed, en, ed - en, predicted_levels(gamma, 1)[0]);
  }
}
