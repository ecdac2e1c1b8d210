#pragma once

// Low-lying spectrum of H = -d2/dp2 + W(p) on (0, p_max] with a chosen
// condition at p = 0 and a Dirichlet wall at p_max.
//
// Route 1: 3-point finite differences, Sturm bisection on grids h and h/2,
//          Richardson-combined to cancel the O(h^2) error.
// Route 2: Numerov shooting (numerov.hpp), bracketed by route 1.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numerov.hpp"
#include "pseudo_potential.hpp"
#include "tridiagonal.hpp"

namespace branchlab {

/// Finite-difference operator on the grid nodes.
///
/// Off-diagonal -1/h^2, diagonal 2/h^2 + W(p_i). The first row absorbs the
/// ghost value psi_0 at p = 0:
///   Dirichlet  psi_0 = 0
///   Neumann    psi_0 = psi_1                                   (d_1 = 1/h^2 + W)
///   Robin      psi_0 = psi_1 (1 - alpha h/2) / (1 + alpha h/2)
/// The Robin ghost imposes (psi_1 - psi_0)/h = alpha (psi_0 + psi_1)/2 at p = h/2.
inline SymTridiagonal build_operator(const PseudoPotential& pot, const BoundaryCondition& bc,
                                     const Grid& grid) {
  const int n = grid.n();
  const double h = grid.h();
  const double inv_h2 = 1.0 / (h * h);
  SymTridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.assign(static_cast<std::size_t>(n - 1), -inv_h2);
  for (int i = 1; i <= n; ++i) t.diag[static_cast<std::size_t>(i - 1)] = 2.0 * inv_h2 + pot(grid.node(i));

  switch (bc.kind) {
    case BcKind::Dirichlet:
      break;
    case BcKind::Neumann:
      t.diag[0] -= inv_h2;
      break;
    case BcKind::Robin: {
      const double den = 1.0 + 0.5 * bc.alpha * h;
      if (!(den > 0.0)) {
        throw DomainError("Robin alpha = " + std::to_string(bc.alpha) +
                          " is below -2/h for this grid; refine the grid or raise alpha");
      }
      t.diag[0] -= inv_h2 * (1.0 - 0.5 * bc.alpha * h) / den;
      break;
    }
  }
  return t;
}

enum class SpectralMethod { Matrix, Shooting };

struct Spectrum {
  std::vector<double> energies;   // Richardson-combined finite-difference levels
  std::vector<double> coarse;     // levels on h
  std::vector<double> fine;       // levels on h/2
  std::vector<double> shooting;   // Numerov levels, empty if not run
  std::vector<double> residuals;  // |energies - shooting| per level
  BoundaryCondition bc;
  Grid grid;
  SpectralMethod method = SpectralMethod::Matrix;
};

struct SolveOptions {
  bool confirm_with_shooting = true;
  /// Extra halvings of h for the Numerov grid, on top of h/2.
  int shooting_refinements = 0;
  /// Required W(p_max) - E_top.
  double wall_margin = 10.0;
};

inline double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

inline Spectrum solve_spectrum(const PseudoPotential& pot, const BoundaryCondition& bc,
                               const Grid& grid, int count, const SolveOptions& opts = {}) {
  if (count < 1) throw DomainError("solve_spectrum: count must be >= 1");
  if (count + 1 > grid.n()) throw DomainError("solve_spectrum: count exceeds grid size");

  const Grid half = grid.halved();
  // one extra level bounds the shooting bracket of the top requested level
  const std::vector<double> ec = eigen_lowest(build_operator(pot, bc, grid), count + 1);
  const std::vector<double> ef = eigen_lowest(build_operator(pot, bc, half), count + 1);

  Spectrum s{{}, {}, {}, {}, {}, bc, grid, SpectralMethod::Matrix};
  std::vector<double> extrap(static_cast<std::size_t>(count + 1));
  for (std::size_t i = 0; i < extrap.size(); ++i) extrap[i] = richardson(ec[i], ef[i]);

  s.coarse.assign(ec.begin(), ec.begin() + count);
  s.fine.assign(ef.begin(), ef.begin() + count);
  s.energies.assign(extrap.begin(), extrap.begin() + count);

  for (int i = 1; i < count; ++i) {
    if (!(s.energies[static_cast<std::size_t>(i)] > s.energies[static_cast<std::size_t>(i - 1)])) {
      throw NumericalError("solve_spectrum: levels " + std::to_string(i - 1) + " and " +
                           std::to_string(i) + " are not strictly ordered");
    }
  }

  const double top = s.energies.back();
  const double w_wall = pot(grid.p_max());
  if (!(w_wall > top + opts.wall_margin)) {
    throw WallTooCloseError("wall too close: W(p_max) = " + std::to_string(w_wall) +
                            " but E_top + " + std::to_string(opts.wall_margin) + " = " +
                            std::to_string(top + opts.wall_margin) +
                            "; re-solve with a larger p_max (e.g. --p-max " +
                            std::to_string(1.5 * grid.p_max()) + ")");
  }

  if (opts.confirm_with_shooting) {
    Grid sg = half;
    for (int r = 0; r < opts.shooting_refinements; ++r) sg = sg.halved();
    for (int i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double below = i == 0 ? extrap[0] - 0.5 * (extrap[1] - extrap[0])
                                  : 0.5 * (extrap[k - 1] + extrap[k]);
      const double above = 0.5 * (extrap[k] + extrap[k + 1]);
      const double e = shooting_eigenvalue(pot, bc, sg, {below, above});
      s.shooting.push_back(e);
      s.residuals.push_back(std::abs(e - s.energies[k]));
    }
  }
  return s;
}

/// solve_spectrum on default_grid, pushing the wall out while it is too close.
inline Spectrum solve_spectrum_auto(const PseudoPotential& pot, const BoundaryCondition& bc,
                                    int count, const SolveOptions& opts = {},
                                    int min_interior = 20000) {
  Grid g = default_grid(pot, min_interior);
  for (int attempt = 0;; ++attempt) {
    try {
      return solve_spectrum(pot, bc, g, count, opts);
    } catch (const WallTooCloseError&) {
      if (attempt >= 8) throw;
      // keep h, move the wall
      const int n = static_cast<int>(std::ceil(1.5 * (g.n() + 1))) - 1;
      g = Grid(g.h() * (n + 1), n);
    }
  }
}

}  // namespace branchlab
