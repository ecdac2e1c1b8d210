#include <branchlab/perturbation.hpp>
#include <branchlab/spectral_solver.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace branchlab;

namespace {

const auto kD = BoundaryCondition::dirichlet();
const auto kN = BoundaryCondition::neumann();

}  // namespace

TEST(PseudoPotential, Values) {
  EXPECT_DOUBLE_EQ(eval_W(1.0, PseudoPotential(1.0)), 3.0);
  EXPECT_DOUBLE_EQ(eval_W(1.0, PseudoPotential(0.25)), 1.5);
  EXPECT_DOUBLE_EQ(eval_W(1.0, PseudoPotential(-0.25)), 0.5);
  EXPECT_THROW(eval_W(0.0, PseudoPotential(1.0)), DomainError);
  EXPECT_THROW(PseudoPotential(0.0), DomainError);
  EXPECT_THROW(PseudoPotential(1.0, -1.0), DomainError);
  // shifted form (p + lambda) + 2 gamma / sqrt(p + lambda) - lambda
  EXPECT_DOUBLE_EQ(PseudoPotential(0.5, 1.0)(1.0), 1.0 + 1.0 / std::sqrt(2.0));
}

TEST(Grid, Layout) {
  const Grid g(4.0, 16);
  EXPECT_DOUBLE_EQ(g.h() * (g.n() + 1), 4.0);
  EXPECT_GT(g.node(1), 0.0);
  EXPECT_DOUBLE_EQ(g.halved().h(), g.h() / 2);
  EXPECT_DOUBLE_EQ(g.doubled_wall().h(), g.h());
  EXPECT_DOUBLE_EQ(g.doubled_wall().p_max(), 8.0);
  EXPECT_THROW(Grid(4.0, 15), DomainError);
  EXPECT_THROW(Grid(0.0, 100), DomainError);
}

TEST(Grid, DefaultResolvesOscillatorLength) {
  for (double g : {0.25, 1.0, 100.0, 1e4}) {
    const PseudoPotential pot(g);
    const Grid grid = default_grid(pot);
    const double rho = rescaling(g).rho;
    EXPECT_GE(grid.p_max(), 30.0);
    EXPECT_GE(grid.p_max(), minimum_of_W(g).p0 + 25 * rho - 1e-9);
    EXPECT_LE(grid.h(), rho / 40);
    EXPECT_GE(grid.n(), 20000);
  }
}

TEST(BuildOperator, DiscreteLaplacianAndNeumannOrdering) {
  // W contributes p + 2 gamma/sqrt(p); compare against the bare Laplacian by subtraction
  const PseudoPotential pot(1.0);
  const Grid g(4.0, 16);
  const auto d = build_operator(pot, kD, g);
  const auto n = build_operator(pot, kN, g);
  const double inv_h2 = 1.0 / (g.h() * g.h());
  for (int i = 1; i <= g.n(); ++i) {
    EXPECT_DOUBLE_EQ(d.diag[static_cast<std::size_t>(i - 1)], 2 * inv_h2 + pot(g.node(i)));
  }
  for (double e : d.off) EXPECT_DOUBLE_EQ(e, -inv_h2);
  EXPECT_DOUBLE_EQ(n.diag[0], inv_h2 + pot(g.node(1)));
  EXPECT_LT(eigen_lowest(n, 1)[0], eigen_lowest(d, 1)[0]);
}

TEST(BuildOperator, RobinGhost) {
  const PseudoPotential pot(1.0);
  const Grid g(4.0, 16);
  const double h = g.h();
  const double alpha = 0.7;
  const auto r = build_operator(pot, BoundaryCondition::robin(alpha), g);
  const double ghost = (1 - alpha * h / 2) / (1 + alpha * h / 2);
  EXPECT_NEAR(r.diag[0], (2 - ghost) / (h * h) + pot(h), 1e-12);
  // alpha = 0 is Neumann
  EXPECT_EQ(build_operator(pot, BoundaryCondition::robin(0.0), g).diag, build_operator(pot, kN, g).diag);
  EXPECT_THROW(build_operator(pot, BoundaryCondition::robin(-3.0 / h), g), DomainError);
}

TEST(BuildOperator, DiagonalFloorNearMinimum) {
  const PseudoPotential pot(100.0);
  const Grid g = default_grid(pot);
  const auto t = build_operator(pot, kD, g);
  const double base = 2.0 / (g.h() * g.h());
  const double floor = *std::min_element(t.diag.begin(), t.diag.end()) - base;
  EXPECT_GE(floor, minimum_of_W(100.0).W0 - 1e-12);
  EXPECT_LE(floor - minimum_of_W(100.0).W0, taylor_coefficients(100.0).W2 * g.h() * g.h());
}

class MethodAgreement : public ::testing::TestWithParam<double> {};

TEST_P(MethodAgreement, MatrixAndShootingAgree) {
  const PseudoPotential pot(GetParam());
  const auto s = solve_spectrum_auto(pot, kD, 3);
  ASSERT_EQ(s.shooting.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(std::abs(s.energies[i] - s.shooting[i]), 1e-6) << "level " << i;
    EXPECT_EQ(s.residuals[i], std::abs(s.energies[i] - s.shooting[i]));
    if (i) {
      EXPECT_GT(s.energies[i], s.energies[i - 1]);
    }
    EXPECT_GT(s.energies[i], minimum_of_W(GetParam()).W0);
  }
}

TEST_P(MethodAgreement, SecondOrderConvergence) {
  const PseudoPotential pot(GetParam());
  const Grid g0(default_grid(pot).p_max(), 1999);
  const Grid g1 = g0.halved();
  const Grid g2 = g1.halved();
  const auto e0 = eigen_lowest(build_operator(pot, kD, g0), 3);
  const auto e1 = eigen_lowest(build_operator(pot, kD, g1), 3);
  const auto e2 = eigen_lowest(build_operator(pot, kD, g2), 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double ratio = (e0[i] - e1[i]) / (e1[i] - e2[i]);
    EXPECT_GE(ratio, 3.5) << "level " << i;
    EXPECT_LE(ratio, 4.5) << "level " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Gammas, MethodAgreement, ::testing::Values(1.0, 10.0, 100.0));

TEST(SolveSpectrum, FrozenAnchorQuarterGamma) {
  // lambda = 0, delta = 0 model; frozen after matrix and shooting agreed to 5e-10
  const auto s = solve_spectrum_auto(PseudoPotential(0.25), kD, 3);
  EXPECT_NEAR(s.energies[0], 2.770959115, 2e-9);
  EXPECT_NEAR(s.energies[1], 4.436734696, 2e-9);
  EXPECT_NEAR(s.energies[2], 5.827843267, 2e-9);
  for (double r : s.residuals) EXPECT_LT(r, 1e-8);
}

TEST(SolveSpectrum, LargeGammaMatchesOscillator) {
  const auto s = solve_spectrum_auto(PseudoPotential(100.0), kD, 3);
  const auto pred = predicted_levels(100.0, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(std::abs(s.energies[i] - pred[i]), 0.01);
}

TEST(SolveSpectrum, VariationalOrdering) {
  for (double g : {0.25, 1.0, 10.0}) {
    const PseudoPotential pot(g);
    const Grid grid = default_grid(pot);
    SolveOptions o;
    o.confirm_with_shooting = false;
    const double en = solve_spectrum(pot, kN, grid, 1, o).energies[0];
    const double er = solve_spectrum(pot, BoundaryCondition::robin(1.0), grid, 1, o).energies[0];
    const double ed = solve_spectrum(pot, kD, grid, 1, o).energies[0];
    EXPECT_LE(en, er) << g;
    EXPECT_LE(er, ed) << g;
  }
}

TEST(SolveSpectrum, ShootingOrderingForOtherConditions) {
  const PseudoPotential pot(1.0);
  const auto n = solve_spectrum_auto(pot, kN, 1).shooting[0];
  const auto r = solve_spectrum_auto(pot, BoundaryCondition::robin(1.0), 1).shooting[0];
  const auto d = solve_spectrum_auto(pot, kD, 1).shooting[0];
  EXPECT_LT(n, r);
  EXPECT_LT(r, d);
}

TEST(SolveSpectrum, WallIndependence) {
  for (double g : {1.0, 100.0}) {
    const PseudoPotential pot(g);
    const Grid grid = default_grid(pot);
    SolveOptions o;
    o.confirm_with_shooting = false;
    const auto a = solve_spectrum(pot, kD, grid, 3, o);
    const auto b = solve_spectrum(pot, kD, grid.doubled_wall(), 3, o);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(a.energies[i] - b.energies[i]), 1e-8);
  }
}

TEST(SolveSpectrum, DegeneracyAtLargeGamma) {
  const PseudoPotential pot(100.0);
  const double d = solve_spectrum_auto(pot, kD, 1).energies[0];
  const double n = solve_spectrum_auto(pot, kN, 1).energies[0];
  EXPECT_LT(std::abs(d - n), 1e-6);
}

TEST(SolveSpectrum, WallTooClose) {
  const PseudoPotential pot(1.0);
  try {
    solve_spectrum(pot, kD, Grid(8.0, 4000), 3);
    FAIL() << "expected WallTooCloseError";
  } catch (const WallTooCloseError& e) {
    EXPECT_NE(std::string(e.what()).find("--p-max"), std::string::npos);
  }
  // the auto variant moves the wall instead
  const auto s = solve_spectrum_auto(pot, kD, 8);
  EXPECT_GT(pot(s.grid.p_max()), s.energies.back() + 10);
}

TEST(SolveSpectrum, NegativeGammaRuns) {
  const auto s = solve_spectrum_auto(PseudoPotential(-1.0), kD, 2);
  EXPECT_LT(s.energies[0], s.energies[1]);
  EXPECT_LT(s.residuals[0], 1e-6);
}

TEST(SolveSpectrum, Rejections) {
  const PseudoPotential pot(1.0);
  EXPECT_THROW(solve_spectrum(pot, kD, Grid(30.0, 100), 0), DomainError);
  EXPECT_THROW(solve_spectrum(pot, kD, Grid(30.0, 16), 17), DomainError);
}

TEST(Shooting, BracketWithoutLevelIsRejected) {
  const PseudoPotential pot(1.0);
  const Grid g = default_grid(pot);
  EXPECT_THROW(shooting_eigenvalue(pot, kD, g, {4.2, 4.5}), BracketError);
  EXPECT_THROW(shooting_eigenvalue(pot, kD, g, {5.0, 4.0}), BracketError);
  EXPECT_NEAR(shooting_eigenvalue(pot, kD, g, {3.5, 4.5}), 4.0029586, 1e-6);
}

TEST(Shooting, ShiftedPotentialUsesRegularStart) {
  const PseudoPotential pot(1.0, 0.5);
  const auto s = solve_spectrum_auto(pot, kD, 2);
  for (double r : s.residuals) EXPECT_LT(r, 1e-6);
}

TEST(OriginSeries, SatisfiesTheEquation) {
  // psi'' = (2 gamma / sqrt(p) + p - E) psi, checked by central differences
  for (auto [a0, a2] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.0}, std::pair{1.0, -0.4}}) {
    const OriginSeries s(3.0, 5.0, a0, a2);
    for (double p : {0.01, 0.05, 0.2}) {
      const double h = 1e-4 * p;
      const double d2 = (s(p + h) - 2 * s(p) + s(p - h)) / (h * h);
      const double rhs = (6.0 / std::sqrt(p) + p - 5.0) * s(p);
      EXPECT_NEAR(d2, rhs, 1e-5 * (std::abs(rhs) + 1)) << p;
    }
  }
}

TEST(NumerovProfile, DirichletStart) {
  const auto psi = numerov_dirichlet_profile(1.0, 4.0029586066, 1e-3, 100);
  ASSERT_EQ(psi.size(), 101u);
  EXPECT_EQ(psi[0], 0.0);
  EXPECT_EQ(psi[1], 1e-3);
  EXPECT_THROW(numerov_dirichlet_profile(1.0, 1.0, 0.0, 10), DomainError);
}

TEST(HalfLineGuard, Messages) {
  EXPECT_EQ(left_halfline_guard(1.0).summary, "half-line (0,inf); singularity repulsive");
  EXPECT_EQ(left_halfline_guard(-1.0).summary, "half-line (0,inf); singularity attractive, weak");
  EXPECT_NE(left_halfline_guard(0.0).summary.find("Airy"), std::string::npos);
  EXPECT_GE(left_halfline_guard(-1.0).warnings.size(), 2u);
  EXPECT_NE(left_halfline_guard(-1.0).warnings[0].find("weak"), std::string::npos);
}
