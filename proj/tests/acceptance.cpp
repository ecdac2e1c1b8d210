// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <branchlab/branchlab.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace branchlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome reduction() {
  const auto m = ModelParams::from_delta(1, 0.0, 0.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
    for (auto s : {BranchSign::Plus, BranchSign::Minus}) {
      const double expect = p + sign_factor(s) / (2.0 * std::sqrt(p));
      worst = std::max(worst, rel(branch_hamiltonian_k1(p, s, m), expect));
    }
  }
  return {worst <= 1e-12, "max rel err " + fmt("%.2e", worst) + " (<= 1e-12)"};
}

Outcome round_trip() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> log_x(-6.0, 6.0);
  std::uniform_real_distribution<double> lam(0.0, 10.0);
  std::uniform_real_distribution<double> del(-1.0, 0.99 * kBareMu);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto params = ModelParams::from_delta(1, lam(rng), del(rng));
    const double p = std::pow(10.0, log_x(rng)) - params.lambda();
    const auto v = velocity_branches(p, params);
    const double scale = std::max(std::abs(p), params.lambda());
    worst = std::max(worst, std::abs(canonical_momentum_k1(v.plus, params) - p) / scale);
    worst = std::max(worst, std::abs(canonical_momentum_k1(v.minus, params) - p) / scale);
  }
  return {worst <= 1e-10, "10^4 samples, max rel err " + fmt("%.2e", worst) + " (<= 1e-10)"};
}

Outcome closed_forms() {
  double exact = 0.0;
  double oracle_err = 0.0;
  for (double g : {0.25, 1.0, 10.0, 100.0}) {
    const auto [p0, W0] = minimum_of_W(g);
    const auto [W2, W3] = taylor_coefficients(g);
    const auto r = rescaling(g);
    exact = std::max({exact, rel(p0, std::pow(g, 2.0 / 3.0)), rel(W0, 3.0 * std::pow(g, 2.0 / 3.0)),
                      rel(W2, 1.5 * std::pow(g, -2.0 / 3.0)), rel(W3, -3.75 * std::pow(g, -4.0 / 3.0)),
                      rel(r.rho, std::pow(4.0 / 3.0, 0.25) * std::pow(g, 1.0 / 6.0)),
                      rel(r.constant_term / (r.rho * r.rho), W0),
                      rel(0.5 * W2 * std::pow(r.rho, 4), 1.0)});
    const auto [arg, val] = oracle::numeric_minimum(g, 1e-3, 10.0 * p0 + 10.0);
    oracle_err = std::max({oracle_err, rel(arg, p0), rel(val, W0), rel(oracle::fd_second(g, p0, 1e-3 * p0), W2),
                           rel(oracle::fd_third(g, p0, 1e-3 * p0), W3)});
  }
  return {exact <= 1e-13 && oracle_err <= 1e-6,
          "closed forms " + fmt("%.2e", exact) + " (<= 1e-13), oracles " + fmt("%.2e", oracle_err) + " (<= 1e-6)"};
}

Outcome spectral_vs_perturbative() {
  const auto s = solve_spectrum_auto(PseudoPotential(100.0), BoundaryCondition::dirichlet(), 3);
  const auto pred = predicted_levels(100.0, 3);
  double worst = 0.0;
  double resid = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    worst = std::max(worst, std::abs(s.energies[i] - pred[i]));
    resid = std::max(resid, s.residuals[i]);
  }
  return {worst <= 0.01 && resid <= 1e-6,
          "max |E - E_pred| " + fmt("%.2e", worst) + " (<= 0.01), shooting residual " + fmt("%.1e", resid) +
              ", n = " + std::to_string(s.grid.n())};
}

Outcome degeneracy() {
  std::vector<double> gaps;
  for (double g : {1.0, 10.0, 100.0}) {
    const PseudoPotential pot(g);
    const double d = solve_spectrum_auto(pot, BoundaryCondition::dirichlet(), 1).energies[0];
    const double n = solve_spectrum_auto(pot, BoundaryCondition::neumann(), 1).energies[0];
    gaps.push_back(std::abs(d - n));
  }
  const bool decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
  return {decreasing && gaps[2] <= 1e-6, "gaps " + fmt("%.2e", gaps[0]) + ", " + fmt("%.2e", gaps[1]) + ", " +
                                             fmt("%.2e", gaps[2]) + " (strictly decreasing, last <= 1e-6)"};
}

Outcome bessel_selection() {
  bool ok = dirichlet_selection(1.0).vanishing_coefficient == "C2" &&
            dirichlet_selection(-1.0).vanishing_coefficient == "D2";
  double slope_err = 0.0;
  double residual = 0.0;
  for (double g : {1.0, -1.0}) {
    const auto reg = SmallPSolution::regular(g);
    const auto sing = SmallPSolution::singular(g);
    slope_err = std::max({slope_err, std::abs(loglog_slope(reg, 1e-8, 1e-4) - 1.0),
                          std::abs(loglog_slope(sing, 1e-8, 1e-4))});
    for (int i = 0; i <= 400; ++i) {
      const double p = 0.5 * std::pow(10.0, -12.0 * i / 400.0);
      residual = std::max({residual, std::abs(verify_leading_order_ode(p, reg)),
                           std::abs(verify_leading_order_ode(p, sing))});
    }
  }
  ok = ok && slope_err <= 0.01 && residual <= 1e-8;
  return {ok, "C2/D2 selected, slope err " + fmt("%.1e", slope_err) + " (<= 0.01), residual " +
                  fmt("%.1e", residual) + " on [5e-13, 0.5] (<= 1e-8)"};
}

Outcome cross_method() {
  double agree = 0.0;
  double r_lo = INFINITY;
  double r_hi = -INFINITY;
  for (double g : {1.0, 10.0, 100.0}) {
    const PseudoPotential pot(g);
    const auto s = solve_spectrum_auto(pot, BoundaryCondition::dirichlet(), 3);
    for (double r : s.residuals) agree = std::max(agree, r);
    const Grid g0(default_grid(pot).p_max(), 1999);
    const Grid g1 = g0.halved();
    const Grid g2 = g1.halved();
    const auto e0 = eigen_lowest(build_operator(pot, BoundaryCondition::dirichlet(), g0), 3);
    const auto e1 = eigen_lowest(build_operator(pot, BoundaryCondition::dirichlet(), g1), 3);
    const auto e2 = eigen_lowest(build_operator(pot, BoundaryCondition::dirichlet(), g2), 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const double ratio = (e0[i] - e1[i]) / (e1[i] - e2[i]);
      r_lo = std::min(r_lo, ratio);
      r_hi = std::max(r_hi, ratio);
    }
  }
  return {agree <= 1e-6 && r_lo >= 3.5 && r_hi <= 4.5,
          "max |matrix - shooting| " + fmt("%.1e", agree) + " (<= 1e-6), ratios in [" + fmt("%.3f", r_lo) + ", " +
              fmt("%.3f", r_hi) + "] (within [3.5, 4.5])"};
}

Outcome scaling_law() {
  std::vector<double> x, y;
  for (double g : {1e2, 1e3, 1e4}) {
    const double e0 = solve_spectrum_auto(PseudoPotential(g), BoundaryCondition::dirichlet(), 1).energies[0];
    x.push_back(std::log(g));
    y.push_back(std::log(e0 - 3.0 * std::cbrt(g * g)));
  }
  const double slope = fit_slope(x, y);
  return {std::abs(slope + 1.0 / 3.0) <= 0.05, "slope " + fmt("%.4f", slope) + " (-1/3 +- 0.05)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bare-parameter reduction p +- 1/(2 sqrt p)", 1.0, reduction},
      {2, "velocity round trip", 1.0, round_trip},
      {3, "perturbative closed forms and oracles", 1.0, closed_forms},
      {4, "spectrum vs oscillator levels, gamma = 100", 30.0, spectral_vs_perturbative},
      {5, "Dirichlet/Neumann degeneracy", 60.0, degeneracy},
      {6, "Bessel selection, slopes, residuals", 5.0, bessel_selection},
      {7, "matrix vs shooting, Richardson ratio", 60.0, cross_method},
      {8, "ground-state excess scaling", 300.0, scaling_law},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d. %s: %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
