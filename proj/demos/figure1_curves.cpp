// Prints the two k = 1 branches H_pm - V at lambda = 1, gamma = 1/2 together
// with the f = 0 pair they reduce to at lambda = 0, gamma = 1/4.

#include <cstdio>

#include <branchlab/branch_model.hpp>

int main() {
  using namespace branchlab;
  const auto params = ModelParams::from_gamma(1, 1.0, 0.5);
  const auto upper = sample_branch_curve(-0.9, 5.0, 60, BranchSign::Plus, params);
  const auto lower = sample_branch_curve(-0.9, 5.0, 60, BranchSign::Minus, params);
  std::printf("%10s %14s %14s\n", "p", "H_plus", "H_minus");
  for (std::size_t i = 0; i < upper.points.size(); ++i) {
    std::printf("%10.4f %14.8f %14.8f\n", upper.points[i].p, upper.points[i].value, lower.points[i].value);
  }

  const auto cz = ModelParams::from_delta(1, 0.0, 0.0);  // gamma = 1/4
  std::printf("\nlambda = 0, delta = 0 (gamma = %.6f):\n", cz.gamma());
  for (double p : {0.25, 1.0, 4.0}) {
    std::printf("  p = %5.2f  H_plus = %.12f  p + 1/(2 sqrt p) = %.12f\n", p,
                branch_hamiltonian_k1(p, BranchSign::Plus, cz),
                general_branch_hamiltonian(p, 1, BranchSign::Plus));
  }
}
