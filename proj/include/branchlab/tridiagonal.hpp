#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace branchlab {

/// Real symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
inline int sturm_count(const SymTridiagonal& t, std::span<const double> off_sq, double x,
                       double pivmin) {
  int count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    q = t.diag[i] - x - off_sq[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

inline int sturm_count(const SymTridiagonal& t, double x) {
  std::vector<double> off_sq(t.off.size());
  std::transform(t.off.begin(), t.off.end(), off_sq.begin(), [](double e) { return e * e; });
  return sturm_count(t, off_sq, x, std::numeric_limits<double>::min());
}

/// The `count` smallest eigenvalues by Sturm bisection, ascending.
///
/// Each eigenvalue is bisected until its bracket cannot shrink further in
/// double precision, which is well inside 1e-10 max(1, |E|).
inline std::vector<double> eigen_lowest(const SymTridiagonal& t, int count) {
  const int n = t.size();
  if (n < 1 || static_cast<int>(t.off.size()) != n - 1) {
    throw DomainError("eigen_lowest: malformed tridiagonal matrix");
  }
  if (count < 1 || count > n) {
    throw DomainError("eigen_lowest: count must lie in [1, n] (count = " + std::to_string(count) +
                      ", n = " + std::to_string(n) + ")");
  }

  // Gershgorin enclosure
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[static_cast<std::size_t>(i - 1)]);
    if (i < n - 1) r += std::abs(t.off[static_cast<std::size_t>(i)]);
    const double d = t.diag[static_cast<std::size_t>(i)];
    lo = std::min(lo, d - r);
    hi = std::max(hi, d + r);
    max_abs = std::max(max_abs, std::abs(d) + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  lo -= 2.0 * eps * max_abs + std::numeric_limits<double>::min();
  hi += 2.0 * eps * max_abs + std::numeric_limits<double>::min();

  std::vector<double> off_sq(t.off.size());
  double max_off_sq = 0.0;
  for (std::size_t i = 0; i < t.off.size(); ++i) {
    off_sq[i] = t.off[i] * t.off[i];
    max_off_sq = std::max(max_off_sq, off_sq[i]);
  }
  const double pivmin = std::max(std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::min() * max_off_sq);

  std::vector<double> out(static_cast<std::size_t>(count));
  double floor = lo;
  for (int k = 0; k < count; ++k) {
    // eigenvalue k is the smallest x with sturm_count(x) > k
    double a = floor;
    double b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= 2.0 * eps * std::max(std::abs(a), std::abs(b))) break;
      if (sturm_count(t, off_sq, mid, pivmin) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    floor = a;
  }
  return out;
}

}  // namespace branchlab
