#include "qhcycle/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qhcycle {

QuadratureResult certified_quadrature(const std::function<double(double)>& f, double tol,
                                      int max_level) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double eps = std::numeric_limits<double>::epsilon();

  long n = 8;
  double sum = 0.0, abs_sum = 0.0;
  for (long i = 0; i < n; ++i) {
    double v = f(two_pi * static_cast<double>(i) / static_cast<double>(n));
    sum += v;
    abs_sum += std::fabs(v);
  }
  double prev = two_pi * sum / static_cast<double>(n);
  int evaluations = static_cast<int>(n);
  int small_in_a_row = 0;

  for (int level = 1; level <= max_level; ++level) {
    // add the midpoints of the current grid
    double add = 0.0;
    for (long i = 0; i < n; ++i) {
      double v = f(two_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
      add += v;
      abs_sum += std::fabs(v);
    }
    evaluations += static_cast<int>(n);
    sum += add;
    n *= 2;
    double cur = two_pi * sum / static_cast<double>(n);
    double diff = std::fabs(cur - prev);
    double rounding = 8.0 * eps * two_pi * abs_sum / static_cast<double>(n);
    double bound = std::max(diff, rounding);
    small_in_a_row = bound <= tol ? small_in_a_row + 1 : 0;
    prev = cur;
    if (small_in_a_row >= 2) return {cur, bound, evaluations};
    if (!std::isfinite(cur)) break;
  }
  throw ToleranceNotMet("quadrature did not reach tolerance " + std::to_string(tol));
}

}  // namespace qhcycle
