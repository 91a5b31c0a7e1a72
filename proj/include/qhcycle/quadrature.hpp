#ifndef QHCYCLE_QUADRATURE_HPP
#define QHCYCLE_QUADRATURE_HPP

#include <functional>

#include "qhcycle/errors.hpp"

namespace qhcycle {

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  int evaluations = 0;
};

class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

/// Integral over [0, 2pi] of a smooth periodic f. Composite trapezoid rule
/// with doubling; the error bound is the difference between the last two
/// nested levels, accepted once two consecutive differences are below tol.
QuadratureResult certified_quadrature(const std::function<double(double)>& f, double tol,
                                      int max_level = 22);

}  // namespace qhcycle

#endif
