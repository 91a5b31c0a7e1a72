#ifndef QHCYCLE_SELFTEST_HPP
#define QHCYCLE_SELFTEST_HPP

#include <string>
#include <vector>

#include "qhcycle/trigpoly.hpp"

namespace qhcycle {

/// Reference values the battery compares against.
struct Golden {
  TrigPoly example1_a5, example1_a6, example1_b5, example1_b6;
  TrigPoly example2_a1, example2_a3, example2_b1, example2_b3, example2_phi_numerator;
  double example2_I1 = 0.0;
  double example2_I3 = 0.0;
  double example2_cycle = 0.0;
  double example2_cycle_tol = 1e-8;
};

Golden default_golden();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  bool quick = false;  // skip quadrature and cycle scans
  Golden golden = default_golden();
};

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace qhcycle

#endif
