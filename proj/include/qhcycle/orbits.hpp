#ifndef QHCYCLE_ORBITS_HPP
#define QHCYCLE_ORBITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhcycle/dynamics.hpp"

namespace qhcycle {

struct OrbitRow {
  double theta = 0.0, r = 0.0, x = 0.0, y = 0.0;
  std::string status;
};

/// One block per starting radius. Samples lie on theta = 2 pi i / K when
/// steps_per_turn is given, otherwise on the integrator's accepted steps.
/// Rows are "ok" except the last row of a trajectory that left the domain or
/// blew up, which carries the exit kind.
std::vector<std::vector<OrbitRow>> compute_orbits(const RadialSystem& rs,
                                                  const std::vector<double>& r0s,
                                                  std::optional<int> steps_per_turn,
                                                  double tol = 1e-10);

/// Header "theta,r,x,y,status", blocks separated by one blank line.
std::string orbits_csv(const std::vector<std::vector<OrbitRow>>& blocks);

}  // namespace qhcycle

#endif
