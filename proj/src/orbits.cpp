#include "qhcycle/orbits.hpp"

#include <cmath>
#include <cstdio>

namespace qhcycle {

std::vector<std::vector<OrbitRow>> compute_orbits(const RadialSystem& rs,
                                                  const std::vector<double>& r0s,
                                                  std::optional<int> steps_per_turn, double tol) {
  PolarODE ode(rs);
  const double ex = static_cast<double>(rs.p) / (rs.m - rs.n);
  const double ey = static_cast<double>(rs.q) / (rs.m - rs.n);
  std::vector<std::vector<OrbitRow>> blocks;
  for (double r0 : r0s) {
    std::vector<OrbitRow> rows;
    IntegrationOptions opts;
    opts.samples_per_turn = steps_per_turn;
    Trajectory t;
    try {
      t = integrate(ode, r0, tol, opts);
    } catch (const DomainViolationAtStart&) {
      rows.push_back({0.0, r0, std::pow(r0, ex), 0.0, "LeftDomain"});
      blocks.push_back(std::move(rows));
      continue;
    }
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      const Sample& s = t.samples[i];
      OrbitRow row{s.theta, s.r, std::pow(s.r, ex) * std::cos(s.theta),
                   std::pow(s.r, ey) * std::sin(s.theta), "ok"};
      if (i + 1 == t.samples.size() && !t.completed()) row.status = to_string(t.exit.kind);
      rows.push_back(row);
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

std::string orbits_csv(const std::vector<std::vector<OrbitRow>>& blocks) {
  std::string out = "theta,r,x,y,status\n";
  char buf[160];
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0) out += "\n";
    for (const OrbitRow& row : blocks[b]) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,", row.theta, row.r, row.x, row.y);
      out += buf;
      out += row.status;
      out += "\n";
    }
  }
  return out;
}

}  // namespace qhcycle
