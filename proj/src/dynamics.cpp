#include "qhcycle/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace qhcycle {

ReturnMap return_map(const PolarODE& ode, double r0, double tol) {
  IntegrationOptions opts;
  opts.record = false;
  Trajectory t = integrate(ode, r0, tol, opts);
  ReturnMap out;
  out.exit = t.exit;
  if (t.completed()) {
    out.value = t.final_r();
    out.derivative = std::exp(t.log_multiplier);
  }
  return out;
}

double return_map_derivative(const PolarODE& ode, double r0, double tol) {
  ReturnMap h = return_map(ode, r0, tol);
  if (!h.ok()) throw IncompleteTrajectory(h.exit);
  return h.derivative;
}

Stability classify_multiplier(double multiplier) {
  if (multiplier < 1.0 - kDegenerateBand) return Stability::Stable;
  if (multiplier > 1.0 + kDegenerateBand) return Stability::Unstable;
  return Stability::NearDegenerate;
}

namespace {

struct GridValue {
  double r = 0.0;
  bool ok = false;
  double g = 0.0;  // H(r) - r
};

GridValue displacement(const PolarODE& ode, double r, double tol) {
  GridValue v{r, false, 0.0};
  try {
    ReturnMap h = return_map(ode, r, tol);
    if (h.ok()) {
      v.ok = true;
      v.g = h.value - r;
    }
  } catch (const DomainViolationAtStart&) {
  }
  return v;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

}  // namespace

CycleReport find_cycles(const PolarODE& ode, const ScanOptions& options) {
  if (!(options.r_min > 0.0) || !(options.r_max > options.r_min) || options.grid_points < 2)
    throw std::invalid_argument("scan range must satisfy 0 < r_min < r_max with 2+ points");
  const double tol = options.tol;
  const double int_tol = tol / 100.0;
  const int n = options.grid_points;

  std::vector<GridValue> grid(static_cast<std::size_t>(n));
  const double lmin = std::log(options.r_min), lmax = std::log(options.r_max);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      double r = std::exp(lmin + (lmax - lmin) * i / (n - 1));
      grid[static_cast<std::size_t>(i)] = displacement(ode, r, int_tol);
    }
  };
  unsigned threads = worker_count(options.threads, grid.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  CycleReport report;
  report.r_min = options.r_min;
  report.r_max = options.r_max;
  report.grid_points = n;
  report.tol = tol;
  for (const auto& g : grid) report.skipped += g.ok ? 0 : 1;

  auto accept = [&](double r) {
    ReturnMap h = return_map(ode, r, int_tol);
    Cycle c;
    c.r0 = r;
    c.multiplier = h.derivative;
    c.stability = classify_multiplier(h.derivative);
    c.residual = std::fabs(h.value - r);
    report.cycles.push_back(c);
  };

  for (int i = 0; i < n; ++i) {
    const GridValue& a = grid[static_cast<std::size_t>(i)];
    if (!a.ok) continue;
    if (a.g == 0.0) {
      accept(a.r);
      continue;
    }
    if (i + 1 >= n) break;
    const GridValue& b = grid[static_cast<std::size_t>(i) + 1];
    if (!b.ok || b.g == 0.0 || (a.g > 0) == (b.g > 0)) continue;

    // Illinois variant of regula falsi with a bisection fallback
    double lo = a.r, hi = b.r, glo = a.g, ghi = b.g;
    double root = 0.5 * (lo + hi);
    bool found = false;
    int side = 0;
    for (int it = 0; it < 200; ++it) {
      double x = (lo * ghi - hi * glo) / (ghi - glo);
      if (!(x > lo && x < hi) || it % 8 == 7) x = 0.5 * (lo + hi);
      GridValue gx = displacement(ode, x, int_tol);
      if (!gx.ok) {
        x = 0.5 * (lo + hi);
        gx = displacement(ode, x, int_tol);
        if (!gx.ok) break;
      }
      root = x;
      if (std::fabs(gx.g) < tol * std::max(1.0, x)) {
        found = true;
        break;
      }
      if ((gx.g > 0) == (glo > 0)) {
        lo = x;
        glo = gx.g;
        if (side == -1) ghi *= 0.5;
        side = -1;
      } else {
        hi = x;
        ghi = gx.g;
        if (side == 1) glo *= 0.5;
        side = 1;
      }
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
        found = true;
        break;
      }
    }
    if (found) accept(root);
  }
  std::sort(report.cycles.begin(), report.cycles.end(),
            [](const Cycle& x, const Cycle& y) { return x.r0 < y.r0; });
  return report;
}

CycleReport find_cycles(const PolarODE& ode, double r_min, double r_max, int grid_points,
                        double tol) {
  ScanOptions o;
  o.r_min = r_min;
  o.r_max = r_max;
  o.grid_points = grid_points;
  o.tol = tol;
  return find_cycles(ode, o);
}

Stability plane_stability(const Cycle& cycle, const RadialSystem& rs, double tol) {
  PolarODE ode(rs);
  Trajectory t = integrate(ode, cycle.r0, tol / 100.0);
  if (!t.completed()) throw IncompleteTrajectory(t.exit);
  int orientation = 0;
  for (const Sample& s : t.samples) {
    int sg = ode.denominator(s.theta, s.r) > 0 ? 1 : -1;
    if (orientation == 0) orientation = sg;
    if (sg != orientation)
      throw MixedOrientation("b_n + b_m r changes sign along the cycle");
  }
  if (orientation > 0 || cycle.stability == Stability::NearDegenerate) return cycle.stability;
  return cycle.stability == Stability::Stable ? Stability::Unstable : Stability::Stable;
}

ResidualReport check_abel_transport(const RadialSystem& rs, std::span<const double> r0s,
                                    double tol) {
  AbelEquation abel = cherkas(rs);
  PolarODE ode(rs);
  const TrigPoly dbn = derivative(rs.b_n), dbm = derivative(rs.b_m);
  const double two_pi = 2.0 * std::numbers::pi;
  ResidualReport rep;
  for (double r0 : r0s) {
    Trajectory t = integrate(ode, r0, tol);
    for (const Sample& s : t.samples) {
      double c = std::cos(s.theta), sn = std::sin(s.theta);
      double bn = rs.b_n.at(c, sn), bm = rs.b_m.at(c, sn);
      double d = bn + bm * s.r;
      double rho = bm * s.r / d;
      double drho_dtheta = s.r * (dbm.at(c, sn) * bn - bm * dbn.at(c, sn)) / (d * d);
      double drho_dr = bm * bn / (d * d);
      double lhs = two_pi * (drho_dtheta + drho_dr * ode.rate(s.theta, s.r));
      double rhs = abel.S(s.theta / two_pi, rho);
      double res = std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      ++rep.samples;
      if (rep.samples == 1 || res > rep.max_residual) {
        rep.max_residual = res;
        rep.worst = {s.theta, s.r};
      }
    }
  }
  return rep;
}

}  // namespace qhcycle
