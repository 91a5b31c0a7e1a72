#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qhcycle/dynamics.hpp"

namespace qhcycle {

std::string to_string(ExitKind kind) {
  switch (kind) {
    case ExitKind::Completed: return "Completed";
    case ExitKind::LeftDomain: return "LeftDomain";
    case ExitKind::Blowup: return "Blowup";
  }
  return "?";
}

IncompleteTrajectory::IncompleteTrajectory(TrajectoryExit exit)
    : Error("trajectory ended with " + to_string(exit.kind) + " at theta = " +
            std::to_string(exit.theta) + (exit.reason.empty() ? "" : ": " + exit.reason)),
      exit_(std::move(exit)) {}

namespace {

// Dormand-Prince 5(4)
constexpr std::array<double, 7> C = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> E = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                                     -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

struct Deriv {
  double dr = 0, dl = 0;
  double den = 0;
  bool ok = false;
};

struct Rhs {
  const PolarODE& ode;
  int orientation;  // sign of b_n + b_m r at the start

  Deriv operator()(double theta, double r) const {
    Deriv d;
    if (!(r > 0.0) || !std::isfinite(r)) return d;
    const CoeffValues c = ode.coefficients(theta);
    double den = c.b_n + c.b_m * r;
    double scale = std::max(1.0, std::fabs(c.b_n) + std::fabs(c.b_m) * r);
    d.den = den;
    if (std::fabs(den) <= kDomainMargin * scale) return d;
    if ((den > 0 ? 1 : -1) != orientation) return d;
    double num = c.a_n * r + c.a_m * r * r;
    d.dr = num / den;
    d.dl = ((c.a_n + 2.0 * c.a_m * r) * den - num * c.b_m) / (den * den);
    d.ok = true;
    return d;
  }
};

}  // namespace

Trajectory integrate(const PolarODE& ode, double r0, double tol, const IntegrationOptions& options) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double theta_end = options.theta_end > 0.0 ? options.theta_end : two_pi;
  if (!(r0 > 0.0)) throw DomainViolationAtStart("initial radius must be positive");
  {
    const CoeffValues c = ode.coefficients(0.0);
    double den = c.b_n + c.b_m * r0;
    double scale = std::max(1.0, std::fabs(c.b_n) + std::fabs(c.b_m) * r0);
    if (std::fabs(den) <= kDomainMargin * scale)
      throw DomainViolationAtStart("b_n + b_m r vanishes at the starting point");
  }
  const CoeffValues c0 = ode.coefficients(0.0);
  Rhs rhs{ode, c0.b_n + c0.b_m * r0 > 0 ? 1 : -1};

  Trajectory traj;
  const double out_step =
      options.samples_per_turn ? two_pi / static_cast<double>(*options.samples_per_turn) : 0.0;
  int next_out = 1;
  auto record = [&](double theta, double r) {
    if (options.record) traj.samples.push_back({theta, r});
  };
  traj.samples.push_back({0.0, r0});

  double theta = 0.0, r = r0, l = 0.0;
  Deriv k[7];
  k[0] = rhs(theta, r);
  double h = std::min(0.05, theta_end);
  const double h_min = 1e-13;

  auto stop = [&](ExitKind kind, std::string reason) {
    traj.exit = {kind, theta, std::move(reason)};
    traj.log_multiplier = l;
    if (traj.samples.back().theta != theta) traj.samples.push_back({theta, r});
    return traj;
  };

  while (theta < theta_end) {
    double target = theta_end;
    if (out_step > 0.0) target = std::min(target, out_step * next_out);
    bool clamped = false;
    const double proposed = h;
    if (theta + h >= target) {
      h = target - theta;
      clamped = true;
    }

    bool stages_ok = true;
    double rs[7];
    for (int s = 1; s < 7 && stages_ok; ++s) {
      double ys = r;
      for (int j = 0; j < s; ++j) ys += h * A[s][j] * k[j].dr;
      rs[s] = ys;
      k[s] = rhs(theta + C[s] * h, ys);
      stages_ok = k[s].ok;
    }

    if (!stages_ok) {
      ++traj.rejected;
      h *= 0.25;
      if (h < h_min) return stop(ExitKind::LeftDomain, "approached the curve b_n + b_m r = 0");
      continue;
    }

    double r_new = rs[6];
    double l_new = l;
    for (int j = 0; j < 6; ++j) l_new += h * A[6][j] * k[j].dl;
    double err_r = 0.0, err_l = 0.0;
    for (int j = 0; j < 7; ++j) {
      err_r += h * E[j] * k[j].dr;
      err_l += h * E[j] * k[j].dl;
    }
    double sc_r = tol * (1.0 + std::max(std::fabs(r), std::fabs(r_new)));
    double sc_l = tol * (1.0 + std::max(std::fabs(l), std::fabs(l_new)));
    double err = std::max(std::fabs(err_r) / sc_r, std::fabs(err_l) / sc_l);
    if (!std::isfinite(err)) err = 1e10;

    double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err > 1.0) {
      ++traj.rejected;
      h *= std::min(factor, 0.9);
      if (h < h_min) return stop(ExitKind::LeftDomain, "step size underflow");
      continue;
    }

    ++traj.accepted;
    theta = clamped ? target : theta + h;
    r = r_new;
    l = l_new;
    k[0] = k[6];
    traj.step_errors.push_back(std::fabs(err_r));
    if (out_step > 0.0) {
      if (clamped && target < theta_end) {
        record(theta, r);
        ++next_out;
      }
    } else if (theta < theta_end) {
      record(theta, r);
    }
    if (r > kBlowupRadius) return stop(ExitKind::Blowup, "radius exceeded 1e12");
    h = clamped ? std::max(h * factor, proposed) : h * factor;
  }
  traj.exit = {ExitKind::Completed, theta_end, {}};
  traj.log_multiplier = l;
  traj.samples.push_back({theta_end, r});
  return traj;
}

}  // namespace qhcycle
