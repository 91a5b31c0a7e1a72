#ifndef QHCYCLE_DYNAMICS_HPP
#define QHCYCLE_DYNAMICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhcycle/errors.hpp"
#include "qhcycle/stability.hpp"
#include "qhcycle/transforms.hpp"

namespace qhcycle {

inline constexpr double kDomainMargin = 1e-9;
inline constexpr double kBlowupRadius = 1e12;
inline constexpr double kDegenerateBand = 1e-6;

enum class ExitKind { Completed, LeftDomain, Blowup };
std::string to_string(ExitKind kind);

struct TrajectoryExit {
  ExitKind kind = ExitKind::Completed;
  double theta = 0.0;  // angle where integration stopped
  std::string reason;
};

struct Sample {
  double theta = 0.0;
  double r = 0.0;
};

struct IntegrationOptions {
  double theta_end = 0.0;  // 0 means one full turn
  /// Record samples only at theta = 2 pi i / K; otherwise every accepted step.
  std::optional<int> samples_per_turn;
  bool record = true;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<double> step_errors;  // local error estimate of each accepted step
  TrajectoryExit exit;
  double log_multiplier = 0.0;  // integral of dR/dr along the solution
  std::size_t accepted = 0, rejected = 0;

  bool completed() const { return exit.kind == ExitKind::Completed; }
  double final_r() const { return samples.empty() ? 0.0 : samples.back().r; }
};

class DomainViolationAtStart : public Error {
 public:
  using Error::Error;
};

class IncompleteTrajectory : public Error {
 public:
  explicit IncompleteTrajectory(TrajectoryExit exit);
  const TrajectoryExit& exit() const { return exit_; }

 private:
  TrajectoryExit exit_;
};

/// Adaptive Dormand-Prince 5(4) integration of dr/dtheta = R from theta = 0,
/// co-integrating ln H' = int dR/dr. Steps whose stages come within the
/// domain margin of the excluded curve are rejected; if the step size
/// collapses the trajectory ends with LeftDomain.
Trajectory integrate(const PolarODE& ode, double r0, double tol,
                     const IntegrationOptions& options = {});

struct ReturnMap {
  TrajectoryExit exit;
  double value = 0.0;       // H(r0)
  double derivative = 0.0;  // H'(r0)
  bool ok() const { return exit.kind == ExitKind::Completed; }
};

ReturnMap return_map(const PolarODE& ode, double r0, double tol);

/// Throws IncompleteTrajectory when the turn is not completed.
double return_map_derivative(const PolarODE& ode, double r0, double tol);

struct Cycle {
  double r0 = 0.0;
  double multiplier = 0.0;
  Stability stability = Stability::NearDegenerate;
  double residual = 0.0;
};

struct CycleReport {
  std::vector<Cycle> cycles;
  double r_min = 0.0, r_max = 0.0;
  int grid_points = 0;
  int skipped = 0;  // grid points whose trajectory did not complete
  double tol = 0.0;
};

struct ScanOptions {
  double r_min = 1e-3;
  double r_max = 1e3;
  int grid_points = 256;
  double tol = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency
};

Stability classify_multiplier(double multiplier);

CycleReport find_cycles(const PolarODE& ode, const ScanOptions& options = {});
CycleReport find_cycles(const PolarODE& ode, double r_min, double r_max, int grid_points,
                        double tol);

class MixedOrientation : public Error {
 public:
  using Error::Error;
};

/// Stability in the plane: same as for the polar equation when the cycle
/// lies where b_n + b_m r > 0, opposite when it lies where it is negative.
Stability plane_stability(const Cycle& cycle, const RadialSystem& rs, double tol = 1e-10);

/// Along polar trajectories from each r0, compares the chain-rule derivative
/// d rho / d tau of rho = b_m r / (b_n + b_m r) with S(tau, rho) of the Abel
/// equation at every accepted step. Relative residual as in the identity
/// checks. Requires b_n and b_m strictly signed.
ResidualReport check_abel_transport(const RadialSystem& rs, std::span<const double> r0s,
                                    double tol = 1e-10);

}  // namespace qhcycle

#endif
