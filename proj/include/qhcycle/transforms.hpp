#ifndef QHCYCLE_TRANSFORMS_HPP
#define QHCYCLE_TRANSFORMS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhcycle/errors.hpp"
#include "qhcycle/trigpoly.hpp"
#include "qhcycle/vectorfield.hpp"

namespace qhcycle {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;  // row-major

struct CoeffValues {
  double a_n = 0, a_m = 0, b_n = 0, b_m = 0;
};

/// dr/dtheta = R(theta, r) = (a_n r + a_m r^2) / (b_n + b_m r), defined for
/// r > 0 off the excluded curve b_n + b_m r = 0.
class PolarODE {
 public:
  explicit PolarODE(RadialSystem rs);

  const RadialSystem& radial() const { return rs_; }
  CoeffValues coefficients(double theta) const;

  double denominator(double theta, double r) const;
  double rate(double theta, double r) const;
  /// Closed-form dR/dr from the quotient rule.
  double rate_dr(double theta, double r) const;

  struct Eval {
    double rate = 0, rate_dr = 0, denominator = 0;
  };
  Eval eval(double theta, double r) const;

 private:
  RadialSystem rs_;
};

PolarODE polar_equation(const RadialSystem& rs);

/// Time-parametrized generalized-polar system:
///   dr/dt     = (a_n + a_m r) r^(1+k) / (p cos^2 + q sin^2)
///   dtheta/dt = (b_n + b_m r) r^k     / (p cos^2 + q sin^2),  k = (n-1)/(m-n)
class PolarFlow {
 public:
  explicit PolarFlow(RadialSystem rs) : rs_(std::move(rs)) {}
  /// Both throw std::domain_error for r <= 0.
  double dr_dt(double theta, double r) const;
  double dtheta_dt(double theta, double r) const;
  Vec2 field(double theta, double r) const { return {dr_dt(theta, r), dtheta_dt(theta, r)}; }
  double prefactor(double theta) const;

 private:
  RadialSystem rs_;
};

PolarFlow polar_system(const RadialSystem& rs);

/// drho/dtau = S = alpha3 rho^3 + alpha2 rho^2 + alpha1 rho, 1-periodic in tau.
struct AbelEquation {
  std::function<double(double)> alpha1, alpha2, alpha3;
  /// Exact numerators over the common denominator b_n b_m when the equation
  /// comes from a radial system: alpha_i(theta) = 2pi num_i / (b_n b_m).
  struct Numerators {
    TrigPoly alpha1, alpha2, alpha3, denominator;
  };
  std::optional<Numerators> numerators;
  std::optional<RadialSystem> source;

  double S(double tau, double rho) const;
  double dS_drho(double tau, double rho) const;
};

/// rho = b_m r / (b_n + b_m r), theta = 2 pi tau. Requires b_n and b_m both
/// strictly signed; otherwise throws CoefficientUndefined.
AbelEquation cherkas(const RadialSystem& rs);

/// Smooth periodic curve x = lambda(t) with its derivative.
struct Curve {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  static Curve constant(double c);
};

/// Auxiliary function with closed-form partials and its domain predicate.
struct AuxFunction {
  std::function<double(double, double)> F, F_t, F_x;
  std::function<bool(double, double)> defined;
  std::string region;
};

class InvalidCurves : public Error {
 public:
  using Error::Error;
};

/// F(t, x) = -ln|f / (l1 l2)| with f = (x - l1)(x - l2) x. Requires
/// l1 > l2, both nonzero and 1-periodic (checked on a sample grid).
AuxFunction abel_aux(const Curve& l1, const Curve& l2);

/// Fixed-seed sampling plan for the residual checkers.
struct Sampling {
  std::size_t count = 200;
  std::uint64_t seed = 20240607;
};

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
  Vec2 worst{0.0, 0.0};
};

/// Samples keep |x|, |x - l_i| and every other excluded denominator above
/// this margin; points inside it are redrawn.
inline constexpr double kSampleMargin = 1e-6;

/// Residual of dS/drho + F_t + F_x S = f I_L / (l1 - l2) where
///   I_L = sum_i (-1)^i (S(t,l_i) - l_i') / (l_i (x - l_i)^2)
///         + W(l1, l2) / (l1 l2 (x - l1)(x - l2)),   W(f,g) = f g' - f' g.
/// Samples t in [0,1), x in [-2, 3]. Relative residual
/// |lhs - rhs| / max(1, |lhs|, |rhs|).
ResidualReport check_identity_12(const AbelEquation& abel, const Curve& l1, const Curve& l2,
                                 const Sampling& sampling = {});

/// I_L itself, for certificate checks.
double abel_I_L(const AbelEquation& abel, const Curve& l1, const Curve& l2, double t, double x);

/// Map with closed-form Jacobian.
struct Diffeomorphism {
  std::function<Vec2(Vec2)> map;
  std::function<Mat2(Vec2)> jacobian;
};

using PlanarField = std::function<Vec2(Vec2)>;

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

/// Divergence-transfer check: with P o T = DT Q and Fbar = ln|det DT| + F o T,
///   (div P + D_P F) o T == div Q + D_Q Fbar.
/// Divergences and D_Q Fbar use central differences with step 1e-5. When P is
/// given explicitly its divergence is differenced in the target coordinates;
/// otherwise it is recovered from x -> DT(x) Q(x) by the chain rule.
ResidualReport divergence_transfer_check(const Diffeomorphism& T, const AuxFunction& F,
                                         const PlanarField& Q, const std::optional<PlanarField>& P,
                                         std::span<const Vec2> points);

/// (theta, r) -> (theta / 2pi, b_m r / (b_n + b_m r)).
Diffeomorphism cherkas_map(const RadialSystem& rs);
PlanarField polar_direction_field(const PolarODE& ode);      // (1, R)
PlanarField abel_direction_field(const AbelEquation& abel);  // (1, S)

/// F(theta, r) = -ln|b_m| + ln|b_n + b_m r| - 2 ln|r| - ln 2pi, defined on
/// r > 0 off the excluded curve; throws CoefficientUndefined if b_m vanishes.
AuxFunction script_F(const RadialSystem& rs);

/// Residual of dR/dr + F_theta + F_r R + b_m Phi / (b_n + b_m r) over samples
/// theta in [0, 2pi), r log-uniform in [1e-2, 1e2] (off the excluded curve).
ResidualReport check_identity_19(const RadialSystem& rs, const Sampling& sampling = {});

/// Residual of div(g Xbar) + Phi / r^2 where
/// g = (p cos^2 + q sin^2) / (b_m r^(2 + (n-1)/(m-n))) and Xbar = (dr/dt,
/// dtheta/dt); divergence by central differences.
ResidualReport check_identity_prop26(const RadialSystem& rs, const Sampling& sampling = {});

/// Polar points (theta, r), r log-uniform in [1e-1, 1e1], whose Cherkas image
/// rho stays at least `gap` away from 0, l1 and l2.
std::vector<Vec2> cherkas_sample_points(const RadialSystem& rs, double l1, double l2,
                                        const Sampling& sampling = {}, double gap = 0.05);

/// Exact sign of S(tau, eps) for the Abel equation of rs with the constant
/// curve lambda_2 = eps: sign(eps) * sign((eps^2 n3 + eps n2 + n1) b_n b_m).
struct EpsilonSignCheck {
  Rational epsilon;
  SignReport report;  // of the TrigPoly (eps^2 n3 + eps n2 + n1) b_n b_m
  bool uniform() const { return report.strict(); }
  int sign_of_S() const;  // +1 / -1 when uniform
};
EpsilonSignCheck epsilon_sign_check(const RadialSystem& rs, const Rational& epsilon);

/// Halves eps from 1/4 down to 2^-max_halvings until S(tau, eps) is strictly
/// signed; returns the first uniform check, or the last one tried.
EpsilonSignCheck find_uniform_epsilon(const RadialSystem& rs, int max_halvings = 40);

/// Sampled hypotheses of the two-curve certificate for Abel equations:
/// l1 > l2, l_i != 0, periodic, S(t,l_i) - l_i' of constant sign and
///   4 l1 l2 (S(t,l1) - l1')(S(t,l2) - l2') + W(l1,l2)^2 <= 0.
struct TwoCurveCertificate {
  bool ordered = false, nonvanishing = false, periodic = false;
  bool first_signed = false, second_signed = false, discriminant_nonpositive = false;
  double max_discriminant = 0.0;
  bool holds() const {
    return ordered && nonvanishing && periodic && first_signed && second_signed &&
           discriminant_nonpositive;
  }
};
TwoCurveCertificate check_two_curve_certificate(const AbelEquation& abel, const Curve& l1,
                                                const Curve& l2, std::size_t grid = 2048);

}  // namespace qhcycle

#endif
