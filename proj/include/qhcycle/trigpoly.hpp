#ifndef QHCYCLE_TRIGPOLY_HPP
#define QHCYCLE_TRIGPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhcycle/rational.hpp"

namespace qhcycle {

class PolyXY;

/// Finite Fourier series c0 + sum_k (a_k cos k.theta + b_k sin k.theta) with
/// exact rational coefficients, kept in canonical form (no trailing zero
/// harmonics), so equal functions compare equal.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(Rational constant);  // NOLINT(google-explicit-constructor)
  TrigPoly(Rational constant, std::vector<Rational> cos_coeffs, std::vector<Rational> sin_coeffs);

  static TrigPoly cos_k(int k, const Rational& c = 1);
  static TrigPoly sin_k(int k, const Rational& c = 1);

  const Rational& constant() const { return constant_; }
  /// Coefficient of cos(k.theta) / sin(k.theta); zero beyond the degree.
  Rational cos_coeff(int k) const;
  Rational sin_coeff(int k) const;
  int degree() const { return static_cast<int>(cos_.size()); }
  bool is_zero() const { return degree() == 0 && constant_ == 0; }
  bool is_constant() const { return degree() == 0; }

  double operator()(double theta) const;
  /// Value from precomputed cos(theta), sin(theta).
  double at(double cos_theta, double sin_theta) const;
  /// Value and first derivative at theta in one pass.
  void eval(double theta, double& value, double& derivative) const;
  /// Exact value at theta = pi.
  Rational at_pi() const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(const Rational& c);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= Rational(-1); }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(TrigPoly a, const Rational& c) { return a *= c; }
  friend TrigPoly operator*(const Rational& c, TrigPoly a) { return a *= c; }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.constant_ == b.constant_ && a.cos_ == b.cos_ && a.sin_ == b.sin_;
  }

  /// e.g. "11/8 + 1/2*cos(2t) + 1/8*cos(4t)".
  std::string to_string() const;

 private:
  void canonicalize();

  Rational constant_ = 0;
  std::vector<Rational> cos_;
  std::vector<Rational> sin_;
  // double mirror of the coefficients for fast evaluation
  double constant_d_ = 0.0;
  std::vector<double> cos_d_;
  std::vector<double> sin_d_;
};

TrigPoly derivative(const TrigPoly& f);

/// W(f, g) = f g' - f' g.
TrigPoly wronskian(const TrigPoly& f, const TrigPoly& g);

/// Exact Fourier form of p(cos.theta, sin.theta).
TrigPoly from_poly_on_circle(const PolyXY& p);

enum class SignVerdict {
  IdenticallyZero,
  Positive,
  Negative,
  NonNegativeWithZeros,
  NonPositiveWithZeros,
  ChangesSign,
};

std::string to_string(SignVerdict v);

/// A zero of f on the circle. Roots are isolated in t = tan(theta/2); the
/// angle theta = pi (t infinite) is reported separately with at_pi set.
struct ZeroPoint {
  bool at_pi = false;
  Rational t_lo, t_hi;  // isolating interval in t, width below 2^-20
  double theta_lo = 0.0, theta_hi = 0.0;  // image in [0, 2pi)
  double theta() const;
};

/// An angle where f is strictly positive (sign = +1) or negative (-1).
struct SignWitness {
  double theta = 0.0;
  std::optional<Rational> t;  // exact half-angle tangent; empty at theta = pi
  int sign = 0;
};

struct SignReport {
  SignVerdict verdict = SignVerdict::IdenticallyZero;
  std::vector<ZeroPoint> zero_points;
  std::vector<SignWitness> witnesses;

  bool strict() const {
    return verdict == SignVerdict::Positive || verdict == SignVerdict::Negative;
  }
  /// Not identically zero and never takes both signs.
  bool no_sign_change() const {
    return verdict != SignVerdict::IdenticallyZero && verdict != SignVerdict::ChangesSign;
  }
  /// +1 / -1 for signed verdicts (with or without zeros), 0 otherwise.
  int sign() const;
};

/// Exact sign certification over [0, 2pi] via t = tan(theta/2) and Sturm
/// sequences on the numerator of f(theta) (1 + t^2)^d.
SignReport sign_analysis(const TrigPoly& f);

/// Numerator N(t) with f(theta) = N(t) / (1 + t^2)^degree.
class UPoly;
UPoly half_angle_numerator(const TrigPoly& f);

}  // namespace qhcycle

#endif
