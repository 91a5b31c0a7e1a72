#ifndef QHCYCLE_VECTORFIELD_HPP
#define QHCYCLE_VECTORFIELD_HPP

#include <vector>

#include "qhcycle/errors.hpp"
#include "qhcycle/polyxy.hpp"
#include "qhcycle/trigpoly.hpp"

namespace qhcycle {

/// Quasi-homogeneous weight (p, q), both >= 1.
struct Weight {
  int p = 1;
  int q = 1;

  Weight() = default;
  Weight(int p_, int q_);
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// One quasi-homogeneous field (P, Q) of degree s:
/// P(l^p x, l^q y) = l^(p+s-1) P and Q(l^p x, l^q y) = l^(q+s-1) Q.
struct QHComponent {
  PolyXY P;
  PolyXY Q;
  int degree = 0;
  friend bool operator==(const QHComponent&, const QHComponent&) = default;
};

/// A monomial that breaks the weighted-degree rule of its field.
struct OffendingMonomial {
  char field = 'P';  // 'P' or 'Q'
  Monomial monomial;
  int weighted_degree = 0;  // p*dx + q*dy
  int expected = 0;         // p + s - 1 (P) or q + s - 1 (Q)
};

struct ComponentCheck {
  bool valid = true;
  std::vector<OffendingMonomial> offending;
};

ComponentCheck validate_component(const PolyXY& P, const PolyXY& Q, const Weight& w, int s);

/// Raised by decompose when a monomial would need a negative degree s.
class InvalidWeightedDegree : public Error {
 public:
  explicit InvalidWeightedDegree(std::vector<OffendingMonomial> monomials);
  const std::vector<OffendingMonomial>& monomials() const { return monomials_; }

 private:
  std::vector<OffendingMonomial> monomials_;
};

/// Groups the monomials of (P, Q) by the degree s their weighted degree
/// implies; components are returned by ascending s and sum back to (P, Q).
std::vector<QHComponent> decompose(const PolyXY& P, const PolyXY& Q, const Weight& w);

/// X_n + X_m with n < m, both quasi-homogeneous for the shared weight.
class QHSystem {
 public:
  /// Throws std::invalid_argument if a component fails validation or the
  /// degrees are not distinct.
  QHSystem(Weight w, QHComponent a, QHComponent b);

  const Weight& weight() const { return weight_; }
  const QHComponent& low() const { return low_; }
  const QHComponent& high() const { return high_; }
  int n() const { return low_.degree; }
  int m() const { return high_.degree; }

  PolyXY P() const { return low_.P + high_.P; }
  PolyXY Q() const { return low_.Q + high_.Q; }

 private:
  Weight weight_;
  QHComponent low_;
  QHComponent high_;
};

class NotTwoComponents : public Error {
 public:
  explicit NotTwoComponents(std::size_t found);
  std::size_t found() const { return found_; }

 private:
  std::size_t found_;
};

QHSystem make_system(const std::vector<QHComponent>& components, const Weight& w);

/// Convenience: decompose then make_system.
QHSystem make_system(const PolyXY& P, const PolyXY& Q, const Weight& w);

/// The radial coefficient functions of X_n + X_m in generalized polar
/// coordinates:
///   a_i = (m-n) (cos P_i(cos, sin) + sin Q_i(cos, sin))
///   b_i = p cos Q_i(cos, sin) - q sin P_i(cos, sin)
struct RadialSystem {
  TrigPoly a_n, a_m, b_n, b_m;
  int p = 1, q = 1, n = 0, m = 1;

  /// Exponent (n-1)/(m-n) of r in the time-parametrized polar system.
  double polar_exponent() const { return static_cast<double>(n - 1) / (m - n); }
};

RadialSystem radial_coefficients(const QHSystem& system);

/// Numerator of Phi = a_n/b_m - (b_n/b_m)'; Phi = numerator / b_m^2, i.e.
/// numerator = a_n b_m - (b_n' b_m - b_n b_m').
TrigPoly phi_numerator(const RadialSystem& rs);

}  // namespace qhcycle

#endif
