#ifndef QHCYCLE_UPOLY_HPP
#define QHCYCLE_UPOLY_HPP

#include <utility>
#include <vector>

#include "qhcycle/rational.hpp"

namespace qhcycle {

/// Dense univariate polynomial over the rationals, coefficients in increasing
/// degree. The zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sign((*this)(x)); }

  UPoly derivative() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& c, const UPoly& a);
  friend UPoly operator-(const UPoly& a) { return Rational(-1) * a; }
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; b must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

/// Monic greatest common divisor (zero if both are zero).
/// Positive multiple with coprime integer coefficients.
UPoly primitive_part(const UPoly& p);

UPoly gcd(const UPoly& a, const UPoly& b);

/// p / gcd(p, p'): same real roots, all simple.
UPoly square_free_part(const UPoly& p);

/// Sturm chain p, p', -rem(...), ... with each member scaled by a positive
/// constant to keep coefficients small.
class SturmChain {
 public:
  explicit SturmChain(const UPoly& p);

  /// Sign variations of the chain at x.
  int variations(const Rational& x) const;

  /// Distinct real roots in (a, b]; a must not be a root.
  int count_roots(const Rational& a, const Rational& b) const;

  const UPoly& base() const { return chain_.front(); }

 private:
  std::vector<UPoly> chain_;
};

/// Isolating interval for one real root. lo == hi marks an exact rational root;
/// otherwise lo < hi, neither endpoint is a root, and the root is interior.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Isolates every distinct real root of p and refines each interval below
/// max_width. p must be nonzero. Results are sorted ascending.
std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rational& max_width);

/// Bound B with every real root strictly inside (-B, B).
Rational cauchy_root_bound(const UPoly& p);

}  // namespace qhcycle

#endif
