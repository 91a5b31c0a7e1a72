#ifndef QHCYCLE_POLYXY_HPP
#define QHCYCLE_POLYXY_HPP

#include <map>
#include <string>

#include "qhcycle/rational.hpp"

namespace qhcycle {

/// Exponent pair of x^dx y^dy.
struct Monomial {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic: total degree first, then higher x power first.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.dx + a.dy, db = b.dx + b.dy;
    if (da != db) return da < db;
    return a.dx > b.dx;
  }
};

/// Sparse bivariate polynomial over the rationals; zero coefficients are never
/// stored, so iteration order and equality are canonical.
class PolyXY {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  PolyXY() = default;
  PolyXY(Rational constant);  // NOLINT(google-explicit-constructor)

  static PolyXY x();
  static PolyXY y();
  static PolyXY monomial(const Rational& coef, int dx, int dy);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int dx, int dy) const;
  int total_degree() const;

  void add_term(const Rational& coef, int dx, int dy);

  double operator()(double x, double y) const;

  PolyXY pow(int e) const;

  PolyXY& operator+=(const PolyXY& other);
  PolyXY& operator-=(const PolyXY& other);
  friend PolyXY operator+(PolyXY a, const PolyXY& b) { return a += b; }
  friend PolyXY operator-(PolyXY a, const PolyXY& b) { return a -= b; }
  friend PolyXY operator-(const PolyXY& a) { return Rational(-1) * a; }
  friend PolyXY operator*(const PolyXY& a, const PolyXY& b);
  friend PolyXY operator*(const Rational& c, const PolyXY& a);
  friend PolyXY operator*(const PolyXY& a, const Rational& c) { return c * a; }
  friend bool operator==(const PolyXY&, const PolyXY&) = default;

  /// e.g. "4*x^3 + x*y^4".
  std::string to_string() const;

 private:
  Terms terms_;
};

}  // namespace qhcycle

#endif
