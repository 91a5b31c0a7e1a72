#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qhcycle/polyxy.hpp"
#include "qhcycle/systems.hpp"
#include "qhcycle/trigpoly.hpp"
#include "qhcycle/upoly.hpp"
#include "qhcycle/vectorfield.hpp"

using namespace qhcycle;

namespace {

constexpr double kPi = std::numbers::pi;
const PolyXY X = PolyXY::x();
const PolyXY Y = PolyXY::y();

PolyXY random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), deg(0, max_degree);
  PolyXY p;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      int c = coef(rng);
      int q = den(rng);
      p.add_term(Rational(c, q), i, j);
    }
  return p;
}

TrigPoly random_trig(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> coef(-6, 6), den(1, 3);
  auto draw = [&] {
    int c = coef(rng);
    int q = den(rng);
    return Rational(c, q);
  };
  Rational c0 = draw();
  std::vector<Rational> cs, ss;
  for (int k = 0; k < degree; ++k) {
    cs.push_back(draw());
    ss.push_back(draw());
  }
  return TrigPoly(c0, cs, ss);
}

}  // namespace

TEST_CASE("from_poly_on_circle basics") {
  CHECK(from_poly_on_circle(X * X + Y * Y) == TrigPoly(1));
  CHECK(from_poly_on_circle(PolyXY()).is_zero());
  CHECK(sign_analysis(from_poly_on_circle(PolyXY())).verdict == SignVerdict::IdenticallyZero);
}

TEST_CASE("2x^2 + y^4 on the circle") {
  TrigPoly f = from_poly_on_circle(2 * X.pow(2) + Y.pow(4));
  CHECK(f == TrigPoly(Rational(11, 8), {0, Rational(1, 2), 0, Rational(1, 8)}, {}));
  for (int i = 0; i < 64; ++i) {
    double t = 2 * kPi * i / 64.0;
    double direct = 2 * std::pow(std::cos(t), 2) + std::pow(std::sin(t), 4);
    CHECK(f(t) == doctest::Approx(direct).epsilon(1e-14));
  }
  CHECK(f.to_string() == "11/8 + 1/2*cos(2t) + 1/8*cos(4t)");
}

TEST_CASE("arithmetic") {
  TrigPoly c = TrigPoly::cos_k(1);
  CHECK(c * c == TrigPoly(Rational(1, 2), {0, Rational(1, 2)}, {}));

  TrigPoly a1(2), b1(1), a3(-2, {}, {0, 8}), b3(2, {0, 1}, {});
  TrigPoly lhs = a1 * b3 - a3 * b1;
  CHECK(lhs == TrigPoly(6, {0, 2}, {0, -8}));
  CHECK(a3 * b1 - a1 * b3 == TrigPoly(-6, {0, -2}, {0, 8}));

  std::mt19937_64 rng(7);
  TrigPoly f = random_trig(rng, 4);
  CHECK((f - f).is_zero());

  TrigPoly g = random_trig(rng, 3);
  TrigPoly h = random_trig(rng, 5);
  if (g.cos_coeff(3) != 0 && h.sin_coeff(5) != 0) CHECK((g * h).degree() == 8);
  CHECK((Rational(3, 2) * g)(0.3) == doctest::Approx(1.5 * g(0.3)));
}

TEST_CASE("derivative") {
  CHECK(derivative(TrigPoly(2, {0, 1}, {})) == TrigPoly(0, {}, {0, -2}));
  CHECK(derivative(TrigPoly(Rational(7, 3))).is_zero());
  for (int k = 1; k <= 8; ++k) {
    TrigPoly s = TrigPoly::sin_k(k);
    CHECK(derivative(s) == TrigPoly::cos_k(k, k));
    for (int i = 0; i < 32; ++i) {
      double t = 2 * kPi * i / 32.0, h = 1e-5;
      double fd = (s(t + h) - s(t - h)) / (2 * h);
      CHECK(std::fabs(derivative(s)(t) - fd) < 1e-8 * k);
    }
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    TrigPoly f = random_trig(rng, 4);
    TrigPoly df = derivative(f);
    for (int i = 0; i < 20; ++i) {
      double t = 0.31 * i, h = 1e-5;
      CHECK(std::fabs(df(t) - (f(t + h) - f(t - h)) / (2 * h)) < 1e-8);
    }
  }
}

TEST_CASE("eval with derivative and exact value at pi") {
  TrigPoly f(1, {Rational(1, 2), 3}, {2, Rational(-1, 4)});
  double v = 0, d = 0;
  f.eval(1.1, v, d);
  CHECK(v == doctest::Approx(f(1.1)));
  CHECK(d == doctest::Approx(derivative(f)(1.1)));
  CHECK(f.at_pi() == Rational(1) - Rational(1, 2) + 3);
  CHECK(f.at(std::cos(0.4), std::sin(0.4)) == doctest::Approx(f(0.4)));
}

TEST_CASE("sign analysis verdicts") {
  CHECK(sign_analysis(TrigPoly(2, {0, 1}, {})).verdict == SignVerdict::Positive);
  CHECK(sign_analysis(TrigPoly(-2, {0, 1}, {})).verdict == SignVerdict::Negative);
  CHECK(sign_analysis(TrigPoly(Rational(1, 2), {0, Rational(1, 2)}, {})).verdict ==
        SignVerdict::NonNegativeWithZeros);
  CHECK(sign_analysis(TrigPoly(-1, {1}, {})).verdict == SignVerdict::NonPositiveWithZeros);

  SignReport at_pi = sign_analysis(TrigPoly(1, {1}, {}));
  CHECK(at_pi.verdict == SignVerdict::NonNegativeWithZeros);
  REQUIRE(at_pi.zero_points.size() == 1);
  CHECK(at_pi.zero_points[0].at_pi);
  CHECK(at_pi.zero_points[0].theta() == doctest::Approx(kPi));

  SignReport mixed = sign_analysis(TrigPoly(-6, {0, -2}, {0, 8}));
  CHECK(mixed.verdict == SignVerdict::ChangesSign);
  REQUIRE(mixed.witnesses.size() >= 2);
  bool pos = false, neg = false;
  TrigPoly f(-6, {0, -2}, {0, 8});
  for (const auto& w : mixed.witnesses) {
    CHECK(w.sign * f(w.theta) > 0);
    pos |= w.sign > 0;
    neg |= w.sign < 0;
  }
  CHECK((pos && neg));
}

TEST_CASE("Example 1 cross term changes sign with the true signs") {
  RadialSystem rs = radial_coefficients(systems::example1());
  TrigPoly f = rs.a_m * rs.b_n - rs.a_n * rs.b_m;
  SignReport r = sign_analysis(f);
  CHECK(r.verdict == SignVerdict::ChangesSign);
  CHECK(f(5 * kPi / 4) > 0);
  CHECK(f(kPi / 2) == doctest::Approx(-1.0));
}

TEST_CASE("homomorphism and canonicalization") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    PolyXY p = random_poly(rng, 4), q = random_poly(rng, 4);
    TrigPoly fp = from_poly_on_circle(p), fq = from_poly_on_circle(q);
    TrigPoly fpq = from_poly_on_circle(p * q);
    CHECK(from_poly_on_circle(p + q) == fp + fq);
    for (int i = 0; i < 100; ++i) {
      double t = ang(rng);
      double want = fp(t) * fq(t);
      CHECK(std::fabs(fpq(t) - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
    CHECK(from_poly_on_circle((X * X + Y * Y - PolyXY(1)) * p).is_zero());
  }
}

TEST_CASE("sign soundness and root completeness") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    TrigPoly f = random_trig(rng, 1 + trial % 5);
    SignReport r = sign_analysis(f);
    int changes = 0;
    double prev = f(0.0);
    bool all_pos = true, all_neg = true;
    for (int i = 1; i <= 1000; ++i) {
      double v = f(2 * kPi * i / 1000.0);
      if ((v > 0 && prev < 0) || (v < 0 && prev > 0)) ++changes;
      if (v != 0) prev = v;
      all_pos &= v > 0;
      all_neg &= v < 0;
    }
    if (r.verdict == SignVerdict::Positive) {
      CHECK(all_pos);
      CHECK(r.zero_points.empty());
    }
    if (r.verdict == SignVerdict::Negative) {
      CHECK(all_neg);
      CHECK(r.zero_points.empty());
    }
    CHECK(changes <= static_cast<int>(r.zero_points.size()));
    for (const auto& w : r.witnesses) CHECK(w.sign * f(w.theta) > 0);
    for (const auto& z : r.zero_points) {
      if (z.at_pi) continue;
      CHECK(z.t_hi - z.t_lo <= Rational(1, 1 << 20));
      CHECK(std::fabs(f(z.theta())) < 1e-4 * (1 + std::fabs(f.constant().get_d())) * 10);
    }
  }
}

TEST_CASE("half-angle numerator") {
  TrigPoly f(2, {0, 1}, {});
  UPoly n = half_angle_numerator(f);
  for (double t : {-3.0, -0.5, 0.0, 0.7, 2.0}) {
    double theta = 2 * std::atan(t);
    double den = std::pow(1 + t * t, f.degree());
    CHECK(n(Rational(t)).get_d() / den == doctest::Approx(f(theta)));
  }
}
