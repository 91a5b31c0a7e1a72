#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qhcycle/systems.hpp"
#include "qhcycle/transforms.hpp"

using namespace qhcycle;

namespace {

constexpr double kPi = std::numbers::pi;
const PolyXY X = PolyXY::x();
const PolyXY Y = PolyXY::y();

RadialSystem abel_circle() { return radial_coefficients(systems::unit_circle_abel(1, 0)); }
RadialSystem polar_circle() { return radial_coefficients(systems::unit_circle_polar(1, 0)); }

// x' = x - y + x r^2, y' = x + y + y r^2: X_3 is radial, so b_3 == 0.
QHSystem radial_cubic() {
  PolyXY r2 = X * X + Y * Y;
  return make_system(X - Y + X * r2, X + Y + Y * r2, Weight(1, 1));
}

std::function<double(double)> random_fourier(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-2, 2);
  double a0 = c(rng), a1 = c(rng), b1 = c(rng), a2 = c(rng);
  return [=](double t) {
    double w = 2 * kPi * t;
    return a0 + a1 * std::cos(w) + b1 * std::sin(w) + a2 * std::cos(2 * w);
  };
}

}  // namespace

TEST_CASE("polar equation") {
  PolarODE ode = polar_equation(abel_circle());
  for (double t : {0.0, 0.4, 2.0, 5.5}) {
    CHECK(ode.rate(t, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ode.rate_dr(t, 1.0) == doctest::Approx(-1.0));
    for (double r : {0.3, 2.5}) CHECK(ode.rate(t, r) == doctest::Approx((2 * r - 2 * r * r) / (1 + r)));
  }
  PolarODE ode_polar = polar_equation(polar_circle());
  for (double t : {0.0, 0.4, 2.0, 5.5}) CHECK(std::fabs(ode_polar.rate(t, 1.0)) < 1e-14);

  PolarODE e1 = polar_equation(radial_coefficients(systems::example1()));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), lr(-3, 3);
  for (int i = 0; i < 100; ++i) {
    double t = ang(rng), r = std::exp(lr(rng));
    CoeffValues c = e1.coefficients(t);
    double den = c.b_n + c.b_m * r;
    if (std::fabs(den) < 1e-6) continue;
    CHECK(e1.rate(t, r) * den == doctest::Approx(c.a_n * r + c.a_m * r * r).epsilon(1e-12));
    double h = 1e-6 * r;
    double fd = (e1.rate(t, r + h) - e1.rate(t, r - h)) / (2 * h);
    CHECK(e1.rate_dr(t, r) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("polar system") {
  PolarFlow f_abel = polar_system(abel_circle());
  CHECK(f_abel.prefactor(0.7) == doctest::Approx(1.0));
  CHECK(f_abel.dtheta_dt(0.3, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(f_abel.dr_dt(0.3, 0.0), std::domain_error);

  RadialSystem rs = radial_coefficients(systems::example1());
  PolarFlow f = polar_system(rs);
  PolarODE ode(rs);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), lr(-3, 3);
  for (int i = 0; i < 100; ++i) {
    double t = ang(rng), r = std::exp(lr(rng));
    double den = ode.denominator(t, r);
    if (std::fabs(den) < 1e-9) continue;
    CHECK((f.dtheta_dt(t, r) > 0) == (den > 0));
    CHECK(f.dr_dt(t, r) / f.dtheta_dt(t, r) == doctest::Approx(ode.rate(t, r)).epsilon(1e-9));
  }
}

TEST_CASE("cherkas") {
  AbelEquation a = cherkas(abel_circle());
  for (double tau : {0.0, 0.3, 0.9}) {
    CHECK(a.alpha3(tau) == doctest::Approx(8 * kPi));
    CHECK(a.alpha2(tau) == doctest::Approx(-12 * kPi));
    CHECK(a.alpha1(tau) == doctest::Approx(4 * kPi));
    CHECK(std::fabs(a.S(tau, 1.0)) < 1e-12);
  }
  CHECK_THROWS_AS(cherkas(polar_circle()), CoefficientUndefined);
  CHECK_THROWS_AS(cherkas(radial_coefficients(systems::example1())), CoefficientUndefined);
}

TEST_CASE("Abel coefficients agree with the direct formula") {
  RadialSystem rs = radial_coefficients(systems::example2());
  AbelEquation a = cherkas(rs);
  REQUIRE(a.numerators);
  TrigPoly dbn = derivative(rs.b_n), dbm = derivative(rs.b_m);
  for (int i = 0; i < 50; ++i) {
    double tau = i / 50.0, t = 2 * kPi * tau;
    double an = rs.a_n(t), am = rs.a_m(t), bn = rs.b_n(t), bm = rs.b_m(t);
    double w = bm * dbn(t) - dbm(t) * bn;  // W(b_m, b_n)
    double n1 = an * bm - w, n2 = am * bn - 2 * an * bm + w, n3 = an * bm - am * bn;
    double den = bn * bm;
    CHECK(std::fabs(a.alpha1(tau) - 2 * kPi * n1 / den) < 1e-12 * std::max(1.0, std::fabs(a.alpha1(tau))));
    CHECK(std::fabs(a.alpha2(tau) - 2 * kPi * n2 / den) < 1e-12 * std::max(1.0, std::fabs(a.alpha2(tau))));
    CHECK(std::fabs(a.alpha3(tau) - 2 * kPi * n3 / den) < 1e-12 * std::max(1.0, std::fabs(a.alpha3(tau))));
  }
}

TEST_CASE("abel_aux") {
  const double eps = 0.25;
  AuxFunction F = abel_aux(Curve::constant(1.0), Curve::constant(eps));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> tdist(0, 1), xdist(-2, 3);
  int n = 0;
  while (n < 100) {
    double t = tdist(rng), x = xdist(rng);
    if (std::min({std::fabs(x), std::fabs(x - 1), std::fabs(x - eps)}) < 0.05) continue;
    ++n;
    CHECK(F.F(t, x) == doctest::Approx(-std::log(std::fabs((x - 1) * (x - eps) * x / eps))));
    CHECK(F.F(t, x) == doctest::Approx(F.F(t + 1, x)));
    double h = 1e-5;
    CHECK(std::fabs(F.F_x(t, x) - (F.F(t, x + h) - F.F(t, x - h)) / (2 * h)) < 1e-6);
    CHECK(std::fabs(F.F_t(t, x) - (F.F(t + h, x) - F.F(t - h, x)) / (2 * h)) < 1e-6);
  }

  Curve l1{[](double t) { return 2 + 0.5 * std::sin(2 * kPi * t); },
           [](double t) { return kPi * std::cos(2 * kPi * t); }};
  Curve l2{[](double t) { return -1 + 0.25 * std::cos(2 * kPi * t); },
           [](double t) { return -0.5 * kPi * std::sin(2 * kPi * t); }};
  AuxFunction G = abel_aux(l1, l2);
  for (int i = 0; i < 50; ++i) {
    double t = tdist(rng), x = xdist(rng), h = 1e-5;
    if (std::min({std::fabs(x), std::fabs(x - l1.value(t)), std::fabs(x - l2.value(t))}) < 0.05) continue;
    CHECK(std::fabs(G.F_t(t, x) - (G.F(t + h, x) - G.F(t - h, x)) / (2 * h)) < 1e-6);
  }

  CHECK_THROWS_AS(abel_aux(Curve::constant(0.25), Curve::constant(1.0)), InvalidCurves);
  CHECK_THROWS_AS(abel_aux(Curve::constant(1.0), Curve::constant(0.0)), InvalidCurves);
  Curve drift{[](double t) { return 0.1 + 0.1 * t; }, [](double) { return 0.1; }};
  CHECK_THROWS_AS(abel_aux(Curve::constant(1.0), drift), InvalidCurves);
}

TEST_CASE("identity 12") {
  AbelEquation a = cherkas(abel_circle());
  Sampling s;
  ResidualReport r = check_identity_12(a, Curve::constant(1.0), Curve::constant(0.25), s);
  CHECK(r.samples == 200);
  CHECK(r.max_residual < 1e-9);

  AbelEquation zero;
  zero.alpha1 = zero.alpha2 = zero.alpha3 = [](double) { return 0.0; };
  CHECK(check_identity_12(zero, Curve::constant(1.0), Curve::constant(0.25)).max_residual < 1e-12);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    AbelEquation ab;
    ab.alpha1 = random_fourier(rng);
    ab.alpha2 = random_fourier(rng);
    ab.alpha3 = random_fourier(rng);
    Curve l1{[](double t) { return 1.5 + 0.3 * std::sin(2 * kPi * t); },
             [](double t) { return 0.6 * kPi * std::cos(2 * kPi * t); }};
    Curve l2{[](double t) { return 0.4 + 0.1 * std::cos(2 * kPi * t); },
             [](double t) { return -0.2 * kPi * std::sin(2 * kPi * t); }};
    CHECK(check_identity_12(ab, l1, l2, {250, 100u + trial}).max_residual < 1e-9);
  }
}

TEST_CASE("divergence transfer") {
  Diffeomorphism id{[](Vec2 p) { return p; }, [](Vec2) { return Mat2{{{1, 0}, {0, 1}}}; }};
  AuxFunction F;
  F.F = [](double t, double x) { return std::sin(t) * x * x; };
  F.F_t = [](double t, double x) { return std::cos(t) * x * x; };
  F.F_x = [](double t, double x) { return 2 * std::sin(t) * x; };
  PlanarField Q = [](Vec2 p) { return Vec2{std::cos(p[1]) + p[0], p[0] * p[1]}; };
  std::vector<Vec2> pts = {{0.1, 0.2}, {1.0, -0.5}, {2.0, 1.5}};
  CHECK(divergence_transfer_check(id, F, Q, Q, pts).max_residual < 1e-7);

  Diffeomorphism rescale{[](Vec2 p) { return Vec2{p[0] / (2 * kPi), p[1]}; },
                         [](Vec2) { return Mat2{{{1 / (2 * kPi), 0}, {0, 1}}}; }};
  AuxFunction zero;
  zero.F = zero.F_t = zero.F_x = [](double, double) { return 0.0; };
  CHECK(divergence_transfer_check(rescale, zero, Q, std::nullopt, pts).max_residual < 1e-8);

  RadialSystem rs = radial_coefficients(systems::example2());
  AbelEquation ab = cherkas(rs);
  AuxFunction aux = abel_aux(Curve::constant(1.0), Curve::constant(0.25));
  auto sample = cherkas_sample_points(rs, 1.0, 0.25, {200, 20240607});
  CHECK(sample.size() == 200);
  PlanarField polar = polar_direction_field(PolarODE(rs));
  CHECK(divergence_transfer_check(cherkas_map(rs), aux, polar, std::nullopt, sample).max_residual < 1e-5);
  PlanarField abel = abel_direction_field(ab);
  PlanarField scaled = [abel](Vec2 p) {
    Vec2 v = abel(p);
    return Vec2{v[0] / (2 * kPi), v[1] / (2 * kPi)};
  };
  CHECK(divergence_transfer_check(cherkas_map(rs), aux, polar, scaled, sample).max_residual < 1e-5);

  Diffeomorphism flat{[](Vec2 p) { return Vec2{p[0], 0.0}; }, [](Vec2) { return Mat2{{{1, 0}, {0, 0}}}; }};
  CHECK_THROWS_AS(divergence_transfer_check(flat, zero, Q, std::nullopt, pts), SingularJacobian);
}

TEST_CASE("script F") {
  AuxFunction F = script_F(abel_circle());
  for (double t : {0.1, 2.0}) {
    for (double r : {0.2, 3.0}) {
      CHECK(F.F(t, r) == doctest::Approx(std::log(1 + r) - 2 * std::log(r) - std::log(2 * kPi)));
      CHECK(F.F(t, r) == doctest::Approx(F.F(t + 2 * kPi, r)));
    }
  }
  RadialSystem e1 = radial_coefficients(systems::example1());
  AuxFunction G = script_F(e1);
  PolarODE ode(e1);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(0, 2 * kPi), lr(-2, 2);
  for (int i = 0; i < 100; ++i) {
    double t = ang(rng), r = std::exp(lr(rng)), h = 1e-5;
    if (std::fabs(ode.denominator(t, r)) < 1e-2) continue;
    double ft = (G.F(t + h, r) - G.F(t - h, r)) / (2 * h);
    double fx = (G.F(t, r + h * r) - G.F(t, r - h * r)) / (2 * h * r);
    CHECK(std::fabs(G.F_t(t, r) - ft) < 1e-5 * std::max(1.0, std::fabs(ft)));
    CHECK(std::fabs(G.F_x(t, r) - fx) < 1e-5 * std::max(1.0, std::fabs(fx)));
  }
  CHECK_THROWS_AS(script_F(radial_coefficients(radial_cubic())), CoefficientUndefined);
}

TEST_CASE("identity 19") {
  CHECK(check_identity_19(radial_coefficients(systems::example1()), {500, 20240607}).max_residual < 1e-8);
  CHECK(check_identity_19(radial_coefficients(systems::example2())).max_residual < 1e-8);
  RadialSystem z = radial_coefficients(systems::phi_zero());
  CHECK(phi_numerator(z).is_zero());
  CHECK(check_identity_19(z).max_residual < 1e-12);
}

TEST_CASE("identity of the divergence of g X") {
  CHECK(check_identity_prop26(radial_coefficients(systems::example2())).max_residual < 1e-5);
  CHECK(check_identity_prop26(abel_circle()).max_residual < 1e-5);
  CHECK(check_identity_prop26(radial_coefficients(systems::phi_zero())).max_residual < 1e-6);
}

TEST_CASE("epsilon curve sign") {
  RadialSystem rs = radial_coefficients(systems::example2());
  EpsilonSignCheck e = find_uniform_epsilon(rs);
  CHECK(e.uniform());
  int expected = sign(e.epsilon);  // b_m / b_n > 0 and Phi > 0 here
  CHECK(e.sign_of_S() == expected);
  AbelEquation ab = cherkas(rs);
  for (int i = 0; i < 64; ++i) CHECK(ab.S(i / 64.0, e.epsilon.get_d()) * e.sign_of_S() > 0);

  EpsilonSignCheck big = epsilon_sign_check(rs, Rational(3));
  CHECK(big.epsilon == 3);
}

TEST_CASE("two-curve certificate") {
  AbelEquation a = cherkas(abel_circle());
  TwoCurveCertificate c = check_two_curve_certificate(a, Curve::constant(1.0), Curve::constant(0.25));
  CHECK(c.ordered);
  CHECK(c.nonvanishing);
  CHECK(c.periodic);
  CHECK(c.second_signed);
  CHECK(c.discriminant_nonpositive);
  CHECK(c.holds());

  TwoCurveCertificate bad = check_two_curve_certificate(a, Curve::constant(0.25), Curve::constant(1.0));
  CHECK_FALSE(bad.ordered);
  CHECK_FALSE(bad.holds());
}
