#include "qhcycle/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qhcycle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFdStep = 1e-5;

double relative_gap(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

void record(ResidualReport& rep, double residual, Vec2 where) {
  ++rep.samples;
  if (rep.samples == 1 || residual > rep.max_residual) {
    rep.max_residual = residual;
    rep.worst = where;
  }
}

void require_nonvanishing(const TrigPoly& f, const char* name) {
  if (!sign_analysis(f).strict())
    throw CoefficientUndefined(std::string(name) + " has zeros on [0, 2pi]");
}

}  // namespace

// ---------------------------------------------------------------- polar ODE

PolarODE::PolarODE(RadialSystem rs) : rs_(std::move(rs)) {}

CoeffValues PolarODE::coefficients(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  return {rs_.a_n.at(c, s), rs_.a_m.at(c, s), rs_.b_n.at(c, s), rs_.b_m.at(c, s)};
}

double PolarODE::denominator(double theta, double r) const {
  const CoeffValues v = coefficients(theta);
  return v.b_n + v.b_m * r;
}

double PolarODE::rate(double theta, double r) const { return eval(theta, r).rate; }

double PolarODE::rate_dr(double theta, double r) const { return eval(theta, r).rate_dr; }

PolarODE::Eval PolarODE::eval(double theta, double r) const {
  const CoeffValues v = coefficients(theta);
  const double den = v.b_n + v.b_m * r;
  const double num = v.a_n * r + v.a_m * r * r;
  Eval e;
  e.denominator = den;
  e.rate = num / den;
  e.rate_dr = ((v.a_n + 2.0 * v.a_m * r) * den - num * v.b_m) / (den * den);
  return e;
}

PolarODE polar_equation(const RadialSystem& rs) { return PolarODE(rs); }

double PolarFlow::prefactor(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  return 1.0 / (rs_.p * c * c + rs_.q * s * s);
}

double PolarFlow::dr_dt(double theta, double r) const {
  if (!(r > 0)) throw std::domain_error("polar flow evaluated at r <= 0");
  const double c = std::cos(theta), s = std::sin(theta);
  return (rs_.a_n.at(c, s) + rs_.a_m.at(c, s) * r) * prefactor(theta) *
         std::pow(r, 1.0 + rs_.polar_exponent());
}

double PolarFlow::dtheta_dt(double theta, double r) const {
  if (!(r > 0)) throw std::domain_error("polar flow evaluated at r <= 0");
  const double c = std::cos(theta), s = std::sin(theta);
  return (rs_.b_n.at(c, s) + rs_.b_m.at(c, s) * r) * prefactor(theta) *
         std::pow(r, rs_.polar_exponent());
}

PolarFlow polar_system(const RadialSystem& rs) { return PolarFlow(rs); }

// ---------------------------------------------------------------- Abel

double AbelEquation::S(double tau, double rho) const {
  return ((alpha3(tau) * rho + alpha2(tau)) * rho + alpha1(tau)) * rho;
}

double AbelEquation::dS_drho(double tau, double rho) const {
  return (3.0 * alpha3(tau) * rho + 2.0 * alpha2(tau)) * rho + alpha1(tau);
}

AbelEquation cherkas(const RadialSystem& rs) {
  require_nonvanishing(rs.b_n, "b_n");
  require_nonvanishing(rs.b_m, "b_m");
  const TrigPoly w = wronskian(rs.b_m, rs.b_n);
  AbelEquation::Numerators num{
      rs.a_n * rs.b_m - w,                                  // alpha1
      rs.a_m * rs.b_n - Rational(2) * rs.a_n * rs.b_m + w,  // alpha2
      rs.a_n * rs.b_m - rs.a_m * rs.b_n,                    // alpha3
      rs.b_n * rs.b_m,
  };
  auto coefficient = [den = num.denominator](TrigPoly top) {
    return [top = std::move(top), den](double tau) {
      const double th = kTwoPi * tau;
      const double c = std::cos(th), s = std::sin(th);
      return kTwoPi * top.at(c, s) / den.at(c, s);
    };
  };
  AbelEquation abel;
  abel.alpha1 = coefficient(num.alpha1);
  abel.alpha2 = coefficient(num.alpha2);
  abel.alpha3 = coefficient(num.alpha3);
  abel.numerators = std::move(num);
  abel.source = rs;
  return abel;
}

Curve Curve::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

AuxFunction abel_aux(const Curve& l1, const Curve& l2) {
  constexpr int kGrid = 257;
  for (int i = 0; i < kGrid; ++i) {
    const double t = static_cast<double>(i) / (kGrid - 1);
    const double v1 = l1.value(t), v2 = l2.value(t);
    if (!(v1 > v2)) throw InvalidCurves("lambda1 must exceed lambda2 on [0, 1]");
    if (v1 == 0.0 || v2 == 0.0) throw InvalidCurves("curves must not vanish");
  }
  for (const Curve* c : {&l1, &l2}) {
    const double a = c->value(0.0), b = c->value(1.0);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) throw InvalidCurves("curves must be 1-periodic");
  }
  AuxFunction aux;
  aux.F = [l1, l2](double t, double x) {
    const double a = l1.value(t), b = l2.value(t);
    return -std::log(std::abs((x - a) * (x - b) * x / (a * b)));
  };
  aux.F_t = [l1, l2](double t, double x) {
    const double a = l1.value(t), b = l2.value(t);
    const double da = l1.derivative(t), db = l2.derivative(t);
    return da / (x - a) + db / (x - b) + da / a + db / b;
  };
  aux.F_x = [l1, l2](double t, double x) {
    const double a = l1.value(t), b = l2.value(t);
    return -1.0 / (x - a) - 1.0 / (x - b) - 1.0 / x;
  };
  aux.defined = [l1, l2](double t, double x) {
    return x != 0.0 && x != l1.value(t) && x != l2.value(t);
  };
  aux.region = "[0,1] x R minus the curves x = 0, x = lambda1(t), x = lambda2(t)";
  return aux;
}

double abel_I_L(const AbelEquation& abel, const Curve& l1, const Curve& l2, double t, double x) {
  const double a = l1.value(t), b = l2.value(t);
  const double da = l1.derivative(t), db = l2.derivative(t);
  const double g1 = abel.S(t, a) - da;
  const double g2 = abel.S(t, b) - db;
  const double w = a * db - da * b;
  return -g1 / (a * (x - a) * (x - a)) + g2 / (b * (x - b) * (x - b)) +
         w / (a * b * (x - a) * (x - b));
}

ResidualReport check_identity_12(const AbelEquation& abel, const Curve& l1, const Curve& l2,
                                 const Sampling& sampling) {
  const AuxFunction aux = abel_aux(l1, l2);
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> tau_dist(0.0, 1.0), x_dist(-2.0, 3.0);
  ResidualReport rep;
  while (rep.samples < sampling.count) {
    const double t = tau_dist(rng);
    const double x = x_dist(rng);
    const double a = l1.value(t), b = l2.value(t);
    if (std::min({std::abs(x), std::abs(x - a), std::abs(x - b)}) <= kSampleMargin) continue;
    const double lhs = abel.dS_drho(t, x) + aux.F_t(t, x) + aux.F_x(t, x) * abel.S(t, x);
    const double f = (x - a) * (x - b) * x;
    const double rhs = f * abel_I_L(abel, l1, l2, t, x) / (a - b);
    record(rep, relative_gap(lhs, rhs), {t, x});
  }
  return rep;
}

// ---------------------------------------------------------- divergence transfer

namespace {

double det(const Mat2& J) { return J[0][0] * J[1][1] - J[0][1] * J[1][0]; }

Vec2 mat_vec(const Mat2& J, const Vec2& v) {
  return {J[0][0] * v[0] + J[0][1] * v[1], J[1][0] * v[0] + J[1][1] * v[1]};
}

Vec2 shifted(Vec2 p, int axis, double h) {
  p[static_cast<std::size_t>(axis)] += h;
  return p;
}

double fd_divergence(const PlanarField& field, const Vec2& p) {
  const double h = kFdStep;
  return (field(shifted(p, 0, h))[0] - field(shifted(p, 0, -h))[0]) / (2 * h) +
         (field(shifted(p, 1, h))[1] - field(shifted(p, 1, -h))[1]) / (2 * h);
}

Vec2 fd_gradient(const std::function<double(Vec2)>& f, const Vec2& p) {
  const double h = kFdStep;
  return {(f(shifted(p, 0, h)) - f(shifted(p, 0, -h))) / (2 * h),
          (f(shifted(p, 1, h)) - f(shifted(p, 1, -h))) / (2 * h)};
}

}  // namespace

ResidualReport divergence_transfer_check(const Diffeomorphism& T, const AuxFunction& F,
                                         const PlanarField& Q, const std::optional<PlanarField>& P,
                                         std::span<const Vec2> points) {
  ResidualReport rep;
  const auto fbar = [&](Vec2 x) {
    const Vec2 y = T.map(x);
    return std::log(std::abs(det(T.jacobian(x)))) + F.F(y[0], y[1]);
  };
  const auto pushed = [&](Vec2 x) { return mat_vec(T.jacobian(x), Q(x)); };
  for (const Vec2& x : points) {
    const Mat2 J = T.jacobian(x);
    const double dJ = det(J);
    if (std::abs(dJ) < 1e-12) throw SingularJacobian("|det DT| below 1e-12 at a sample point");
    const Vec2 y = T.map(x);

    double div_p = 0.0;
    Vec2 p_at_y{};
    if (P) {
      div_p = fd_divergence(*P, y);
      p_at_y = (*P)(y);
    } else {
      // tr(D_x(DT Q) DT^{-1})
      const double h = kFdStep;
      Mat2 D{};
      for (int j = 0; j < 2; ++j) {
        const Vec2 up = pushed(shifted(x, j, h)), dn = pushed(shifted(x, j, -h));
        D[0][static_cast<std::size_t>(j)] = (up[0] - dn[0]) / (2 * h);
        D[1][static_cast<std::size_t>(j)] = (up[1] - dn[1]) / (2 * h);
      }
      const Mat2 inv{{{J[1][1] / dJ, -J[0][1] / dJ}, {-J[1][0] / dJ, J[0][0] / dJ}}};
      div_p = D[0][0] * inv[0][0] + D[0][1] * inv[1][0] + D[1][0] * inv[0][1] + D[1][1] * inv[1][1];
      p_at_y = pushed(x);
    }
    const double lhs = div_p + F.F_t(y[0], y[1]) * p_at_y[0] + F.F_x(y[0], y[1]) * p_at_y[1];

    const Vec2 q = Q(x);
    const Vec2 grad = fd_gradient(fbar, x);
    const double rhs = fd_divergence(Q, x) + grad[0] * q[0] + grad[1] * q[1];
    record(rep, relative_gap(lhs, rhs), x);
  }
  return rep;
}

Diffeomorphism cherkas_map(const RadialSystem& rs) {
  const TrigPoly dbn = derivative(rs.b_n), dbm = derivative(rs.b_m);
  Diffeomorphism T;
  T.map = [rs](Vec2 p) {
    const double c = std::cos(p[0]), s = std::sin(p[0]);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    return Vec2{p[0] / kTwoPi, bm * p[1] / (bn + bm * p[1])};
  };
  T.jacobian = [rs, dbn, dbm](Vec2 p) {
    const double c = std::cos(p[0]), s = std::sin(p[0]);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    const double dn = dbn.at(c, s), dm = dbm.at(c, s);
    const double r = p[1], den = bn + bm * r;
    return Mat2{{{1.0 / kTwoPi, 0.0}, {r * (dm * bn - bm * dn) / (den * den), bm * bn / (den * den)}}};
  };
  return T;
}

PlanarField polar_direction_field(const PolarODE& ode) {
  return [ode](Vec2 p) { return Vec2{1.0, ode.rate(p[0], p[1])}; };
}

PlanarField abel_direction_field(const AbelEquation& abel) {
  return [abel](Vec2 p) { return Vec2{1.0, abel.S(p[0], p[1])}; };
}

// ---------------------------------------------------------------- script F

AuxFunction script_F(const RadialSystem& rs) {
  require_nonvanishing(rs.b_m, "b_m");
  const TrigPoly dbn = derivative(rs.b_n), dbm = derivative(rs.b_m);
  AuxFunction aux;
  aux.F = [rs](double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    return -std::log(std::abs(bm)) + std::log(std::abs(bn + bm * r)) - 2.0 * std::log(std::abs(r)) -
           std::log(kTwoPi);
  };
  aux.F_t = [rs, dbn, dbm](double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    const double dn = dbn.at(c, s), dm = dbm.at(c, s);
    return -dm / bm + (dn + dm * r) / (bn + bm * r);
  };
  aux.F_x = [rs](double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    return bm / (bn + bm * r) - 2.0 / r;
  };
  aux.defined = [rs](double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    return r > 0 && rs.b_n.at(c, s) + rs.b_m.at(c, s) * r != 0.0;
  };
  aux.region = "r > 0 minus the excluded curve b_n + b_m r = 0";
  return aux;
}

namespace {

// theta uniform on [0, 2pi), r log-uniform on [lo, hi], off the excluded curve.
template <class Fn>
ResidualReport sample_polar(const RadialSystem& rs, const Sampling& sampling, double lo, double hi,
                            Fn&& residual) {
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> th_dist(0.0, kTwoPi), lr_dist(std::log(lo), std::log(hi));
  ResidualReport rep;
  while (rep.samples < sampling.count) {
    const double th = th_dist(rng);
    const double r = std::exp(lr_dist(rng));
    const double c = std::cos(th), s = std::sin(th);
    const double den = rs.b_n.at(c, s) + rs.b_m.at(c, s) * r;
    if (std::abs(den) <= kSampleMargin) continue;
    record(rep, residual(th, r), {th, r});
  }
  return rep;
}

}  // namespace

ResidualReport check_identity_19(const RadialSystem& rs, const Sampling& sampling) {
  const AuxFunction aux = script_F(rs);
  const PolarODE ode(rs);
  const TrigPoly phi_num = phi_numerator(rs);
  return sample_polar(rs, sampling, 1e-2, 1e2, [&](double th, double r) {
    const PolarODE::Eval e = ode.eval(th, r);
    const double lhs = e.rate_dr + aux.F_t(th, r) + aux.F_x(th, r) * e.rate;
    const double bm = rs.b_m(th);
    const double phi = phi_num(th) / (bm * bm);
    const double rhs = -bm * phi / e.denominator;
    return relative_gap(lhs, rhs);
  });
}

ResidualReport check_identity_prop26(const RadialSystem& rs, const Sampling& sampling) {
  require_nonvanishing(rs.b_m, "b_m");
  const PolarFlow flow(rs);
  const TrigPoly phi_num = phi_numerator(rs);
  const double k = rs.polar_exponent();
  auto g = [&](double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    return (rs.p * c * c + rs.q * s * s) / (rs.b_m.at(c, s) * std::pow(r, 2.0 + k));
  };
  return sample_polar(rs, sampling, 1e-1, 1e1, [&](double th, double r) {
    const double hr = kFdStep * r, ht = kFdStep;
    const double du = (g(th, r + hr) * flow.dr_dt(th, r + hr) - g(th, r - hr) * flow.dr_dt(th, r - hr)) / (2 * hr);
    const double dv = (g(th + ht, r) * flow.dtheta_dt(th + ht, r) -
                       g(th - ht, r) * flow.dtheta_dt(th - ht, r)) / (2 * ht);
    const double bm = rs.b_m(th);
    const double rhs = -phi_num(th) / (bm * bm) / (r * r);
    return relative_gap(du + dv, rhs);
  });
}

std::vector<Vec2> cherkas_sample_points(const RadialSystem& rs, double l1, double l2,
                                        const Sampling& sampling, double gap) {
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> th_dist(0.0, kTwoPi), lr_dist(std::log(1e-1), std::log(1e1));
  std::vector<Vec2> out;
  for (std::size_t tries = 0; out.size() < sampling.count && tries < 1000 * sampling.count; ++tries) {
    const double th = th_dist(rng);
    const double r = std::exp(lr_dist(rng));
    const double c = std::cos(th), s = std::sin(th);
    const double bn = rs.b_n.at(c, s), bm = rs.b_m.at(c, s);
    const double den = bn + bm * r;
    if (std::abs(den) <= kSampleMargin) continue;
    const double rho = bm * r / den;
    if (std::min({std::abs(rho), std::abs(rho - l1), std::abs(rho - l2)}) < gap) continue;
    out.push_back({th, r});
  }
  return out;
}

// ---------------------------------------------------------- epsilon / certificate

int EpsilonSignCheck::sign_of_S() const {
  if (!uniform()) return 0;
  return sign(epsilon) * report.sign();
}

EpsilonSignCheck epsilon_sign_check(const RadialSystem& rs, const Rational& epsilon) {
  const AbelEquation abel = cherkas(rs);
  const auto& num = *abel.numerators;
  const TrigPoly e = epsilon * epsilon * num.alpha3 + epsilon * num.alpha2 + num.alpha1;
  return {epsilon, sign_analysis(e * num.denominator)};
}

EpsilonSignCheck find_uniform_epsilon(const RadialSystem& rs, int max_halvings) {
  Rational eps(1, 4);
  EpsilonSignCheck last;
  for (int i = 0; i <= max_halvings; ++i, eps /= 2) {
    for (const Rational& candidate : {eps, Rational(-eps)}) {
      last = epsilon_sign_check(rs, candidate);
      if (last.uniform()) return last;
    }
  }
  return last;
}

TwoCurveCertificate check_two_curve_certificate(const AbelEquation& abel, const Curve& l1,
                                                const Curve& l2, std::size_t grid) {
  TwoCurveCertificate cert;
  cert.ordered = cert.nonvanishing = true;
  std::vector<double> g1(grid), g2(grid), disc(grid);
  double scale = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid);
    const double a = l1.value(t), b = l2.value(t);
    const double da = l1.derivative(t), db = l2.derivative(t);
    cert.ordered = cert.ordered && a > b;
    cert.nonvanishing = cert.nonvanishing && a != 0.0 && b != 0.0;
    g1[i] = abel.S(t, a) - da;
    g2[i] = abel.S(t, b) - db;
    const double w = a * db - da * b;
    disc[i] = 4.0 * a * b * g1[i] * g2[i] + w * w;
    scale = std::max({scale, std::abs(g1[i]), std::abs(g2[i]), std::abs(disc[i])});
  }
  const double tol = 1e-10 * (1.0 + scale);
  auto one_signed = [tol](const std::vector<double>& v) {
    const bool nonneg = std::all_of(v.begin(), v.end(), [tol](double x) { return x >= -tol; });
    const bool nonpos = std::all_of(v.begin(), v.end(), [tol](double x) { return x <= tol; });
    return nonneg || nonpos;
  };
  cert.first_signed = one_signed(g1);
  cert.second_signed = one_signed(g2);
  cert.max_discriminant = *std::max_element(disc.begin(), disc.end());
  cert.discriminant_nonpositive = cert.max_discriminant <= tol;
  cert.periodic = true;
  for (const Curve* c : {&l1, &l2}) {
    const double a = c->value(0.0), b = c->value(1.0);
    cert.periodic = cert.periodic && std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
  }
  return cert;
}

}  // namespace qhcycle
