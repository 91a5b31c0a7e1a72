#include "qhcycle/vectorfield.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qhcycle {

Weight::Weight(int p_, int q_) : p(p_), q(q_) {
  if (p < 1 || q < 1) throw std::invalid_argument("weight components must be positive integers");
}

ComponentCheck validate_component(const PolyXY& P, const PolyXY& Q, const Weight& w, int s) {
  ComponentCheck check;
  auto scan = [&](const PolyXY& poly, char field, int expected) {
    for (const auto& [mono, coef] : poly.terms()) {
      const int wd = w.p * mono.dx + w.q * mono.dy;
      if (wd != expected) check.offending.push_back({field, mono, wd, expected});
    }
  };
  scan(P, 'P', w.p + s - 1);
  scan(Q, 'Q', w.q + s - 1);
  check.valid = check.offending.empty();
  return check;
}

namespace {

std::string describe(const std::vector<OffendingMonomial>& monos) {
  std::ostringstream os;
  os << "monomials with negative implied degree:";
  for (const auto& o : monos)
    os << " " << o.field << ":x^" << o.monomial.dx << "*y^" << o.monomial.dy << " (weighted degree "
       << o.weighted_degree << ")";
  return os.str();
}

}  // namespace

InvalidWeightedDegree::InvalidWeightedDegree(std::vector<OffendingMonomial> monomials)
    : Error(describe(monomials)), monomials_(std::move(monomials)) {}

std::vector<QHComponent> decompose(const PolyXY& P, const PolyXY& Q, const Weight& w) {
  std::map<int, QHComponent> by_degree;
  std::vector<OffendingMonomial> bad;
  auto place = [&](const PolyXY& poly, char field, int shift) {
    for (const auto& [mono, coef] : poly.terms()) {
      const int wd = w.p * mono.dx + w.q * mono.dy;
      const int s = wd - shift + 1;
      if (s < 0) {
        bad.push_back({field, mono, wd, shift - 1});
        continue;
      }
      QHComponent& c = by_degree[s];
      c.degree = s;
      (field == 'P' ? c.P : c.Q).add_term(coef, mono.dx, mono.dy);
    }
  };
  place(P, 'P', w.p);
  place(Q, 'Q', w.q);
  if (!bad.empty()) throw InvalidWeightedDegree(std::move(bad));
  std::vector<QHComponent> out;
  for (auto& [s, c] : by_degree) out.push_back(std::move(c));
  return out;
}

QHSystem::QHSystem(Weight w, QHComponent a, QHComponent b) : weight_(w) {
  if (a.degree == b.degree) throw std::invalid_argument("component degrees must differ");
  if (a.degree > b.degree) std::swap(a, b);
  for (const QHComponent* c : {&a, &b}) {
    if (!validate_component(c->P, c->Q, w, c->degree).valid)
      throw std::invalid_argument("component of degree " + std::to_string(c->degree) +
                                  " is not quasi-homogeneous for the weight");
  }
  low_ = std::move(a);
  high_ = std::move(b);
}

NotTwoComponents::NotTwoComponents(std::size_t found)
    : Error("expected exactly two quasi-homogeneous components, found " + std::to_string(found)),
      found_(found) {}

QHSystem make_system(const std::vector<QHComponent>& components, const Weight& w) {
  if (components.size() != 2) throw NotTwoComponents(components.size());
  return QHSystem(w, components[0], components[1]);
}

QHSystem make_system(const PolyXY& P, const PolyXY& Q, const Weight& w) {
  return make_system(decompose(P, Q, w), w);
}

RadialSystem radial_coefficients(const QHSystem& system) {
  const Weight& w = system.weight();
  const int n = system.n(), m = system.m();
  const TrigPoly c = TrigPoly::cos_k(1), s = TrigPoly::sin_k(1);
  auto radial = [&](const QHComponent& comp, TrigPoly& a, TrigPoly& b) {
    const TrigPoly P = from_poly_on_circle(comp.P), Q = from_poly_on_circle(comp.Q);
    a = Rational(m - n) * (c * P + s * Q);
    b = Rational(w.p) * (c * Q) - Rational(w.q) * (s * P);
  };
  RadialSystem rs;
  rs.p = w.p;
  rs.q = w.q;
  rs.n = n;
  rs.m = m;
  radial(system.low(), rs.a_n, rs.b_n);
  radial(system.high(), rs.a_m, rs.b_m);

  // Sampled consistency with direct floating-point evaluation of the formula.
  for (int k = 0; k < 16; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + 0.37) / 16.0;
    const double ct = std::cos(th), st = std::sin(th);
    auto check = [&](const QHComponent& comp, const TrigPoly& a, const TrigPoly& b) {
      const double Pv = comp.P(ct, st), Qv = comp.Q(ct, st);
      const double a_ref = (m - n) * (ct * Pv + st * Qv);
      const double b_ref = w.p * ct * Qv - w.q * st * Pv;
      const double scale = 1.0 + std::abs(Pv) + std::abs(Qv);
      if (std::abs(a(th) - a_ref) > 1e-9 * (m - n) * scale ||
          std::abs(b(th) - b_ref) > 1e-9 * (w.p + w.q) * scale)
        throw std::logic_error("radial coefficients disagree with direct evaluation");
    };
    check(system.low(), rs.a_n, rs.b_n);
    check(system.high(), rs.a_m, rs.b_m);
  }
  return rs;
}

TrigPoly phi_numerator(const RadialSystem& rs) {
  return rs.a_n * rs.b_m - (derivative(rs.b_n) * rs.b_m - rs.b_n * derivative(rs.b_m));
}

}  // namespace qhcycle
