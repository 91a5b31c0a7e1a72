#include "qhcycle/criteria.hpp"

#include <cmath>

#include "qhcycle/quadrature.hpp"

namespace qhcycle {

double PhiData::phi(double theta) const {
  double b = bm(theta);
  return numerator(theta) / (b * b);
}

PhiData phi_data(const RadialSystem& rs) { return {phi_numerator(rs), rs.b_m}; }

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::Theorem1: return "Thm1";
    case CriterionId::I: return "I";
    case CriterionId::II: return "II";
    case CriterionId::III: return "III";
    case CriterionId::IV: return "IV";
    case CriterionId::Corollary1: return "Cor1";
    case CriterionId::Prop13: return "Prop13";
  }
  return "?";
}

std::string to_string(CriterionStatus status) {
  switch (status) {
    case CriterionStatus::Applies: return "Applies";
    case CriterionStatus::HypothesisFails: return "HypothesisFails";
    case CriterionStatus::NotApplicable: return "NotApplicable";
  }
  return "?";
}

namespace {

SignEvidence evidence(std::string expression, TrigPoly value) {
  SignReport report = sign_analysis(value);
  return {std::move(expression), std::move(value), std::move(report)};
}

Stability from_sign(int s) { return s > 0 ? Stability::Stable : Stability::Unstable; }

std::string stability_text(Stability s) {
  return s == Stability::Stable ? "stable" : "unstable";
}

}  // namespace

std::optional<Rational> linear_focus_parameter(const RadialSystem& rs) {
  if (rs.n != 1 || rs.p != 1 || rs.q != 1) return std::nullopt;
  if (!(rs.b_n == TrigPoly(Rational(1))) || !rs.a_n.is_constant()) return std::nullopt;
  Rational a = rs.a_n.constant() / Rational(rs.m - rs.n);
  a.canonicalize();
  return a;
}

CriterionVerdict theorem1(const RadialSystem& rs) {
  CriterionVerdict v;
  v.id = CriterionId::Theorem1;
  auto bm = evidence("b_m", rs.b_m);
  auto num = evidence("a_n*b_m - (b_n'*b_m - b_n*b_m')", phi_numerator(rs));
  bool bm_ok = bm.report.strict();
  bool num_ok = num.report.strict();
  v.signs.push_back(bm);
  v.signs.push_back(num);
  v.notes.push_back("b_m is required to be nonvanishing since Phi divides by it");
  if (!bm_ok) {
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = "b_m vanishes or is identically zero, Phi undefined";
    return v;
  }
  if (!num_ok) {
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = "Phi vanishes somewhere on [0, 2pi]";
    return v;
  }
  v.status = CriterionStatus::Applies;
  Stability s = from_sign(num.report.sign() * bm.report.sign());
  v.conclusion.max_cycles = 1;
  v.conclusion.around_origin = true;
  v.conclusion.stability = s;
  v.conclusion.text = "at most 1 limit cycle counted with multiplicity; it surrounds the origin and is " +
                      stability_text(s) + " if it exists";
  return v;
}

std::vector<CriterionVerdict> classical_criteria(const RadialSystem& rs) {
  std::vector<CriterionVerdict> out;
  TrigPoly cross = rs.a_m * rs.b_n - rs.a_n * rs.b_m;

  {
    CriterionVerdict v;
    v.id = CriterionId::I;
    v.signs.push_back(evidence("a_m*b_n - a_n*b_m", cross));
    if (v.signs.back().report.no_sign_change()) {
      v.status = CriterionStatus::Applies;
      v.conclusion.max_cycles = 1;
      v.conclusion.around_origin = true;
      v.conclusion.text = "at most 1 limit cycle; it surrounds the origin if it exists";
    } else {
      v.status = CriterionStatus::HypothesisFails;
      v.conclusion.text = "a_m*b_n - a_n*b_m changes sign or vanishes identically";
    }
    out.push_back(std::move(v));
  }
  {
    CriterionVerdict v;
    v.id = CriterionId::II;
    v.signs.push_back(evidence("b_m*(a_m*b_n - a_n*b_m)", rs.b_m * cross));
    if (v.signs.back().report.no_sign_change()) {
      v.status = CriterionStatus::Applies;
      v.conclusion.max_cycles = 2;
      v.conclusion.around_origin = true;
      v.conclusion.text = "at most 2 limit cycles surrounding the origin";
    } else {
      v.status = CriterionStatus::HypothesisFails;
      v.conclusion.text = "b_m*(a_m*b_n - a_n*b_m) changes sign or vanishes identically";
    }
    out.push_back(std::move(v));
  }

  bool structural = linear_focus_parameter(rs).has_value();
  TrigPoly third = rs.a_m * rs.b_n - Rational(2) * (rs.a_n * rs.b_m) - derivative(rs.b_m);
  {
    CriterionVerdict v;
    v.id = CriterionId::III;
    if (!structural) {
      v.status = CriterionStatus::NotApplicable;
      v.conclusion.text = "requires weight (1,1) and X_n = (a x - y, x + a y)";
    } else {
      v.signs.push_back(evidence("a_m*b_n - 2*a_n*b_m - b_m'", third));
      if (v.signs.back().report.no_sign_change()) {
        v.status = CriterionStatus::Applies;
        v.conclusion.max_cycles = 2;
        v.conclusion.around_origin = true;
        v.conclusion.text = "at most 2 limit cycles surrounding the origin";
      } else {
        v.status = CriterionStatus::HypothesisFails;
        v.conclusion.text = "a_m*b_n - 2*a_n*b_m - b_m' changes sign or vanishes identically";
      }
    }
    out.push_back(std::move(v));
  }
  {
    CriterionVerdict v;
    v.id = CriterionId::IV;
    if (!structural) {
      v.status = CriterionStatus::NotApplicable;
      v.conclusion.text = "requires weight (1,1) and X_n = (a x - y, x + a y)";
    } else {
      TrigPoly second = rs.b_m * cross;
      v.signs.push_back(evidence("a_m*b_n - 2*a_n*b_m - b_m'", third));
      v.signs.push_back(evidence("b_m*(a_m*b_n - a_n*b_m)", second));
      if (third.is_zero() || second.is_zero()) {
        v.status = CriterionStatus::Applies;
        v.conclusion.max_cycles = 1;
        v.conclusion.around_origin = true;
        v.conclusion.text = "at most 1 limit cycle surrounding the origin";
      } else {
        v.status = CriterionStatus::HypothesisFails;
        v.conclusion.text = "neither expression vanishes identically";
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

CriterionVerdict corollary1(const QHSystem& system) {
  CriterionVerdict v;
  v.id = CriterionId::Corollary1;
  v.notes.push_back("uses (m-1)*a*psi + psi' as in the statement; the proof writes (n-1)");
  RadialSystem rs = radial_coefficients(system);
  auto a = linear_focus_parameter(rs);
  if (!a) {
    v.status = CriterionStatus::NotApplicable;
    v.conclusion.text = "requires n = 1, weight (1,1) and X_1 = (a x - y, x + a y)";
    return v;
  }
  const QHComponent& high = system.high();
  TrigPoly c = TrigPoly::cos_k(1), s = TrigPoly::sin_k(1);
  TrigPoly psi = c * from_poly_on_circle(high.Q) - s * from_poly_on_circle(high.P);
  TrigPoly expr = Rational(system.m() - 1) * *a * psi + derivative(psi);
  v.signs.push_back(evidence("psi", psi));
  v.signs.push_back(evidence("(m-1)*a*psi + psi'", expr));
  const SignReport& pr = v.signs[0].report;
  const SignReport& er = v.signs[1].report;
  if (!er.strict()) {
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = "(m-1)*a*psi + psi' vanishes somewhere on [0, 2pi]";
    return v;
  }
  v.status = CriterionStatus::Applies;
  v.conclusion.max_cycles = 1;
  v.conclusion.around_origin = true;
  if (pr.strict()) {
    Stability st = from_sign(er.sign() * pr.sign());
    v.conclusion.stability = st;
    v.conclusion.text = "at most 1 limit cycle surrounding the origin; " + stability_text(st) +
                        " if it exists";
  } else {
    v.conclusion.text = "at most 1 limit cycle surrounding the origin";
  }
  return v;
}

namespace {

IntegralEvidence ratio_integral(const std::string& label, const TrigPoly& num, const TrigPoly& den,
                                double tol) {
  auto f = [&](double t) {
    double c = std::cos(t), s = std::sin(t);
    return num.at(c, s) / den.at(c, s);
  };
  QuadratureResult q;
  try {
    q = certified_quadrature(f, tol);
  } catch (const ToleranceNotMet&) {
    throw InconclusiveQuadrature("integral of " + label + " did not converge");
  }
  return {"integral of " + label + " over [0, 2pi]", q.value, q.error_bound};
}

}  // namespace

CriterionVerdict existence_prop13(const RadialSystem& rs, double quad_tol) {
  CriterionVerdict v;
  v.id = CriterionId::Prop13;
  v.signs.push_back(evidence("b_n*b_m", rs.b_n * rs.b_m));
  if (v.signs.back().report.verdict != SignVerdict::Positive) {
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = "b_n*b_m is not strictly positive";
    return v;
  }
  auto certified = [](const IntegralEvidence& e) { return std::fabs(e.value) > e.error_bound; };
  auto run = [&](double tol) {
    IntegralEvidence in = ratio_integral("a_n/b_n", rs.a_n, rs.b_n, tol);
    IntegralEvidence im = ratio_integral("a_m/b_m", rs.a_m, rs.b_m, tol);
    return std::pair{in, im};
  };
  auto [in, im] = run(quad_tol);
  if (!certified(in) || !certified(im)) {
    v.notes.push_back("quadrature retried at 1e-13");
    std::tie(in, im) = run(1e-13);
    if (!certified(in) || !certified(im))
      throw InconclusiveQuadrature("integral sign not resolved by its error bound");
  }
  v.integrals = {in, im};
  if ((in.value > 0) != (im.value > 0)) {
    v.status = CriterionStatus::Applies;
    v.conclusion.min_cycles = 1;
    v.conclusion.around_origin = true;
    v.conclusion.text = "at least 1 limit cycle surrounding the origin";
  } else {
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = "the two integrals have the same sign";
  }
  return v;
}

}  // namespace qhcycle
