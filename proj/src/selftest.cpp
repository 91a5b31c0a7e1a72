#include "qhcycle/selftest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qhcycle/criteria.hpp"
#include "qhcycle/dynamics.hpp"
#include "qhcycle/quadrature.hpp"
#include "qhcycle/systems.hpp"
#include "qhcycle/transforms.hpp"

namespace qhcycle {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

struct Battery {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    results.push_back({name, ok, detail});
  }

  template <class Fn>
  void guarded(const std::string& name, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  void near(const std::string& name, double got, double want, double tol, bool relative = false) {
    double gap = std::fabs(got - want);
    if (relative) gap /= std::fabs(want);
    check(name, gap <= tol, "got " + fmt(got) + ", expected " + fmt(want));
  }
};

}  // namespace

Golden default_golden() {
  Golden g;
  const PolyXY x = PolyXY::x(), y = PolyXY::y();
  const PolyXY h = 2 * x.pow(2) + y.pow(4);
  g.example1_a5 = from_poly_on_circle(h + (PolyXY(1) + x.pow(2)) * x.pow(2));
  g.example1_a6 = from_poly_on_circle(-h * (PolyXY(8) - 4 * y.pow(2) - x.pow(3)) * y);
  g.example1_b5 = from_poly_on_circle(h * x * y);
  g.example1_b6 = from_poly_on_circle(h * h);
  g.example2_a1 = TrigPoly(2);
  g.example2_a3 = TrigPoly(-2, {}, {0, 8});
  g.example2_b1 = TrigPoly(1);
  g.example2_b3 = TrigPoly(2, {0, 1}, {});
  g.example2_phi_numerator = TrigPoly(4, {0, 2}, {0, -2});
  g.example2_I1 = 4 * kPi;
  g.example2_I3 = -4 * kPi / std::sqrt(3.0);
  g.example2_cycle = 0.40556106974078915;
  return g;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const Golden& g = options.golden;
  Battery b;
  const Sampling sampling;

  b.guarded("example1_radial", [&] {
    RadialSystem rs = radial_coefficients(systems::example1());
    b.check("example1_radial", rs.a_n == g.example1_a5 && rs.a_m == g.example1_a6 &&
                                   rs.b_n == g.example1_b5 && rs.b_m == g.example1_b6);
    SignReport cross = sign_analysis(rs.a_m * rs.b_n - rs.a_n * rs.b_m);
    b.check("example1_cross_changes_sign", cross.verdict == SignVerdict::ChangesSign,
            to_string(cross.verdict));
    CriterionVerdict t1 = theorem1(rs);
    b.check("example1_theorem1", t1.status == CriterionStatus::Applies &&
                                     t1.signs[1].report.verdict == SignVerdict::Positive);
    auto classic = classical_criteria(rs);
    b.check("example1_classical", classic[0].status == CriterionStatus::HypothesisFails &&
                                      classic[1].status == CriterionStatus::HypothesisFails &&
                                      classic[2].status == CriterionStatus::NotApplicable &&
                                      classic[3].status == CriterionStatus::NotApplicable);
    ResidualReport r19 = check_identity_19(rs, sampling);
    b.check("example1_identity_19", r19.max_residual < 1e-8, fmt(r19.max_residual));
    ResidualReport r26 = check_identity_prop26(rs, sampling);
    b.check("example1_weighted_divergence", r26.max_residual < 1e-5, fmt(r26.max_residual));
  });

  b.guarded("example2", [&] {
    QHSystem sys = systems::example2();
    RadialSystem rs = radial_coefficients(sys);
    b.check("example2_radial", rs.a_n == g.example2_a1 && rs.a_m == g.example2_a3 &&
                                   rs.b_n == g.example2_b1 && rs.b_m == g.example2_b3);
    b.check("example2_phi_numerator", phi_numerator(rs) == g.example2_phi_numerator,
            phi_numerator(rs).to_string());
    CriterionVerdict t1 = theorem1(rs);
    b.check("example2_theorem1", t1.status == CriterionStatus::Applies &&
                                     t1.conclusion.stability == Stability::Stable);
    bool all_fail = true;
    for (const auto& v : classical_criteria(rs)) all_fail &= v.status == CriterionStatus::HypothesisFails;
    b.check("example2_classical_fail", all_fail);
    CriterionVerdict c1 = corollary1(sys);
    b.check("example2_corollary1", c1.status == CriterionStatus::Applies &&
                                       c1.conclusion.stability == Stability::Stable);

    AbelEquation abel = cherkas(rs);
    ResidualReport r12 = check_identity_12(abel, Curve::constant(1.0), Curve::constant(0.25), sampling);
    b.check("example2_identity_12", r12.max_residual < 1e-9, fmt(r12.max_residual));
    ResidualReport r19 = check_identity_19(rs, sampling);
    b.check("example2_identity_19", r19.max_residual < 1e-8, fmt(r19.max_residual));
    auto pts = cherkas_sample_points(rs, 1.0, 0.25, sampling);
    ResidualReport div = divergence_transfer_check(
        cherkas_map(rs), abel_aux(Curve::constant(1.0), Curve::constant(0.25)),
        polar_direction_field(PolarODE(rs)), std::nullopt, pts);
    b.check("example2_divergence_transfer", div.max_residual < 1e-5, fmt(div.max_residual));
    ResidualReport r26 = check_identity_prop26(rs, sampling);
    b.check("example2_weighted_divergence", r26.max_residual < 1e-5, fmt(r26.max_residual));
    const double r0s[] = {0.2, 0.5, 1.0};
    ResidualReport tr = check_abel_transport(rs, r0s);
    b.check("example2_abel_transport", tr.max_residual < 1e-6, fmt(tr.max_residual));

    PolarODE ode(rs);
    ReturnMap h = return_map(ode, g.example2_cycle, 1e-12);
    b.check("example2_return_map_fixed", h.ok() && std::fabs(h.value - g.example2_cycle) < 1e-9,
            "H(r*) - r* = " + fmt(h.value - g.example2_cycle));
    if (!options.quick) {
      CriterionVerdict p13 = existence_prop13(rs);
      b.check("example2_prop13", p13.status == CriterionStatus::Applies);
      if (p13.integrals.size() == 2) {
        b.near("example2_I1", p13.integrals[0].value, g.example2_I1, 1e-10);
        b.near("example2_I3", p13.integrals[1].value, g.example2_I3, 1e-8);
      }
      CycleReport cr = find_cycles(ode);
      bool one = cr.cycles.size() == 1;
      b.check("example2_cycle_count", one, std::to_string(cr.cycles.size()) + " cycles");
      if (one) {
        b.near("example2_cycle", cr.cycles[0].r0, g.example2_cycle, g.example2_cycle_tol);
        b.check("example2_cycle_stable", plane_stability(cr.cycles[0], rs) == Stability::Stable);
      }
    }
  });

  for (int k : {1, 2}) {
    const std::string tag = "unit_circle_abel_k" + std::to_string(k);
    b.guarded(tag, [&] {
      RadialSystem rs = radial_coefficients(systems::unit_circle_abel(k, 0));
      PolarODE ode(rs);
      ReturnMap h = return_map(ode, 1.0, 1e-12);
      b.near(tag + "_fixed_point", h.value, 1.0, 1e-10);
      b.near(tag + "_multiplier", h.derivative, std::exp(-2.0 * kPi * k), 1e-6, true);
      CriterionVerdict t1 = theorem1(rs);
      b.check(tag + "_theorem1", t1.status == CriterionStatus::Applies &&
                                     t1.conclusion.stability == Stability::Stable);
      ResidualReport r12 =
          check_identity_12(cherkas(rs), Curve::constant(1.0), Curve::constant(0.25), sampling);
      b.check(tag + "_identity_12", r12.max_residual < 1e-9, fmt(r12.max_residual));
      ResidualReport r19 = check_identity_19(rs, sampling);
      b.check(tag + "_identity_19", r19.max_residual < 1e-8, fmt(r19.max_residual));
      if (!options.quick) {
        CriterionVerdict p13 = existence_prop13(rs);
        b.check(tag + "_prop13", p13.status == CriterionStatus::Applies);
        CycleReport cr = find_cycles(ode, 1e-2, 1e2, 256, 1e-10);
        b.check(tag + "_cycle", cr.cycles.size() == 1 && std::fabs(cr.cycles[0].r0 - 1.0) < 1e-8,
                std::to_string(cr.cycles.size()) + " cycles");
      }
    });
  }

  for (int k : {1, 2}) {
    const std::string tag = "unit_circle_polar_k" + std::to_string(k);
    b.guarded(tag, [&] {
      RadialSystem rs = radial_coefficients(systems::unit_circle_polar(k, 0));
      bool undefined = false;
      try {
        cherkas(rs);
      } catch (const CoefficientUndefined&) {
        undefined = true;
      }
      b.check(tag + "_cherkas_undefined", undefined);
      PolarODE ode(rs);
      ReturnMap h = return_map(ode, 1.0, 1e-12);
      b.near(tag + "_fixed_point", h.value, 1.0, 1e-10);
      b.near(tag + "_multiplier", h.derivative, std::exp(-2.0 * std::sqrt(2.0) * kPi * k), 1e-6,
             true);
      ResidualReport r19 = check_identity_19(rs, sampling);
      b.check(tag + "_identity_19", r19.max_residual < 1e-8, fmt(r19.max_residual));
      ResidualReport r26 = check_identity_prop26(rs, sampling);
      b.check(tag + "_weighted_divergence", r26.max_residual < 1e-5, fmt(r26.max_residual));
      if (!options.quick) {
        CycleReport cr = find_cycles(ode, 1e-1, 1e1, 128, 1e-10);
        b.check(tag + "_cycle", cr.cycles.size() == 1 && std::fabs(cr.cycles[0].r0 - 1.0) < 1e-8,
                std::to_string(cr.cycles.size()) + " cycles");
      }
    });
  }

  if (!options.quick) {
    b.guarded("quadrature", [&] {
      QuadratureResult q = certified_quadrature(
          [](double t) { return (-2 + 8 * std::sin(2 * t)) / (2 + std::cos(2 * t)); }, 1e-10);
      b.near("quadrature_example2_I3", q.value, g.example2_I3, 1e-8);
    });
  }
  return b.results;
}

}  // namespace qhcycle
