#include "qhcycle/report.hpp"

#include "qhcycle/transforms.hpp"

namespace qhcycle {

using nlohmann::ordered_json;

AnalysisConfig AnalysisConfig::from_spec(const SystemSpec& spec) {
  AnalysisConfig c;
  const auto& a = spec.analysis;
  if (a.tol) c.scan.tol = *a.tol;
  if (a.r_min) c.scan.r_min = *a.r_min;
  if (a.r_max) c.scan.r_max = *a.r_max;
  if (a.grid_points) c.scan.grid_points = *a.grid_points;
  if (a.quad_tol) c.quad_tol = *a.quad_tol;
  return c;
}

namespace {

IdentityResult run_identity(const std::string& name, double threshold,
                            const std::function<ResidualReport()>& fn) {
  IdentityResult out{name, threshold, std::nullopt, {}};
  try {
    out.residual = fn();
  } catch (const Error& e) {
    out.skipped = e.what();
  }
  return out;
}

}  // namespace

AnalysisReport analyze(const SystemSpec& spec, const AnalysisConfig& config) {
  AnalysisReport rep;
  rep.weight = spec.weight;
  std::vector<QHComponent> comps = decompose(spec.poly_P(), spec.poly_Q(), spec.weight);
  for (const auto& c : comps) rep.degrees.push_back(c.degree);
  QHSystem system = make_system(comps, spec.weight);
  rep.n = system.n();
  rep.m = system.m();
  rep.radial = radial_coefficients(system);
  rep.phi_numerator = phi_numerator(rep.radial);
  const RadialSystem& rs = rep.radial;

  rep.criteria.push_back(theorem1(rs));
  for (auto& v : classical_criteria(rs)) rep.criteria.push_back(std::move(v));
  rep.criteria.push_back(corollary1(system));
  try {
    rep.criteria.push_back(existence_prop13(rs, config.quad_tol));
  } catch (const InconclusiveQuadrature& e) {
    CriterionVerdict v;
    v.id = CriterionId::Prop13;
    v.status = CriterionStatus::HypothesisFails;
    v.conclusion.text = std::string("inconclusive quadrature: ") + e.what();
    rep.criteria.push_back(std::move(v));
  }

  const Sampling sampling{config.samples, config.seed};
  const Curve l1 = Curve::constant(1.0), l2 = Curve::constant(0.25);
  rep.identities.push_back(run_identity("abel_aux_identity", 1e-9, [&] {
    return check_identity_12(cherkas(rs), l1, l2, sampling);
  }));
  rep.identities.push_back(run_identity("script_F_identity", 1e-8, [&] {
    return check_identity_19(rs, sampling);
  }));
  rep.identities.push_back(run_identity("divergence_transfer", 1e-5, [&] {
    AbelEquation abel = cherkas(rs);
    auto points = cherkas_sample_points(rs, 1.0, 0.25, sampling);
    return divergence_transfer_check(cherkas_map(rs), abel_aux(l1, l2),
                                     polar_direction_field(PolarODE(rs)), std::nullopt, points);
  }));
  rep.identities.push_back(run_identity("weighted_divergence", 1e-5, [&] {
    return check_identity_prop26(rs, sampling);
  }));
  rep.identities.push_back(run_identity("abel_transport", 1e-6, [&] {
    const double r0s[] = {0.5, 1.0, 2.0};
    return check_abel_transport(rs, r0s, config.scan.tol);
  }));

  try {
    cherkas(rs);
    rep.epsilon = find_uniform_epsilon(rs);
  } catch (const CoefficientUndefined&) {
  }

  PolarODE ode(rs);
  rep.scan = find_cycles(ode, config.scan);
  for (const Cycle& c : rep.scan.cycles) {
    CycleEntry e{c, std::nullopt, {}};
    try {
      e.plane = plane_stability(c, rs, config.scan.tol);
    } catch (const Error& err) {
      e.plane_error = err.what();
    }
    rep.cycles.push_back(e);
  }

  rep.notes.push_back("cycle multiplicity is not resolved numerically; see multiplier and NearDegenerate");
  rep.notes.push_back("Thm1 is evaluated only when b_m has no zeros");
  if (rep.epsilon && !rep.epsilon->uniform())
    rep.notes.push_back("no constant curve eps = +-2^-k gave a uniform sign of S(tau, eps)");
  return rep;
}

ordered_json to_json(const SignReport& r) {
  ordered_json o;
  o["verdict"] = to_string(r.verdict);
  ordered_json zeros = ordered_json::array();
  for (const ZeroPoint& z : r.zero_points) {
    ordered_json zj;
    zj["theta"] = z.theta();
    if (z.at_pi) {
      zj["exact"] = "pi";
    } else {
      zj["t_interval"] = {to_string(z.t_lo), to_string(z.t_hi)};
    }
    zeros.push_back(zj);
  }
  o["zeros"] = zeros;
  ordered_json wit = ordered_json::array();
  for (const SignWitness& w : r.witnesses) {
    ordered_json wj;
    wj["theta"] = w.theta;
    wj["t"] = w.t ? to_string(*w.t) : std::string("inf");
    wj["sign"] = w.sign;
    wit.push_back(wj);
  }
  o["witnesses"] = wit;
  return o;
}

ordered_json to_json(const CriterionVerdict& v) {
  ordered_json o;
  o["id"] = to_string(v.id);
  o["status"] = to_string(v.status);
  ordered_json c;
  c["text"] = v.conclusion.text;
  if (v.conclusion.max_cycles) c["max_cycles"] = *v.conclusion.max_cycles;
  if (v.conclusion.min_cycles) c["min_cycles"] = *v.conclusion.min_cycles;
  c["around_origin"] = v.conclusion.around_origin;
  if (v.conclusion.stability) c["stability"] = to_string(*v.conclusion.stability);
  o["conclusion"] = c;
  ordered_json signs = ordered_json::array();
  for (const SignEvidence& s : v.signs) {
    ordered_json sj;
    sj["expression"] = s.expression;
    sj["value"] = s.value.to_string();
    sj["report"] = to_json(s.report);
    signs.push_back(sj);
  }
  o["signs"] = signs;
  ordered_json ints = ordered_json::array();
  for (const IntegralEvidence& e : v.integrals) {
    ordered_json ij;
    ij["expression"] = e.expression;
    ij["value"] = e.value;
    ij["error_bound"] = e.error_bound;
    ints.push_back(ij);
  }
  o["integrals"] = ints;
  o["notes"] = v.notes;
  return o;
}

ordered_json to_json(const AnalysisReport& rep) {
  ordered_json o;
  ordered_json dec;
  dec["weight"] = {rep.weight.p, rep.weight.q};
  dec["degrees"] = rep.degrees;
  dec["n"] = rep.n;
  dec["m"] = rep.m;
  dec["valid"] = true;
  o["decomposition"] = dec;

  ordered_json rad;
  rad["a_n"] = rep.radial.a_n.to_string();
  rad["a_m"] = rep.radial.a_m.to_string();
  rad["b_n"] = rep.radial.b_n.to_string();
  rad["b_m"] = rep.radial.b_m.to_string();
  rad["phi_numerator"] = rep.phi_numerator.to_string();
  o["radial"] = rad;

  ordered_json crit = ordered_json::array();
  for (const auto& v : rep.criteria) crit.push_back(to_json(v));
  o["criteria"] = crit;

  ordered_json ids = ordered_json::array();
  for (const auto& id : rep.identities) {
    ordered_json ij;
    ij["name"] = id.name;
    ij["threshold"] = id.threshold;
    if (id.residual) {
      ij["max_residual"] = id.residual->max_residual;
      ij["samples"] = id.residual->samples;
      ij["worst"] = {id.residual->worst[0], id.residual->worst[1]};
      ij["passed"] = id.passed();
    } else {
      ij["skipped"] = id.skipped;
    }
    ids.push_back(ij);
  }
  o["identities"] = ids;

  if (rep.epsilon) {
    ordered_json e;
    e["epsilon"] = to_string(rep.epsilon->epsilon);
    e["uniform"] = rep.epsilon->uniform();
    if (rep.epsilon->uniform()) e["sign_of_S"] = rep.epsilon->sign_of_S();
    e["report"] = to_json(rep.epsilon->report);
    o["abel_epsilon_curve"] = e;
  }

  ordered_json cyc;
  cyc["r_min"] = rep.scan.r_min;
  cyc["r_max"] = rep.scan.r_max;
  cyc["grid_points"] = rep.scan.grid_points;
  cyc["skipped_grid_points"] = rep.scan.skipped;
  cyc["tol"] = rep.scan.tol;
  ordered_json list = ordered_json::array();
  for (const auto& e : rep.cycles) {
    ordered_json cj;
    cj["r0"] = e.cycle.r0;
    cj["multiplier"] = e.cycle.multiplier;
    cj["stability"] = to_string(e.cycle.stability);
    cj["residual"] = e.cycle.residual;
    if (e.plane) cj["plane_stability"] = to_string(*e.plane);
    else cj["plane_stability_error"] = e.plane_error;
    list.push_back(cj);
  }
  cyc["cycles"] = list;
  o["cycles"] = cyc;
  o["notes"] = rep.notes;
  return o;
}

}  // namespace qhcycle
