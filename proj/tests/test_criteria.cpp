#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qhcycle/criteria.hpp"
#include "qhcycle/systems.hpp"

using namespace qhcycle;

namespace {

constexpr double kPi = std::numbers::pi;
const PolyXY X = PolyXY::x();
const PolyXY Y = PolyXY::y();

const CriterionVerdict& find(const std::vector<CriterionVerdict>& v, CriterionId id) {
  for (const auto& c : v)
    if (c.id == id) return c;
  throw std::logic_error("missing verdict");
}

// x' = a x - y + P_3, y' = x + a y + Q_3 with random cubic (P_3, Q_3).
QHSystem random_focus_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), d(1, 3);
  auto draw = [&] {
    int num = c(rng);
    int den = d(rng);
    return Rational(num, den);
  };
  Rational a = draw();
  PolyXY P = a * X - Y, Q = X + a * Y;
  for (int i = 0; i <= 3; ++i) {
    Rational cp = draw();
    Rational cq = draw();
    P.add_term(cp, i, 3 - i);
    Q.add_term(cq, i, 3 - i);
  }
  PolyXY r2 = X * X + Y * Y;
  Rational spin = draw();
  P -= spin * Y * r2;
  Q += spin * X * r2;
  return make_system(P, Q, Weight(1, 1));
}

}  // namespace

TEST_CASE("Phi numerator against finite differences") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (QHSystem s : {systems::example1(), systems::example2(), systems::random_system(rng)}) {
    RadialSystem rs = radial_coefficients(s);
    PhiData pd = phi_data(rs);
    for (int i = 0; i < 100; ++i) {
      double t = ang(rng), h = 1e-5;
      double bm = rs.b_m(t);
      if (std::fabs(bm) < 1e-3) continue;
      auto ratio = [&](double u) { return rs.b_n(u) / rs.b_m(u); };
      double phi_fd = rs.a_n(t) / bm - (ratio(t + h) - ratio(t - h)) / (2 * h);
      double num_fd = phi_fd * bm * bm;
      double num = pd.numerator(t);
      CHECK(std::fabs(num - num_fd) <= 1e-8 * std::max(1.0, std::fabs(num)));
      CHECK(pd.phi(t) == doctest::Approx(phi_fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("theorem 1") {
  CriterionVerdict e1 = theorem1(radial_coefficients(systems::example1()));
  CHECK(e1.status == CriterionStatus::Applies);
  CHECK(e1.signs[1].report.verdict == SignVerdict::Positive);
  CHECK(e1.conclusion.max_cycles == 1);

  RadialSystem rs2 = radial_coefficients(systems::example2());
  CriterionVerdict e2 = theorem1(rs2);
  CHECK(e2.status == CriterionStatus::Applies);
  CHECK(e2.signs[1].value == TrigPoly(4, {0, 2}, {0, -2}));
  CHECK(e2.conclusion.stability == Stability::Stable);
  CHECK(e2.conclusion.around_origin);

  for (int k = 1; k <= 3; ++k) {
    RadialSystem rs = radial_coefficients(systems::unit_circle_abel(k, 0));
    CHECK(phi_numerator(rs) == TrigPoly(2 * k));
    CriterionVerdict v = theorem1(rs);
    CHECK(v.status == CriterionStatus::Applies);
    CHECK(v.conclusion.stability == Stability::Stable);
  }

  PolyXY r2 = X * X + Y * Y;
  QHSystem radial_cubic = make_system(X - Y + X * r2, X + Y + Y * r2, Weight(1, 1));
  CriterionVerdict gated = theorem1(radial_coefficients(radial_cubic));
  CHECK(gated.status == CriterionStatus::HypothesisFails);

  CriterionVerdict zero = theorem1(radial_coefficients(systems::phi_zero()));
  CHECK(zero.status == CriterionStatus::HypothesisFails);
}

TEST_CASE("classical criteria") {
  auto e2 = classical_criteria(radial_coefficients(systems::example2()));
  REQUIRE(e2.size() == 4);
  for (const auto& v : e2) CHECK(v.status == CriterionStatus::HypothesisFails);
  CHECK(find(e2, CriterionId::I).signs[0].report.verdict == SignVerdict::ChangesSign);
  CHECK(find(e2, CriterionId::III).signs[0].value == TrigPoly(-10, {0, -4}, {0, 10}));

  auto e1 = classical_criteria(radial_coefficients(systems::example1()));
  CHECK(find(e1, CriterionId::I).status == CriterionStatus::HypothesisFails);
  CHECK(find(e1, CriterionId::II).status == CriterionStatus::HypothesisFails);
  CHECK(find(e1, CriterionId::III).status == CriterionStatus::NotApplicable);
  CHECK(find(e1, CriterionId::IV).status == CriterionStatus::NotApplicable);

  auto abel_sys = classical_criteria(radial_coefficients(systems::unit_circle_abel(1, 0)));
  CHECK(find(abel_sys, CriterionId::I).signs[0].value == TrigPoly(-4));
  CHECK(find(abel_sys, CriterionId::I).status == CriterionStatus::Applies);
  CHECK(find(abel_sys, CriterionId::I).conclusion.max_cycles == 1);

  // a_m b_n - 2 a_n b_m - b_m' == 0: X_1 = (-y, x), X_3 = (0, 0) + rotation
  RadialSystem rz = radial_coefficients(systems::phi_zero());
  auto z = classical_criteria(rz);
  CHECK(find(z, CriterionId::IV).status == CriterionStatus::Applies);
  CHECK(find(z, CriterionId::IV).conclusion.max_cycles == 1);
}

TEST_CASE("corollary 1") {
  CriterionVerdict e2 = corollary1(systems::example2());
  CHECK(e2.status == CriterionStatus::Applies);
  CHECK(e2.signs[0].value == TrigPoly(2, {0, 1}, {}));
  CHECK(e2.signs[1].value == TrigPoly(4, {0, 2}, {0, -2}));
  CHECK(e2.conclusion.stability == Stability::Stable);
  CHECK(e2.notes.size() == 1);

  CHECK(corollary1(systems::example1()).status == CriterionStatus::NotApplicable);

  PolyXY r2 = X * X + Y * Y;
  QHSystem radial = make_system(X - Y + X * r2, X + Y + Y * r2, Weight(1, 1));
  CriterionVerdict z = corollary1(radial);
  CHECK(z.status == CriterionStatus::HypothesisFails);
  CHECK(z.signs[1].report.verdict == SignVerdict::IdenticallyZero);
}

TEST_CASE("corollary and theorem agree") {
  std::mt19937_64 rng(31);
  int both = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QHSystem s = random_focus_system(rng);
    RadialSystem rs = radial_coefficients(s);
    CriterionVerdict t = theorem1(rs), c = corollary1(s);
    REQUIRE(c.status != CriterionStatus::NotApplicable);
    if (t.status == CriterionStatus::Applies && c.status == CriterionStatus::Applies) {
      ++both;
      CHECK(t.conclusion.max_cycles == c.conclusion.max_cycles);
      CHECK(t.conclusion.stability == c.conclusion.stability);
    }
  }
  CHECK(both > 10);
}

TEST_CASE("existence") {
  CriterionVerdict e2 = existence_prop13(radial_coefficients(systems::example2()));
  CHECK(e2.status == CriterionStatus::Applies);
  REQUIRE(e2.integrals.size() == 2);
  CHECK(std::fabs(e2.integrals[0].value - 4 * kPi) < 1e-10);
  CHECK(std::fabs(e2.integrals[1].value - (-4 * kPi / std::sqrt(3.0))) < 1e-8);
  CHECK(e2.conclusion.min_cycles == 1);

  CriterionVerdict abel_sys = existence_prop13(radial_coefficients(systems::unit_circle_abel(1, 0)));
  CHECK(abel_sys.status == CriterionStatus::Applies);
  CHECK(abel_sys.integrals[0].value == doctest::Approx(4 * kPi));
  CHECK(abel_sys.integrals[1].value == doctest::Approx(-4 * kPi));

  CriterionVerdict polar_sys = existence_prop13(radial_coefficients(systems::unit_circle_polar(1, 0)));
  CHECK(polar_sys.status == CriterionStatus::HypothesisFails);
  CHECK(polar_sys.signs[0].report.verdict == SignVerdict::NonNegativeWithZeros);
}

TEST_CASE("existence needs a resolvable integral sign") {
  // a_n / b_n integrates to exactly zero: no tolerance can certify its sign
  RadialSystem rs = radial_coefficients(systems::unit_circle_abel(1, 0));
  rs.a_n = TrigPoly::sin_k(1);
  CHECK_THROWS_AS(existence_prop13(rs), InconclusiveQuadrature);
}
