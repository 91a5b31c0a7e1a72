#ifndef QHCYCLE_CRITERIA_HPP
#define QHCYCLE_CRITERIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhcycle/errors.hpp"
#include "qhcycle/stability.hpp"
#include "qhcycle/trigpoly.hpp"
#include "qhcycle/vectorfield.hpp"

namespace qhcycle {

/// Phi = a_n/b_m - (b_n/b_m)' kept as numerator / b_m^2 so every sign is exact.
struct PhiData {
  TrigPoly numerator;
  TrigPoly bm;
  double phi(double theta) const;
};

PhiData phi_data(const RadialSystem& rs);

enum class CriterionId { Theorem1, I, II, III, IV, Corollary1, Prop13 };
enum class CriterionStatus { Applies, HypothesisFails, NotApplicable };

std::string to_string(CriterionId id);
std::string to_string(CriterionStatus status);

struct Conclusion {
  std::optional<int> max_cycles;  // upper bound when the criterion applies
  std::optional<int> min_cycles;  // lower bound (existence)
  bool around_origin = false;     // the bound/existence concerns cycles surrounding the origin
  std::optional<Stability> stability;
  std::string text;
};

struct SignEvidence {
  std::string expression;
  TrigPoly value;
  SignReport report;
};

struct IntegralEvidence {
  std::string expression;
  double value = 0.0;
  double error_bound = 0.0;
};

struct CriterionVerdict {
  CriterionId id = CriterionId::Theorem1;
  CriterionStatus status = CriterionStatus::NotApplicable;
  Conclusion conclusion;
  std::vector<SignEvidence> signs;
  std::vector<IntegralEvidence> integrals;
  std::vector<std::string> notes;
};

/// Phi criterion: applies when b_m and the Phi numerator are both strictly
/// signed; at most one cycle, surrounding the origin, stable iff b_m Phi > 0.
CriterionVerdict theorem1(const RadialSystem& rs);

/// Classical criteria (I)-(IV). (III) and (IV) need weight (1,1) and
/// X_n = (a x - y, x + a y), which on the radial side is exactly n = 1,
/// b_n == 1 and a_n constant.
std::vector<CriterionVerdict> classical_criteria(const RadialSystem& rs);

/// For x' = a x - y + P_m, y' = x + a y + Q_m: with
/// psi = cos Q_m(cos, sin) - sin P_m(cos, sin), applies when
/// (m-1) a psi + psi' is strictly signed.
CriterionVerdict corollary1(const QHSystem& system);

class InconclusiveQuadrature : public Error {
 public:
  using Error::Error;
};

/// Existence: b_n b_m > 0 pointwise and the integrals of a_n/b_n and a_m/b_m
/// over [0, 2pi] have opposite (certified) signs. The quadrature runs at
/// quad_tol and is retried once at 1e-13 before InconclusiveQuadrature.
CriterionVerdict existence_prop13(const RadialSystem& rs, double quad_tol = 1e-10);

/// X_n == (a x - y, x + a y) for some rational a, read off the radial data.
std::optional<Rational> linear_focus_parameter(const RadialSystem& rs);

}  // namespace qhcycle

#endif
