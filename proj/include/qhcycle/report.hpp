#ifndef QHCYCLE_REPORT_HPP
#define QHCYCLE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhcycle/criteria.hpp"
#include "qhcycle/dynamics.hpp"
#include "qhcycle/spec_io.hpp"

namespace qhcycle {

struct AnalysisConfig {
  ScanOptions scan;
  double quad_tol = 1e-10;
  std::uint64_t seed = 20240607;
  std::size_t samples = 200;

  /// Spec overrides first, then explicit flags on top.
  static AnalysisConfig from_spec(const SystemSpec& spec);
};

struct IdentityResult {
  std::string name;
  double threshold = 0.0;
  std::optional<ResidualReport> residual;  // empty when skipped
  std::string skipped;
  bool passed() const { return residual && residual->max_residual < threshold; }
};

struct CycleEntry {
  Cycle cycle;
  std::optional<Stability> plane;
  std::string plane_error;
};

struct AnalysisReport {
  Weight weight;
  std::vector<int> degrees;
  int n = 0, m = 0;
  RadialSystem radial;
  TrigPoly phi_numerator;
  std::vector<CriterionVerdict> criteria;
  std::vector<IdentityResult> identities;
  std::optional<EpsilonSignCheck> epsilon;
  CycleReport scan;
  std::vector<CycleEntry> cycles;
  std::vector<std::string> notes;
};

/// decompose -> radial coefficients -> criteria -> identity checks -> cycle
/// scan. Throws NotTwoComponents when the system does not split into exactly
/// two quasi-homogeneous components.
AnalysisReport analyze(const SystemSpec& spec, const AnalysisConfig& config);

nlohmann::ordered_json to_json(const AnalysisReport& report);
nlohmann::ordered_json to_json(const SignReport& report);
nlohmann::ordered_json to_json(const CriterionVerdict& verdict);

}  // namespace qhcycle

#endif
