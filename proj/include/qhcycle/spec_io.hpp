#ifndef QHCYCLE_SPEC_IO_HPP
#define QHCYCLE_SPEC_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qhcycle/errors.hpp"
#include "qhcycle/polyxy.hpp"
#include "qhcycle/vectorfield.hpp"

namespace qhcycle {

struct TermSpec {
  Rational coef;
  int dx = 0;
  int dy = 0;
  friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

struct AnalysisOverrides {
  std::optional<double> tol, r_min, r_max, quad_tol;
  std::optional<int> grid_points;
  bool empty() const { return !tol && !r_min && !r_max && !quad_tol && !grid_points; }
  friend bool operator==(const AnalysisOverrides&, const AnalysisOverrides&) = default;
};

/// Input document:
///   {"weight": [p, q],
///    "P": [{"coef": "num/den", "dx": i, "dy": j}, ...], "Q": [...],
///    "analysis": {"tol": .., "r_min": .., "r_max": .., "grid_points": .., "quad_tol": ..}}
struct SystemSpec {
  Weight weight;
  std::vector<TermSpec> P, Q;
  AnalysisOverrides analysis;

  PolyXY poly_P() const;
  PolyXY poly_Q() const;
  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

class SpecError : public Error {
 public:
  SpecError(std::string field, int line, const std::string& what);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

SystemSpec parse_spec(const std::string& text);
/// Throws SpecError for parse problems and std::runtime_error for I/O.
SystemSpec load_spec(const std::filesystem::path& path);
std::string serialize_spec(const SystemSpec& spec);
SystemSpec spec_from_system(const QHSystem& system);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace qhcycle

#endif
