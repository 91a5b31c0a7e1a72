#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qhcycle/orbits.hpp"
#include "qhcycle/report.hpp"
#include "qhcycle/selftest.hpp"
#include "qhcycle/spec_io.hpp"

using namespace qhcycle;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kOutOfScope = 2;

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size() || !(v > 0.0)) throw std::invalid_argument("bad radius '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty radius list");
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file_atomically(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit cycle analysis for planar systems with two quasi-homogeneous components"};
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "Run criteria, identity checks and cycle scan");
  std::string spec_path, report_path;
  std::optional<double> tol, r_min, r_max;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  analyze_cmd->add_option("spec", spec_path, "System description (JSON)")->required();
  analyze_cmd->add_option("--report", report_path, "Write the JSON report here instead of stdout");
  analyze_cmd->add_option("--tol", tol, "Cycle root tolerance");
  analyze_cmd->add_option("--r-min", r_min, "Lower end of the radius scan");
  analyze_cmd->add_option("--r-max", r_max, "Upper end of the radius scan");
  analyze_cmd->add_option("--grid", grid, "Number of scan points");
  analyze_cmd->add_option("--seed", seed, "Seed for sampled identity checks");

  auto* orbits_cmd = app.add_subcommand("orbits", "Write trajectories as CSV");
  std::string orbit_spec, r0_text, out_path;
  std::optional<int> steps_per_turn;
  orbits_cmd->add_option("spec", orbit_spec, "System description (JSON)")->required();
  orbits_cmd->add_option("--r0", r0_text, "Comma separated starting radii")->required();
  orbits_cmd->add_option("--out", out_path, "Output CSV")->required();
  orbits_cmd->add_option("--steps-per-turn", steps_per_turn, "Samples per turn")
      ->check(CLI::PositiveNumber);

  auto* self_cmd = app.add_subcommand("selftest", "Run the built-in battery");
  bool quick = false;
  self_cmd->add_flag("--quick", quick, "Skip quadrature and cycle scans");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  if (*self_cmd) {
    SelftestOptions opts;
    opts.quick = quick;
    int failed = 0;
    for (const CheckResult& r : run_selftest(opts)) {
      std::printf("%s %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.empty() ? "" : "  ", r.detail.c_str());
      failed += r.passed ? 0 : 1;
    }
    std::printf("%d check(s) failed\n", failed);
    return failed == 0 ? kOk : kFailure;
  }

  const std::string& path = *analyze_cmd ? spec_path : orbit_spec;
  SystemSpec spec;
  try {
    spec = load_spec(path);
  } catch (const SpecError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }

  try {
    if (*analyze_cmd) {
      AnalysisConfig cfg = AnalysisConfig::from_spec(spec);
      if (tol) cfg.scan.tol = *tol;
      if (r_min) cfg.scan.r_min = *r_min;
      if (r_max) cfg.scan.r_max = *r_max;
      if (grid) cfg.scan.grid_points = *grid;
      if (seed) cfg.seed = *seed;
      AnalysisReport rep = analyze(spec, cfg);
      emit(report_path, to_json(rep).dump(2) + "\n");
      return kOk;
    }
    QHSystem sys = make_system(spec.poly_P(), spec.poly_Q(), spec.weight);
    auto blocks = compute_orbits(radial_coefficients(sys), parse_radii(r0_text), steps_per_turn);
    emit(out_path, orbits_csv(blocks));
    return kOk;
  } catch (const NotTwoComponents& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return kOutOfScope;
  } catch (const InvalidWeightedDegree& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return kOutOfScope;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
