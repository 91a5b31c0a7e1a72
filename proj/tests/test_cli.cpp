#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhcycle/orbits.hpp"
#include "qhcycle/report.hpp"
#include "qhcycle/selftest.hpp"
#include "qhcycle/spec_io.hpp"
#include "qhcycle/systems.hpp"

using namespace qhcycle;
namespace fs = std::filesystem;

namespace {

const std::string kSpecs = QHCYCLE_SPEC_DIR;
const std::string kCli = QHCYCLE_CLI;
const fs::path kTmp = QHCYCLE_TMP_DIR;

int run(const std::string& args) {
  std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spec_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("spec parsing") {
  SystemSpec s = load_spec(kSpecs + "/example2.json");
  CHECK(s.weight == Weight(1, 1));
  QHSystem sys = make_system(s.poly_P(), s.poly_Q(), s.weight);
  CHECK(sys.P() == systems::example2().P());
  CHECK(sys.Q() == systems::example2().Q());

  SystemSpec p = load_spec(kSpecs + "/unit_circle_polar.json");
  CHECK(p.analysis.grid_points == 128);
  CHECK(p.analysis.r_min == 0.1);
}

TEST_CASE("spec errors name the field and line") {
  std::string unknown = "{\n  \"weight\": [1, 1],\n  \"P\": [],\n  \"Q\": [],\n  \"colour\": 3\n}";
  try {
    parse_spec(unknown);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.field() == "/colour");
    CHECK(e.line() == 5);
  }

  std::string decimal =
      "{\"weight\": [1, 1],\n \"P\": [{\"coef\": \"0.5\", \"dx\": 1, \"dy\": 0}],\n \"Q\": []}";
  try {
    parse_spec(decimal);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.field() == "/P/0/coef");
    CHECK(e.line() == 2);
  }

  CHECK(spec_error("{\"weight\": [1, 1], \"P\": [{\"coef\": 0.5, \"dx\": 1, \"dy\": 0}], \"Q\": []}")
            .find("/P/0/coef") != std::string::npos);
  CHECK(spec_error("{\"weight\": [1, 1], \"P\": [{\"coef\": \"1\", \"dx\": 1, \"dy\": 0, \"w\": 1}], \"Q\": []}")
            .find("/P/0/w") != std::string::npos);
  CHECK(spec_error("{\"weight\": [0, 1], \"P\": [], \"Q\": []}").find("/weight/0") != std::string::npos);
  CHECK(spec_error("{\"weight\": [1, 1], \"P\": []}").find("\"Q\"") != std::string::npos);
  CHECK(spec_error("{\"weight\": [1, 1], \"P\": [{\"coef\": \"1\", \"dx\": -1, \"dy\": 0}], \"Q\": []}")
            .find("/P/0/dx") != std::string::npos);
  CHECK(spec_error("{\"weight\": [1, 1],\n\"P\": [,\n\"Q\": []}").find("line 2") != std::string::npos);
  CHECK(spec_error("{\"weight\": [1, 1], \"P\": [], \"Q\": [], \"analysis\": {\"speed\": 1}}")
            .find("/analysis/speed") != std::string::npos);
}

TEST_CASE("spec round trip") {
  for (const char* name : {"example1", "example2", "unit_circle_abel", "unit_circle_polar"}) {
    SystemSpec s = load_spec(kSpecs + "/" + name + ".json");
    SystemSpec again = parse_spec(serialize_spec(s));
    CHECK(again == s);
    CHECK(serialize_spec(again) == serialize_spec(s));
  }
  SystemSpec fromsys = spec_from_system(systems::example1());
  CHECK(parse_spec(serialize_spec(fromsys)) == fromsys);
}

TEST_CASE("analysis report") {
  SystemSpec s = load_spec(kSpecs + "/example2.json");
  AnalysisConfig cfg = AnalysisConfig::from_spec(s);
  AnalysisReport rep = analyze(s, cfg);
  CHECK(rep.n == 1);
  CHECK(rep.m == 3);
  REQUIRE(rep.criteria.size() == 7);
  CHECK(rep.criteria[0].id == CriterionId::Theorem1);
  CHECK(rep.criteria[0].status == CriterionStatus::Applies);
  for (int i = 1; i <= 4; ++i) CHECK(rep.criteria[static_cast<std::size_t>(i)].status == CriterionStatus::HypothesisFails);
  CHECK(rep.criteria[6].status == CriterionStatus::Applies);
  REQUIRE(rep.cycles.size() == 1);
  CHECK(rep.cycles[0].plane == Stability::Stable);
  for (const auto& id : rep.identities) CHECK_MESSAGE(id.passed(), id.name);

  std::string first = to_json(rep).dump(2);
  std::string second = to_json(analyze(s, cfg)).dump(2);
  CHECK(first == second);

  auto j = to_json(rep);
  CHECK(j["radial"]["b_m"] == "2 + cos(2t)");
  CHECK(j["criteria"][0]["conclusion"]["stability"] == "Stable");

  AnalysisConfig other = cfg;
  other.seed = 99;
  AnalysisReport rep2 = analyze(s, other);
  CHECK(rep2.identities[1].residual->worst != rep.identities[1].residual->worst);
}

TEST_CASE("analyze exit codes") {
  fs::path out = kTmp / "cli_example2.json";
  CHECK(run("analyze \"" + kSpecs + "/example2.json\" --report \"" + out.string() + "\"") == 0);
  CHECK(fs::exists(out));
  CHECK(slurp(out).find("\"Thm1\"") != std::string::npos);
  fs::path out2 = kTmp / "cli_example2_again.json";
  CHECK(run("analyze \"" + kSpecs + "/example2.json\" --report \"" + out2.string() + "\"") == 0);
  CHECK(slurp(out) == slurp(out2));

  CHECK(run("analyze \"" + kSpecs + "/three_components.json\"") == 2);
  CHECK(run("analyze \"" + kSpecs + "/missing.json\"") == 1);
  fs::path bad = kTmp / "bad_spec.json";
  std::ofstream(bad) << "{\"weight\": [1, 1], \"P\": [], \"Q\": [], \"extra\": 1}";
  CHECK(run("analyze \"" + bad.string() + "\"") == 1);
  CHECK(run("analyze \"" + kSpecs + "/example1.json\" --grid 16 --report \"" +
            (kTmp / "cli_example1.json").string() + "\"") == 0);
}

TEST_CASE("orbits") {
  RadialSystem abel_sys = radial_coefficients(systems::unit_circle_abel(1, 0));
  auto blocks = compute_orbits(abel_sys, {1.0}, 64);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].size() == 65);
  for (const auto& row : blocks[0]) {
    CHECK(std::fabs(row.x * row.x + row.y * row.y - 1.0) < 1e-8);
    CHECK(row.status == "ok");
  }
  auto three = compute_orbits(abel_sys, {0.5, 1.0, 2.0}, std::nullopt);
  CHECK(three.size() == 3);
  std::string csv = orbits_csv(three);
  CHECK(csv.rfind("theta,r,x,y,status\n", 0) == 0);
  std::size_t blanks = 0;
  for (std::size_t i = 1; i < csv.size(); ++i) blanks += csv[i] == '\n' && csv[i - 1] == '\n';
  CHECK(blanks == 2);

  RadialSystem e1 = radial_coefficients(systems::example1());
  auto cut = compute_orbits(e1, {1.0}, 32);
  REQUIRE(cut[0].size() >= 1);
  CHECK(cut[0].back().status == "LeftDomain");
  CHECK(cut[0].back().theta < 2 * 3.14159);

  fs::path out = kTmp / "orbits.csv";
  CHECK(run("orbits \"" + kSpecs + "/unit_circle_abel.json\" --r0 0.5,1.0,2.0 --out \"" +
            out.string() + "\" --steps-per-turn 32") == 0);
  std::string file = slurp(out);
  CHECK(std::count(file.begin(), file.end(), '\n') == 1 + 3 * 33 + 2);
  CHECK(run("orbits \"" + kSpecs + "/unit_circle_abel.json\" --r0 -1 --out \"" + out.string() + "\"") == 1);
}

TEST_CASE("selftest") {
  SelftestOptions quick;
  quick.quick = true;
  auto q = run_selftest(quick);
  for (const auto& r : q) CHECK_MESSAGE(r.passed, r.name);
  bool has_scan = false;
  for (const auto& r : q) has_scan |= r.name == "example2_cycle_count" || r.name == "example2_prop13";
  CHECK_FALSE(has_scan);

  SelftestOptions corrupt;
  corrupt.quick = true;
  corrupt.golden.example2_b3 = TrigPoly(2, {0, 2}, {});
  auto c = run_selftest(corrupt);
  bool named = false;
  for (const auto& r : c) named |= r.name == "example2_radial" && !r.passed;
  CHECK(named);

  SelftestOptions full;
  full.golden.example2_cycle = 0.41;
  auto f = run_selftest(full);
  bool cycle_failed = false;
  for (const auto& r : f) cycle_failed |= r.name == "example2_cycle" && !r.passed;
  CHECK(cycle_failed);

  CHECK(run("selftest --quick") == 0);
}
