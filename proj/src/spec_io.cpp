#include "qhcycle/spec_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qhcycle {

using nlohmann::json;
using nlohmann::ordered_json;

SpecError::SpecError(std::string field, int line, const std::string& what)
    : Error((field.empty() ? std::string("document") : "field " + field) +
            (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + what),
      field_(std::move(field)),
      line_(line) {}

namespace {

// Maps JSON pointers to the line where their value starts. Only run on text
// that already parsed.
class LineLocator {
 public:
  explicit LineLocator(const std::string& text) : s_(text) {
    skip_ws();
    value("");
  }
  int line_of(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string string_token() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') out += s_[i_++];
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }
  void value(const std::string& path) {
    lines_.emplace(path, line_);
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (c == '{') {
      ++i_;
      skip_ws();
      while (i_ < s_.size() && s_[i_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++i_;  // ':'
        skip_ws();
        value(path + "/" + escape(key));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
        skip_ws();
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      skip_ws();
      for (int k = 0; i_ < s_.size() && s_[i_] != ']'; ++k) {
        value(path + "/" + std::to_string(k));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
        skip_ws();
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
             s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
        ++i_;
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : locator_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw SpecError(pointer, locator_.line_of(pointer), what);
  }

  void only_keys(const json& obj, const std::string& pointer, const std::set<std::string>& allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.contains(it.key())) fail(pointer + "/" + it.key(), "unknown field");
  }

  const json& require(const json& obj, const std::string& pointer, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer, "missing field \"" + key + "\"");
    return *it;
  }

  int integer(const json& v, const std::string& pointer, int min) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    auto x = v.get<long long>();
    if (x < min || x > 1000000) fail(pointer, "integer out of range");
    return static_cast<int>(x);
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    double x = v.get<double>();
    if (!(x > 0.0)) fail(pointer, "expected a positive number");
    return x;
  }

  std::vector<TermSpec> terms(const json& v, const std::string& pointer) const {
    if (!v.is_array()) fail(pointer, "expected an array of monomials");
    std::vector<TermSpec> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::string ptr = pointer + "/" + std::to_string(k);
      const json& t = v[k];
      if (!t.is_object()) fail(ptr, "expected an object {coef, dx, dy}");
      only_keys(t, ptr, {"coef", "dx", "dy"});
      const json& coef = require(t, ptr, "coef");
      if (!coef.is_string())
        fail(ptr + "/coef", "coefficient must be a string \"num\" or \"num/den\"");
      TermSpec term;
      try {
        term.coef = parse_rational(coef.get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(ptr + "/coef", e.what());
      }
      term.dx = integer(require(t, ptr, "dx"), ptr + "/dx", 0);
      term.dy = integer(require(t, ptr, "dy"), ptr + "/dy", 0);
      out.push_back(term);
    }
    return out;
  }

 private:
  LineLocator locator_;
};

int line_at_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace

PolyXY SystemSpec::poly_P() const {
  PolyXY p;
  for (const auto& t : P) p.add_term(t.coef, t.dx, t.dy);
  return p;
}

PolyXY SystemSpec::poly_Q() const {
  PolyXY q;
  for (const auto& t : Q) q.add_term(t.coef, t.dx, t.dy);
  return q;
}

SystemSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("", line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
  }
  Reader rd(text);
  if (!doc.is_object()) rd.fail("", "top level must be an object");
  rd.only_keys(doc, "", {"weight", "P", "Q", "analysis"});

  SystemSpec spec;
  const json& w = rd.require(doc, "", "weight");
  if (!w.is_array() || w.size() != 2) rd.fail("/weight", "expected [p, q]");
  spec.weight = Weight(rd.integer(w[0], "/weight/0", 1), rd.integer(w[1], "/weight/1", 1));
  spec.P = rd.terms(rd.require(doc, "", "P"), "/P");
  spec.Q = rd.terms(rd.require(doc, "", "Q"), "/Q");

  if (auto it = doc.find("analysis"); it != doc.end()) {
    const json& a = *it;
    if (!a.is_object()) rd.fail("/analysis", "expected an object");
    rd.only_keys(a, "/analysis", {"tol", "r_min", "r_max", "grid_points", "quad_tol"});
    auto& o = spec.analysis;
    if (a.contains("tol")) o.tol = rd.number(a["tol"], "/analysis/tol");
    if (a.contains("r_min")) o.r_min = rd.number(a["r_min"], "/analysis/r_min");
    if (a.contains("r_max")) o.r_max = rd.number(a["r_max"], "/analysis/r_max");
    if (a.contains("quad_tol")) o.quad_tol = rd.number(a["quad_tol"], "/analysis/quad_tol");
    if (a.contains("grid_points"))
      o.grid_points = rd.integer(a["grid_points"], "/analysis/grid_points", 2);
  }
  return spec;
}

SystemSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string serialize_spec(const SystemSpec& spec) {
  ordered_json doc;
  doc["weight"] = {spec.weight.p, spec.weight.q};
  auto terms = [](const std::vector<TermSpec>& ts) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts) {
      ordered_json o;
      o["coef"] = to_string(t.coef);
      o["dx"] = t.dx;
      o["dy"] = t.dy;
      arr.push_back(o);
    }
    return arr;
  };
  doc["P"] = terms(spec.P);
  doc["Q"] = terms(spec.Q);
  const auto& a = spec.analysis;
  if (!a.empty()) {
    ordered_json o = ordered_json::object();
    if (a.tol) o["tol"] = *a.tol;
    if (a.r_min) o["r_min"] = *a.r_min;
    if (a.r_max) o["r_max"] = *a.r_max;
    if (a.grid_points) o["grid_points"] = *a.grid_points;
    if (a.quad_tol) o["quad_tol"] = *a.quad_tol;
    doc["analysis"] = o;
  }
  return doc.dump(2) + "\n";
}

SystemSpec spec_from_system(const QHSystem& system) {
  SystemSpec spec;
  spec.weight = system.weight();
  auto terms = [](const PolyXY& p) {
    std::vector<TermSpec> out;
    for (const auto& [mono, coef] : p.terms()) out.push_back({coef, mono.dx, mono.dy});
    return out;
  };
  spec.P = terms(system.P());
  spec.Q = terms(system.Q());
  return spec;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace qhcycle
