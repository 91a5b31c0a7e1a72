#include "qhcycle/polyxy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qhcycle {

PolyXY::PolyXY(Rational constant) { add_term(constant, 0, 0); }

PolyXY PolyXY::x() { return monomial(1, 1, 0); }
PolyXY PolyXY::y() { return monomial(1, 0, 1); }

PolyXY PolyXY::monomial(const Rational& coef, int dx, int dy) {
  PolyXY p;
  p.add_term(coef, dx, dy);
  return p;
}

Rational PolyXY::coefficient(int dx, int dy) const {
  const auto it = terms_.find({dx, dy});
  return it == terms_.end() ? Rational(0) : it->second;
}

int PolyXY::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.dx + m.dy);
  return d;
}

void PolyXY::add_term(const Rational& coef, int dx, int dy) {
  if (dx < 0 || dy < 0) throw std::invalid_argument("negative exponent in monomial");
  Rational c = coef;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({dx, dy}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

double PolyXY::operator()(double x, double y) const {
  double acc = 0.0;
  for (const auto& [m, c] : terms_) acc += c.get_d() * std::pow(x, m.dx) * std::pow(y, m.dy);
  return acc;
}

PolyXY PolyXY::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of polynomial");
  PolyXY out(1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

PolyXY& PolyXY::operator+=(const PolyXY& other) {
  for (const auto& [m, c] : other.terms_) add_term(c, m.dx, m.dy);
  return *this;
}

PolyXY& PolyXY::operator-=(const PolyXY& other) {
  for (const auto& [m, c] : other.terms_) add_term(-c, m.dx, m.dy);
  return *this;
}

PolyXY operator*(const PolyXY& a, const PolyXY& b) {
  PolyXY out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ca * cb, ma.dx + mb.dx, ma.dy + mb.dy);
  return out;
}

PolyXY operator*(const Rational& c, const PolyXY& a) {
  PolyXY out;
  for (const auto& [m, v] : a.terms_) out.add_term(c * v, m.dx, m.dy);
  return out;
}

std::string PolyXY::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest degree first reads naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const Rational mag = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const bool unit = mag == 1 && (m.dx + m.dy) > 0;
    if (!unit) os << mag.get_str();
    auto factor = [&](const char* var, int e) {
      if (e == 0) return;
      if (!unit || (var[0] == 'y' && m.dx > 0)) os << "*";
      os << var;
      if (e > 1) os << "^" << e;
    };
    factor("x", m.dx);
    factor("y", m.dy);
  }
  return os.str();
}

}  // namespace qhcycle
