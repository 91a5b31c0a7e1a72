#include "qhcycle/trigpoly.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qhcycle/polyxy.hpp"
#include "qhcycle/upoly.hpp"

namespace qhcycle {

TrigPoly::TrigPoly(Rational constant) : constant_(std::move(constant)) {
  constant_.canonicalize();
  canonicalize();
}

TrigPoly::TrigPoly(Rational constant, std::vector<Rational> cos_coeffs,
                   std::vector<Rational> sin_coeffs)
    : constant_(std::move(constant)), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  constant_.canonicalize();
  for (auto& v : cos_) v.canonicalize();
  for (auto& v : sin_) v.canonicalize();
  canonicalize();
}

TrigPoly TrigPoly::cos_k(int k, const Rational& c) {
  if (k == 0) return TrigPoly(c);
  std::vector<Rational> cs(static_cast<std::size_t>(k));
  cs.back() = c;
  return TrigPoly(0, std::move(cs), {});
}

TrigPoly TrigPoly::sin_k(int k, const Rational& c) {
  if (k == 0) return TrigPoly();
  std::vector<Rational> sn(static_cast<std::size_t>(k));
  sn.back() = c;
  return TrigPoly(0, {}, std::move(sn));
}

void TrigPoly::canonicalize() {
  const std::size_t n = std::max(cos_.size(), sin_.size());
  cos_.resize(n);
  sin_.resize(n);
  while (!cos_.empty() && cos_.back() == 0 && sin_.back() == 0) {
    cos_.pop_back();
    sin_.pop_back();
  }
  constant_d_ = constant_.get_d();
  cos_d_.resize(cos_.size());
  sin_d_.resize(sin_.size());
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    cos_d_[k] = cos_[k].get_d();
    sin_d_[k] = sin_[k].get_d();
  }
}

Rational TrigPoly::cos_coeff(int k) const {
  if (k == 0) return constant_;
  if (k < 0 || k > degree()) return 0;
  return cos_[static_cast<std::size_t>(k - 1)];
}

Rational TrigPoly::sin_coeff(int k) const {
  if (k <= 0 || k > degree()) return 0;
  return sin_[static_cast<std::size_t>(k - 1)];
}

double TrigPoly::operator()(double theta) const {
  double value = 0.0, slope = 0.0;
  eval(theta, value, slope);
  return value;
}

double TrigPoly::at(double c1, double s1) const {
  double value = constant_d_;
  double ck = c1, sk = s1;
  for (std::size_t i = 0; i < cos_d_.size(); ++i) {
    value += cos_d_[i] * ck + sin_d_[i] * sk;
    const double next_c = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = next_c;
  }
  return value;
}

void TrigPoly::eval(double theta, double& value, double& derivative) const {
  value = constant_d_;
  derivative = 0.0;
  if (cos_d_.empty()) return;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = c1, sk = s1;
  for (std::size_t i = 0; i < cos_d_.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    value += cos_d_[i] * ck + sin_d_[i] * sk;
    derivative += k * (sin_d_[i] * ck - cos_d_[i] * sk);
    const double next_c = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = next_c;
  }
}

Rational TrigPoly::at_pi() const {
  Rational v = constant_;
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    if (i % 2 == 0) {
      v -= cos_[i];  // k = i + 1 odd
    } else {
      v += cos_[i];
    }
  }
  return v;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  constant_ += other.constant_;
  const std::size_t n = std::max(cos_.size(), other.cos_.size());
  cos_.resize(n);
  sin_.resize(n);
  for (std::size_t k = 0; k < other.cos_.size(); ++k) {
    cos_[k] += other.cos_[k];
    sin_[k] += other.sin_[k];
  }
  canonicalize();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) { return *this += -other; }

TrigPoly& TrigPoly::operator*=(const Rational& c) {
  constant_ *= c;
  for (auto& v : cos_) v *= c;
  for (auto& v : sin_) v *= c;
  canonicalize();
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  // cos part indexed from 0 (index 0 = constant), sin part from 1.
  const int da = a.degree(), db = b.degree();
  const std::size_t n = static_cast<std::size_t>(da + db) + 1;
  std::vector<Rational> cs(n), sn(n);
  auto add_cos = [&](int k, const Rational& v) { cs[static_cast<std::size_t>(std::abs(k))] += v; };
  auto add_sin = [&](int k, const Rational& v) {
    if (k > 0) sn[static_cast<std::size_t>(k)] += v;
    if (k < 0) sn[static_cast<std::size_t>(-k)] -= v;
  };
  for (int i = 0; i <= da; ++i) {
    const Rational ai = a.cos_coeff(i), bi = a.sin_coeff(i);
    for (int j = 0; j <= db; ++j) {
      const Rational aj = b.cos_coeff(j), bj = b.sin_coeff(j);
      if (ai != 0 && aj != 0) {
        const Rational h = ai * aj / 2;
        add_cos(i - j, h);
        add_cos(i + j, h);
      }
      if (bi != 0 && bj != 0) {
        const Rational h = bi * bj / 2;
        add_cos(i - j, h);
        add_cos(i + j, -h);
      }
      if (ai != 0 && bj != 0) {  // cos(i) sin(j)
        const Rational h = ai * bj / 2;
        add_sin(i + j, h);
        add_sin(j - i, h);
      }
      if (bi != 0 && aj != 0) {  // sin(i) cos(j)
        const Rational h = bi * aj / 2;
        add_sin(i + j, h);
        add_sin(i - j, h);
      }
    }
  }
  Rational constant = cs[0];
  std::vector<Rational> cos_out(cs.begin() + 1, cs.end());
  std::vector<Rational> sin_out(sn.begin() + 1, sn.end());
  return TrigPoly(std::move(constant), std::move(cos_out), std::move(sin_out));
}

std::string TrigPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Rational& c, const std::string& basis) {
    if (c == 0) return;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (basis.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << basis;
    } else {
      os << mag.get_str() << "*" << basis;
    }
  };
  term(constant_, "");
  for (int k = 1; k <= degree(); ++k) {
    const std::string arg = k == 1 ? "t" : std::to_string(k) + "t";
    term(cos_coeff(k), "cos(" + arg + ")");
    term(sin_coeff(k), "sin(" + arg + ")");
  }
  if (first) os << "0";
  return os.str();
}

TrigPoly derivative(const TrigPoly& f) {
  const int d = f.degree();
  std::vector<Rational> cs(static_cast<std::size_t>(d)), sn(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) {
    cs[static_cast<std::size_t>(k - 1)] = f.sin_coeff(k) * k;
    sn[static_cast<std::size_t>(k - 1)] = -f.cos_coeff(k) * k;
  }
  return TrigPoly(0, std::move(cs), std::move(sn));
}

TrigPoly wronskian(const TrigPoly& f, const TrigPoly& g) {
  return f * derivative(g) - derivative(f) * g;
}

TrigPoly from_poly_on_circle(const PolyXY& p) {
  const TrigPoly c = TrigPoly::cos_k(1), s = TrigPoly::sin_k(1);
  std::vector<TrigPoly> cpow{TrigPoly(1)}, spow{TrigPoly(1)};
  auto power = [](std::vector<TrigPoly>& table, const TrigPoly& base, int k) -> const TrigPoly& {
    while (static_cast<int>(table.size()) <= k) table.push_back(table.back() * base);
    return table[static_cast<std::size_t>(k)];
  };
  TrigPoly out;
  for (const auto& [mono, coef] : p.terms())
    out += coef * (power(cpow, c, mono.dx) * power(spow, s, mono.dy));
  return out;
}

std::string to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::IdenticallyZero: return "IdenticallyZero";
    case SignVerdict::Positive: return "Positive";
    case SignVerdict::Negative: return "Negative";
    case SignVerdict::NonNegativeWithZeros: return "NonNegativeWithZeros";
    case SignVerdict::NonPositiveWithZeros: return "NonPositiveWithZeros";
    case SignVerdict::ChangesSign: return "ChangesSign";
  }
  return "?";
}

int SignReport::sign() const {
  switch (verdict) {
    case SignVerdict::Positive:
    case SignVerdict::NonNegativeWithZeros: return 1;
    case SignVerdict::Negative:
    case SignVerdict::NonPositiveWithZeros: return -1;
    default: return 0;
  }
}

double ZeroPoint::theta() const {
  if (at_pi) return std::numbers::pi;
  return 0.5 * (theta_lo + theta_hi);
}

namespace {

// Real and imaginary parts of (1 + i t)^(2k).
std::pair<UPoly, UPoly> unit_power(int k) {
  const int n = 2 * k;
  std::vector<Rational> re(static_cast<std::size_t>(n) + 1), im(static_cast<std::size_t>(n) + 1);
  mpz_class binom = 1;
  for (int j = 0; j <= n; ++j) {
    // i^j cycles 1, i, -1, -i
    const int phase = j % 4;
    if (phase == 0) re[static_cast<std::size_t>(j)] = binom;
    if (phase == 1) im[static_cast<std::size_t>(j)] = binom;
    if (phase == 2) re[static_cast<std::size_t>(j)] = -binom;
    if (phase == 3) im[static_cast<std::size_t>(j)] = -binom;
    binom = binom * (n - j) / (j + 1);
  }
  return {UPoly(std::move(re)), UPoly(std::move(im))};
}


double angle_of(const Rational& t) {
  double theta = 2.0 * std::atan(t.get_d());
  if (theta < 0) theta += 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace

UPoly half_angle_numerator(const TrigPoly& f) {
  const int d = f.degree();
  std::vector<UPoly> powers{UPoly(std::vector<Rational>{1})};
  for (int e = 1; e <= d; ++e) powers.push_back(powers.back() * UPoly(std::vector<Rational>{1, 0, 1}));
  UPoly n = f.constant() * powers[static_cast<std::size_t>(d)];
  for (int k = 1; k <= d; ++k) {
    const auto [re, im] = unit_power(k);
    const UPoly harmonic = f.cos_coeff(k) * re + f.sin_coeff(k) * im;
    n = n + powers[static_cast<std::size_t>(d - k)] * harmonic;
  }
  return n;
}

SignReport sign_analysis(const TrigPoly& f) {
  SignReport report;
  if (f.is_zero()) return report;

  const UPoly numer = half_angle_numerator(f);
  const Rational width = Rational(1, 1 << 20);
  const std::vector<RootInterval> roots = isolate_real_roots(numer, width);
  const Rational value_at_pi = f.at_pi();

  for (const RootInterval& iv : roots) {
    ZeroPoint z;
    z.t_lo = iv.lo;
    z.t_hi = iv.hi;
    z.theta_lo = angle_of(iv.lo);
    z.theta_hi = angle_of(iv.hi);
    report.zero_points.push_back(z);
  }
  if (value_at_pi == 0) {
    ZeroPoint z;
    z.at_pi = true;
    z.theta_lo = z.theta_hi = std::numbers::pi;
    report.zero_points.push_back(z);
  }

  // One test point per arc between consecutive roots in t.
  std::vector<Rational> probes;
  if (roots.empty()) {
    probes.push_back(0);
  } else {
    probes.push_back(roots.front().lo - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
      probes.push_back((roots[i].hi + roots[i + 1].lo) / 2);
    probes.push_back(roots.back().hi + 1);
  }
  std::optional<SignWitness> positive, negative;
  for (const Rational& t : probes) {
    const int s = numer.sign_at(t);
    SignWitness w{angle_of(t), t, s};
    if (s > 0 && !positive) positive = w;
    if (s < 0 && !negative) negative = w;
  }
  if (value_at_pi != 0) {
    const int s = sign(value_at_pi);
    SignWitness w{std::numbers::pi, std::nullopt, s};
    if (s > 0 && !positive) positive = w;
    if (s < 0 && !negative) negative = w;
  }

  if (positive && negative) {
    report.verdict = SignVerdict::ChangesSign;
    report.witnesses = {*positive, *negative};
  } else if (report.zero_points.empty()) {
    report.verdict = positive ? SignVerdict::Positive : SignVerdict::Negative;
  } else {
    report.verdict = positive ? SignVerdict::NonNegativeWithZeros : SignVerdict::NonPositiveWithZeros;
    report.witnesses = {positive ? *positive : *negative};
  }
  return report;
}

}  // namespace qhcycle
