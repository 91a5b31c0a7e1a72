#include "qhcycle/upoly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qhcycle {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

UPoly UPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return UPoly(std::move(coeffs));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational UPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& c, const UPoly& a) {
  if (c == 0) return {};
  std::vector<Rational> out(a.coeffs_);
  for (auto& v : out) v *= c;
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rational& lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - db)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly primitive_part(const UPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& c : p.coeffs()) {
    if (c == 0) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  return scale * p;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = primitive_part(a), y = primitive_part(b);
  while (!y.is_zero()) {
    UPoly r = primitive_part(divmod(x, y).second);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return Rational(1) / x.leading() * x;
}

UPoly square_free_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  const UPoly g = gcd(p, p.derivative());
  return primitive_part(divmod(p, g).first);
}

namespace {

UPoly normalized(const UPoly& p) { return primitive_part(p); }

}  // namespace

SturmChain::SturmChain(const UPoly& p) {
  chain_.push_back(normalized(p));
  if (p.degree() <= 0) return;
  chain_.push_back(normalized(p.derivative()));
  while (chain_.back().degree() > 0) {
    UPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(normalized(-r));
  }
}

int SturmChain::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const UPoly& q : chain_) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

Rational cauchy_root_bound(const UPoly& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k)) / lead));
  return m + 2;
}

namespace {

struct Isolator {
  const UPoly& p;  // square-free
  const SturmChain& sturm;
  std::vector<RootInterval>& out;

  // Shrinks a symmetric window around the exact root c until it isolates it.
  Rational isolating_radius(const Rational& c, const Rational& start) const {
    Rational delta = start;
    for (;;) {
      const Rational lo = c - delta, hi = c + delta;
      if (p.sign_at(lo) != 0 && p.sign_at(hi) != 0 && sturm.count_roots(lo, hi) == 1) return delta;
      delta /= 2;
    }
  }

  // Roots in the open interval (a, b); neither endpoint is a root.
  void run(const Rational& a, const Rational& b, int count) {
    if (count == 0) return;
    if (count == 1) {
      out.push_back({a, b});
      return;
    }
    const Rational mid = (a + b) / 2;
    if (p.sign_at(mid) == 0) {
      const Rational delta = isolating_radius(mid, (b - a) / 4);
      out.push_back({mid, mid});
      const Rational left = mid - delta, right = mid + delta;
      run(a, left, sturm.count_roots(a, left));
      run(right, b, sturm.count_roots(right, b));
      return;
    }
    run(a, mid, sturm.count_roots(a, mid));
    run(mid, b, sturm.count_roots(mid, b));
  }
};

void refine(const UPoly& p, RootInterval& iv, const Rational& max_width) {
  if (iv.exact()) return;
  int s_lo = p.sign_at(iv.lo);
  while (iv.hi - iv.lo >= max_width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int s = p.sign_at(mid);
    if (s == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    if (s == s_lo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rational& max_width) {
  if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
  std::vector<RootInterval> roots;
  if (p.degree() == 0) return roots;
  const UPoly sf = square_free_part(p);
  const SturmChain sturm(sf);
  Rational bound = 1;
  for (const Rational cauchy = cauchy_root_bound(sf); bound < cauchy;) bound *= 2;
  Isolator iso{sf, sturm, roots};
  iso.run(-bound, bound, sturm.count_roots(-bound, bound));
  std::sort(roots.begin(), roots.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  for (auto& iv : roots) refine(sf, iv, max_width);
  return roots;
}

}  // namespace qhcycle
