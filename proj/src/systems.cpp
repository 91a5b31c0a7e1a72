#include "qhcycle/systems.hpp"

#include <vector>

namespace qhcycle::systems {

namespace {

const PolyXY X = PolyXY::x();
const PolyXY Y = PolyXY::y();

PolyXY r2() { return X * X + Y * Y; }

}  // namespace

QHSystem example1() {
  const PolyXY g = 2 * X.pow(2) + Y.pow(4);
  const PolyXY P = 4 * X.pow(3) + X * Y.pow(4) - g * (8 * X + Y.pow(2)) * Y;
  const PolyXY Q = 3 * X.pow(2) * Y + Y.pow(5) + g * (X - 4 * Y.pow(2));
  return make_system(P, Q, Weight(2, 1));
}

QHSystem example2() {
  const PolyXY P = X - Y - X.pow(3) + 5 * X.pow(2) * Y - X * Y.pow(2) - Y.pow(3);
  const PolyXY Q = X + Y + 3 * X.pow(3) - X.pow(2) * Y + 9 * X * Y.pow(2) - Y.pow(3);
  return make_system(P, Q, Weight(1, 1));
}

QHSystem unit_circle_abel(int k, int l) {
  const PolyXY P = (X - Y) * r2().pow(l) - (X + Y) * r2().pow(k);
  const PolyXY Q = (X + Y) * r2().pow(l) + (X - Y) * r2().pow(k);
  return make_system(P, Q, Weight(1, 1));
}

QHSystem unit_circle_polar(int k, int l) {
  const PolyXY P = (X.pow(3) - X.pow(2) * Y + X * Y.pow(2)) * r2().pow(l) -
                   (X + Y) * r2().pow(k + 1);
  const PolyXY Q = (X.pow(3) + X.pow(2) * Y + Y.pow(3)) * r2().pow(l) +
                   (X - Y) * r2().pow(k + 1);
  return make_system(P, Q, Weight(1, 1));
}

QHSystem phi_zero() {
  const PolyXY P = -Y - Y * r2();
  const PolyXY Q = X + X * r2();
  return make_system(P, Q, Weight(1, 1));
}

namespace {

// Monomials x^i y^j with p*i + q*j == target.
std::vector<Monomial> monomials_with_weighted_degree(int p, int q, int target) {
  std::vector<Monomial> out;
  if (target < 0) return out;
  for (int i = 0; p * i <= target; ++i) {
    const int rest = target - p * i;
    if (rest % q == 0) out.push_back({i, rest / q});
  }
  return out;
}

Rational small_rational(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, 3);
  const int top = num(rng);
  const int bottom = den(rng);
  return Rational(top, bottom);
}

// Random quasi-homogeneous field of degree s = 2pq e - p - q + 1 plus a
// multiple of the Hamiltonian field (-H_y, H_x) of H = (x^{2q} + y^{2p})^e,
// whose b-coefficient is 2pq e H(cos, sin) > 0.
QHComponent random_component(std::mt19937_64& rng, int p, int q, int e, int rotation_sign) {
  QHComponent c;
  c.degree = 2 * p * q * e - p - q + 1;
  const int s = c.degree;
  for (const Monomial& m : monomials_with_weighted_degree(p, q, p + s - 1))
    c.P.add_term(small_rational(rng, 1), m.dx, m.dy);
  for (const Monomial& m : monomials_with_weighted_degree(p, q, q + s - 1))
    c.Q.add_term(small_rational(rng, 1), m.dx, m.dy);
  const PolyXY base = X.pow(2 * q) + Y.pow(2 * p);
  const PolyXY G = base.pow(e - 1);
  // H_x = e G 2q x^{2q-1}, H_y = e G 2p y^{2p-1}
  std::uniform_int_distribution<int> amp(1, 3);
  const Rational a = Rational(rotation_sign * amp(rng));
  c.P -= a * Rational(e * 2 * p) * G * Y.pow(2 * p - 1);
  c.Q += a * Rational(e * 2 * q) * G * X.pow(2 * q - 1);
  return c;
}

}  // namespace

QHSystem random_system(std::mt19937_64& rng) {
  static const std::vector<Weight> weights{{1, 1}, {1, 1}, {1, 2}, {2, 1}};
  std::uniform_int_distribution<std::size_t> pick(0, weights.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  const Weight w = weights[pick(rng)];
  const int e_low = 1 + coin(rng);
  const int e_high = e_low == 2 ? 3 : 2 + coin(rng);
  const int sign_low = coin(rng) ? 1 : -1;
  QHComponent low = random_component(rng, w.p, w.q, e_low, sign_low);
  const int sign_high = coin(rng) ? 1 : -1;
  QHComponent high = random_component(rng, w.p, w.q, e_high, sign_high);
  return QHSystem(w, std::move(low), std::move(high));
}

}  // namespace qhcycle::systems
