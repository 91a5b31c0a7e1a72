#ifndef QHCYCLE_SYSTEMS_HPP
#define QHCYCLE_SYSTEMS_HPP

#include <cstdint>
#include <random>

#include "qhcycle/vectorfield.hpp"

namespace qhcycle::systems {

/// Weight (2,1), degrees 5 and 6:
///   x' = 4x^3 + xy^4 - (2x^2 + y^4)(8x + y^2) y
///   y' = 3x^2 y + y^5 + (2x^2 + y^4)(x - 4y^2)
QHSystem example1();

/// Weight (1,1), degrees 1 and 3:
///   x' = x - y - x^3 + 5x^2 y - x y^2 - y^3
///   y' = x + y + 3x^3 - x^2 y + 9x y^2 - y^3
QHSystem example2();

/// Unit-circle cycle with b_n = b_m = 1, needs k > l >= 0:
///   X_n = ((x - y) r2^l, (x + y) r2^l), X_m = (-(x + y) r2^k, (x - y) r2^k)
QHSystem unit_circle_abel(int k, int l);

/// Unit-circle cycle with b_n = cos^2 vanishing, needs k > l >= 0:
///   X_n = ((x^3 - x^2 y + x y^2) r2^l, (x^3 + x^2 y + y^3) r2^l)
///   X_m = (-(x + y) r2^(k+1), (x - y) r2^(k+1))
QHSystem unit_circle_polar(int k, int l);

/// A rotation plus a radial-free cubic rotation: Phi vanishes identically.
///   X_1 = (-y, x), X_3 = (-y r2, x r2)
QHSystem phi_zero();

/// Random two-component system with small rational coefficients. Each
/// component is a random quasi-homogeneous field plus a multiple of a
/// Hamiltonian rotation, so b_n and b_m often keep a sign.
QHSystem random_system(std::mt19937_64& rng);

}  // namespace qhcycle::systems

#endif
