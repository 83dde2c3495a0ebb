#pragma once

#include <numbers>

#include "rydberg/basis.hpp"
#include "rydberg/coefficients.hpp"
#include "rydberg/geometry.hpp"

namespace rydberg {

// Inverse-energy sums of the second-order Rabi expansion for a three-atom rung.
// v0 couples the middle atom to either outer atom, v0p the two outer atoms.
//   A = 1/(V0 - D - D0) + 1/(V0' - D) + 1/D
//   B = 2/(V0 - D) + 1/(D + D0)
//   G = [1/D + 1/(V0 - D) + 1/(D + D0) + 1/(V0 - D - D0)] / 2
//   L = 1/(V0' - D) + 1/D
struct RabiPT {
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};

// Case one: the whole rung is blockaded and |+1> <-> |-1> flips survive (clock).
// Case two: V0' is small, the outer pair is reachable and only ladder moves remain.
enum class ThreeLegCase { one = 1, two = 2 };

// The rung-local part -(Omega^2/4) [[A,G,L],[G,B,G],[L,G,A]] (basis +1, 0, -1)
// rewritten as const + diagonal_shift (L^z)^2 - j (X^+ + X^-).
struct EffectiveRabi {
  RabiPT pt;
  double j = 0.0;
  HoppingFlavor flavor = HoppingFlavor::ladder;
  double diagonal_shift = 0.0; // (B - A) Omega^2 / 4
  double constant = 0.0;       // -B Omega^2 / 4
};

RabiPT rabi_pt(double v0, double v0p, double delta, double delta0);

// Case one: j = Omega^2 L / 4 (clock). Case two: j = Omega^2 G / 4 (ladder).
EffectiveRabi rabi_pt_matrix(double v0, double v0p, double delta, double delta0, double omega,
                             ThreeLegCase which);

// Two-leg ladder: D = -Delta, R = (V1 - V2)/2, R' = (V1 + V2)/2, J = -Omega/2.
// Terms with 2 <= k <= k_max use the k-th neighbour rung couplings.
EffectiveCoefficients coeffs_two_leg(double v0, double delta, double omega, double rho,
                                     int k_max = 1);

// Straight three-leg ladder. Case two evaluates the Rabi part in its
// V0', Delta0 -> 0 limit, which gives J = Omega^2 V0 / [4 Delta (V0 - Delta)]
// and the same J in D; the exact second-order values are kept in metadata
// ("j_exact", "d_rabi_exact"). Case one keeps the exact expansion.
EffectiveCoefficients coeffs_three_leg(ThreeLegCase which, double v0, double delta, double delta0,
                                       double omega, double rho);

// Triangular prism, middle leg lifted by `height` (units of a_y) out of plane.
EffectiveCoefficients coeffs_prism(double v0, double delta, double delta0, double omega, double rho,
                                   double height = std::numbers::sqrt3 / 2.0);

// In-plane triangles, middle leg shifted by `shift` (units of a_y) towards -x.
// The end-site overrides are d_first = Delta0/2 + V2 - V1 and
// d_last = Delta0/2 + V4 - V1.
EffectiveCoefficients coeffs_in_plane(double v0, double delta, double delta0, double omega,
                                      double rho, double shift = std::numbers::sqrt3 / 2.0);

// Flips the sign of R and of every odd-k long-range R_k (L^z on odd sites -> -L^z).
EffectiveCoefficients staggered(EffectiveCoefficients coeffs);

// Brute-force fit of the Omega = 0 diagonal of the Rydberg Hamiltonian on the
// first two rungs of `atoms`, restricted to the spin-1 sector.
//   single rung:  E(m) = site_const + d_site m^2 + site_linear m
//   bond:         E(m, m') = bond_const + a_left m^2 + a_right m'^2 + r m m' + rp m^2 m'^2
// residual is the largest misfit over the 3 + 9 sector configurations.
struct OracleFit {
  double site_const = 0.0;
  double d_site = 0.0;
  double site_linear = 0.0;
  double bond_const = 0.0;
  double a_left = 0.0;
  double a_right = 0.0;
  double r = 0.0;
  double rp = 0.0;
  double residual = 0.0;

  double d_bulk() const { return d_site + a_left + a_right; }
  double d_first() const { return d_site + a_left; }
  double d_last() const { return d_site + a_right; }
};

OracleFit diagonal_expansion_oracle(const AtomArray& atoms, const CouplingMatrix& couplings,
                                    double delta, const StateDictionary& dict);

// Degenerate perturbation theory inside the RDW phase:
//   J_eff = 1/(D - V1 - V2) - 1/(2D - 4V2) - 1/(2D - 4V1), transverse = 1/D.
struct IsingReduction {
  double j_eff = 0.0;
  double transverse = 0.0;
  double residual = 0.0; // j_eff - transverse
};

IsingReduction ising_reduction(double delta, double v1, double v2);

// Root of the residual in delta on [lo, hi] by bisection.
double ising_critical_delta(double v1, double v2, double lo, double hi);

} // namespace rydberg
