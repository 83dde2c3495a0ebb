#include "rydberg/effective.hpp"

#include <array>
#include <initializer_list>
#include <utility>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "rydberg/hamiltonians.hpp"

namespace rydberg {

namespace {

double inverse(double denom, const char* what) {
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw ConfigError(std::string("second-order expansion is resonant: ") + what + " = 0");
  }
  return 1.0 / denom;
}

// Pair coupling at distance r (units of a_y) when the in-rung nearest pair is v0.
double coupling_at(double v0, double r) { return v0 / std::pow(r, 6); }

struct RungBonds {
  double v1 = 0.0;
  double va = 0.0; // outer leg of rung i to middle leg of rung i+1
  double vb = 0.0; // middle leg of rung i to outer leg of rung i+1
  double v3 = 0.0; // outer leg to the opposite outer leg of the next rung
};

// Shared bookkeeping for all three-atom rungs. The site part is
// -(Delta + Delta0) + Delta0 (L^z)^2 plus the Rabi terms; each bond contributes
// V1 + (Va - V1) L_i^2 + (Vb - V1) L_{i+1}^2 + R L_i L_{i+1} + R' L_i^2 L_{i+1}^2.
EffectiveCoefficients three_atom_rung(const RungBonds& v, double delta, double delta0,
                                      const EffectiveRabi& rabi) {
  EffectiveCoefficients c;
  const double a_left = v.va - v.v1;
  const double a_right = v.vb - v.v1;
  const double site_d = delta0 + rabi.diagonal_shift;
  c.d = site_d + a_left + a_right;
  c.d_first = site_d + a_left;
  c.d_last = site_d + a_right;
  c.r = 0.5 * (v.v1 - v.v3);
  c.rp = 0.5 * (3.0 * v.v1 + v.v3) - v.va - v.vb;
  c.j = rabi.j;
  c.flavor = rabi.flavor;
  c.const_per_site = -(delta + delta0) + rabi.constant;
  c.const_per_bond = v.v1;
  // A pinned m = 0 rung on the left sits on the left end of its bond, so the
  // first real site picks up the right-hand coefficient, and vice versa.
  c.zero_bc_first = a_right;
  c.zero_bc_last = a_left;
  c.zero_bc_const = 2.0 * v.v1;
  c.d_from_rabi = rabi.diagonal_shift;
  c.const_from_rabi = rabi.constant;
  c.metadata["V1"] = v.v1;
  c.metadata["V2"] = v.va;
  c.metadata["V3"] = v.v3;
  c.metadata["A"] = rabi.pt.a;
  c.metadata["B"] = rabi.pt.b;
  c.metadata["Gamma"] = rabi.pt.gamma;
  c.metadata["Lambda"] = rabi.pt.lambda;
  return c;
}

void attach_validity(EffectiveCoefficients& c, double v0, double delta, double omega, double v1) {
  c.metadata["V0"] = v0;
  c.metadata["omega_sq_over_4v0"] = omega * omega / (4.0 * v0);
  c.metadata["v1_over_64"] = v1 / 64.0;
  c.metadata["omega_over_delta"] = delta != 0.0 ? std::abs(omega / delta) : INFINITY;
  c.metadata["delta_over_v0"] = std::abs(delta / v0);
}

} // namespace

RabiPT rabi_pt(double v0, double v0p, double delta, double delta0) {
  const double i_d = inverse(delta, "Delta");
  const double i_dd0 = inverse(delta + delta0, "Delta + Delta0");
  const double i_v0 = inverse(v0 - delta, "V0 - Delta");
  const double i_v0p = inverse(v0p - delta, "V0' - Delta");
  const double i_v0d0 = inverse(v0 - delta - delta0, "V0 - Delta - Delta0");
  RabiPT pt;
  pt.a = i_v0d0 + i_v0p + i_d;
  pt.b = 2.0 * i_v0 + i_dd0;
  pt.gamma = 0.5 * (i_d + i_v0 + i_dd0 + i_v0d0);
  pt.lambda = i_v0p + i_d;
  return pt;
}

EffectiveRabi rabi_pt_matrix(double v0, double v0p, double delta, double delta0, double omega,
                             ThreeLegCase which) {
  EffectiveRabi r;
  r.pt = rabi_pt(v0, v0p, delta, delta0);
  const double w = 0.25 * omega * omega;
  r.diagonal_shift = w * (r.pt.b - r.pt.a);
  r.constant = -w * r.pt.b;
  if (which == ThreeLegCase::one) {
    r.j = w * r.pt.lambda;
    r.flavor = HoppingFlavor::clock;
  } else {
    r.j = w * r.pt.gamma;
    r.flavor = HoppingFlavor::ladder;
  }
  return r;
}

EffectiveCoefficients coeffs_two_leg(double v0, double delta, double omega, double rho, int k_max) {
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  auto v1_at = [&](int k) { return v0 * std::pow(rho, 6) / std::pow(k, 6); };
  auto v2_at = [&](int k) { return v0 * std::pow(rho, 6) / std::pow(k * k + rho * rho, 3); };
  EffectiveCoefficients c;
  const double v1 = v1_at(1);
  const double v2 = v2_at(1);
  c.d = -delta;
  c.r = 0.5 * (v1 - v2);
  c.rp = 0.5 * (v1 + v2);
  c.j = -0.5 * omega;
  c.flavor = HoppingFlavor::ladder;
  for (int k = 2; k <= k_max; ++k) {
    c.long_range.push_back({k, 0.5 * (v1_at(k) - v2_at(k)), 0.5 * (v1_at(k) + v2_at(k))});
  }
  c.metadata["V1"] = v1;
  c.metadata["V2"] = v2;
  attach_validity(c, v0, delta, omega, v1);
  return c;
}

EffectiveCoefficients coeffs_three_leg(ThreeLegCase which, double v0, double delta, double delta0,
                                       double omega, double rho) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  const double ax = 1.0 / rho;
  RungBonds v;
  v.v1 = coupling_at(v0, ax);
  v.va = coupling_at(v0, std::hypot(ax, 1.0));
  v.vb = v.va;
  v.v3 = coupling_at(v0, std::hypot(ax, 2.0));
  const double v0p = v0 / 64.0;
  const EffectiveRabi exact = rabi_pt_matrix(v0, v0p, delta, delta0, omega, which);
  EffectiveRabi used = exact;
  if (which == ThreeLegCase::two) {
    used = rabi_pt_matrix(v0, 0.0, delta, 0.0, omega, ThreeLegCase::two);
  }
  EffectiveCoefficients c = three_atom_rung(v, delta, delta0, used);
  c.metadata["V0p"] = v0p;
  c.metadata["j_exact"] = exact.j;
  c.metadata["d_rabi_exact"] = exact.diagonal_shift;
  c.metadata["const_rabi_exact"] = exact.constant;
  c.metadata["v0p_over_delta"] = std::abs(v0p / delta);
  attach_validity(c, v0, delta, omega, v.v1);
  return c;
}

EffectiveCoefficients coeffs_prism(double v0, double delta, double delta0, double omega, double rho,
                                   double height) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  const double ax = 1.0 / rho;
  // Outer legs at y = 0 and 1, middle leg at (y, z) = (1/2, height).
  const double in_rung_om = std::hypot(0.5, height);
  RungBonds v;
  v.v1 = coupling_at(v0, ax);
  v.va = coupling_at(v0, std::sqrt(ax * ax + in_rung_om * in_rung_om));
  v.vb = v.va;
  v.v3 = coupling_at(v0, std::hypot(ax, 1.0));
  const double v_om = coupling_at(v0, in_rung_om);
  const EffectiveRabi rabi = rabi_pt_matrix(v_om, v0, delta, delta0, omega, ThreeLegCase::one);
  EffectiveCoefficients c = three_atom_rung(v, delta, delta0, rabi);
  c.metadata["V0p"] = v0;
  c.metadata["V0_middle"] = v_om;
  attach_validity(c, v0, delta, omega, v.v1);
  return c;
}

EffectiveCoefficients coeffs_in_plane(double v0, double delta, double delta0, double omega,
                                      double rho, double shift) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  const double ax = 1.0 / rho;
  const double in_rung_om = std::hypot(0.5, shift);
  RungBonds v;
  v.v1 = coupling_at(v0, ax);
  v.va = coupling_at(v0, std::hypot(ax - shift, 0.5));
  v.vb = coupling_at(v0, std::hypot(ax + shift, 0.5));
  v.v3 = coupling_at(v0, std::hypot(ax, 1.0));
  const double v_om = coupling_at(v0, in_rung_om);
  const EffectiveRabi rabi = rabi_pt_matrix(v_om, v0, delta, delta0, omega, ThreeLegCase::one);
  EffectiveCoefficients c = three_atom_rung(v, delta, delta0, rabi);
  // End sites carry half the middle-leg offset; the pinned boundary restores D.
  c.d_first = 0.5 * delta0 + v.va - v.v1;
  c.d_last = 0.5 * delta0 + v.vb - v.v1;
  c.zero_bc_first = c.d - *c.d_first;
  c.zero_bc_last = c.d - *c.d_last;
  c.metadata["V4"] = v.vb;
  c.metadata["V0p"] = v0;
  c.metadata["V0_middle"] = v_om;
  attach_validity(c, v0, delta, omega, v.v1);
  return c;
}

EffectiveCoefficients staggered(EffectiveCoefficients coeffs) {
  coeffs.r = -coeffs.r;
  for (LongRangeTerm& t : coeffs.long_range) {
    if (t.k % 2 == 1) t.r = -t.r;
  }
  coeffs.staggered = !coeffs.staggered;
  return coeffs;
}

OracleFit diagonal_expansion_oracle(const AtomArray& atoms, const CouplingMatrix& couplings,
                                    double delta, const StateDictionary& dict) {
  if (atoms.n_rungs < 2) throw ConfigError("the expansion oracle needs at least two rungs");
  if (atoms.n_legs != dict.legs()) throw ConfigError("dictionary does not match the atom array");
  const int legs = atoms.n_legs;

  // Diagonal energy of a set of rungs in given spin states, all others empty.
  auto energy = [&](std::initializer_list<std::pair<int, int>> rung_spins) {
    std::vector<int> excited;
    for (auto [rung, m] : rung_spins) {
      const Config pattern = dict.pattern_of(m);
      for (int leg = 0; leg < legs; ++leg) {
        if ((pattern >> leg) & 1) excited.push_back(atoms.atom_index(rung, leg));
      }
    }
    double e = 0.0;
    for (std::size_t a = 0; a < excited.size(); ++a) {
      e -= delta + atoms.detuning_offset[excited[a]];
      for (std::size_t b = a + 1; b < excited.size(); ++b) e += couplings.v(excited[a], excited[b]);
    }
    return e;
  };

  OracleFit fit;
  const double ep = energy({{0, 1}});
  const double e0 = energy({{0, 0}});
  const double em = energy({{0, -1}});
  fit.site_const = e0;
  fit.d_site = 0.5 * (ep + em) - e0;
  fit.site_linear = 0.5 * (ep - em);

  Eigen::Matrix<double, 9, 5> design;
  Eigen::Matrix<double, 9, 1> target;
  int row = 0;
  for (int m = -1; m <= 1; ++m) {
    for (int mp = -1; mp <= 1; ++mp) {
      design(row, 0) = 1.0;
      design(row, 1) = m * m;
      design(row, 2) = mp * mp;
      design(row, 3) = m * mp;
      design(row, 4) = m * m * mp * mp;
      target(row) = energy({{0, m}, {1, mp}}) - energy({{0, m}}) - energy({{1, mp}});
      ++row;
    }
  }
  const Eigen::Matrix<double, 5, 1> x = design.colPivHouseholderQr().solve(target);
  fit.bond_const = x(0);
  fit.a_left = x(1);
  fit.a_right = x(2);
  fit.r = x(3);
  fit.rp = x(4);
  fit.residual = (design * x - target).cwiseAbs().maxCoeff();
  fit.residual = std::max(fit.residual, std::abs(fit.site_linear));
  return fit;
}

IsingReduction ising_reduction(double delta, double v1, double v2) {
  IsingReduction r;
  r.j_eff = inverse(delta - v1 - v2, "Delta - V1 - V2") - inverse(2.0 * delta - 4.0 * v2, "2 Delta - 4 V2") -
            inverse(2.0 * delta - 4.0 * v1, "2 Delta - 4 V1");
  r.transverse = inverse(delta, "Delta");
  r.residual = r.j_eff - r.transverse;
  return r;
}

double ising_critical_delta(double v1, double v2, double lo, double hi) {
  double f_lo = ising_reduction(lo, v1, v2).residual;
  const double f_hi = ising_reduction(hi, v1, v2).residual;
  if (f_lo * f_hi > 0.0) {
    throw NumericError("Ising residual does not change sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = ising_reduction(mid, v1, v2).residual;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace rydberg
