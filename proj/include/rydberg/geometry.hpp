#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rydberg/common.hpp"

namespace rydberg {

enum class LadderKind { chain, two_leg, three_leg, prism, in_plane_triangle };

std::string_view to_string(LadderKind kind);
LadderKind parse_ladder_kind(std::string_view text);

// Number of atoms per rung for each ladder kind.
int legs_per_rung(LadderKind kind);

// Rung geometry for the five supported ladders.
//
// Leg s of a rectangular ladder sits at y = s * a_y. The prism and the
// in-plane triangle keep the two outer legs at y = 0 and y = a_y and place the
// middle leg (leg 1) at y = a_y / 2, displaced out of plane by `prism_height`
// or horizontally (towards -x) by `shift`. Both default to the equilateral
// value sqrt(3)/2 * a_y.
struct LadderSpec {
  LadderKind kind = LadderKind::two_leg;
  int n_rungs = 1;
  double a_x = 1.0;
  double a_y = 1.0;
  std::optional<double> shift;
  std::optional<double> prism_height;

  void validate() const;
  double rho() const { return a_y / a_x; }
};

using Position = std::array<double, 3>;

struct AtomArray {
  LadderKind kind = LadderKind::two_leg;
  int n_rungs = 0;
  int n_legs = 0;
  double a_x = 0.0;
  double a_y = 0.0;
  std::vector<Position> positions;
  std::vector<int> rung_of; // 0-based
  std::vector<int> leg_of;  // 0-based
  std::vector<double> detuning_offset;

  int size() const { return static_cast<int>(positions.size()); }
  int atom_index(int rung, int leg) const { return rung * n_legs + leg; }
};

AtomArray build_ladder(const LadderSpec& spec);

double distance(const Position& a, const Position& b);

// Adds `delta0` to the detuning of every middle-leg atom (three-atom rungs only).
void apply_middle_leg_offset(AtomArray& atoms, double delta0);

struct CouplingMatrix {
  Eigen::MatrixXd v;
  std::map<std::string, double> named;

  double at(int i, int j) const { return v(i, j); }
};

// v_ij = c6 / r_ij^6 for every pair, plus the named canonical couplings:
//   V0  nearest in-rung pair (outer-middle for three-atom rungs)
//   V0p outer-outer in-rung pair (three-atom rungs)
//   V1  same leg, neighbouring rungs
//   V2  neighbouring legs, neighbouring rungs (in-plane: outer_i to middle_{i+1})
//   V3  outer to opposite outer leg, neighbouring rungs
//   V4  in-plane only: middle_i to outer_{i+1}
CouplingMatrix pairwise_couplings(const AtomArray& atoms, double c6 = kDefaultC6);

// Pair interaction between two arbitrary points.
double van_der_waals(double c6, double r);

// R_b = (c6 / omega)^(1/6).
double blockade_radius(double c6, double omega);

// a_y that yields a given in-rung coupling V0 = c6 / a_y^6.
double spacing_for_coupling(double c6, double v0);

// Pins virtual rungs at positions -1 and n_rungs in the spin-0 pattern given by
// `excited_legs` and folds their interaction with the real atoms into detuning
// offsets (an excited neighbour at distance r shifts the detuning by -c6/r^6).
// Pairs farther apart than `range_cutoff` (see rung_separation) are ignored.
void pin_zero_boundary(AtomArray& atoms, const std::vector<int>& excited_legs, double c6,
                       std::optional<double> range_cutoff = std::nullopt);

// Distance between the rungs of two atoms, |rung_i - rung_j| * a_x. Range
// cutoffs compare against this so that a cutoff just above a_x keeps every
// nearest-neighbour-rung pair regardless of the in-rung layout.
double rung_separation(const AtomArray& atoms, int i, int j);

} // namespace rydberg
