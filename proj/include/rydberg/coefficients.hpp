#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rydberg {

enum class BoundaryCondition { open, periodic, zero_zero };
enum class HoppingFlavor { ladder, clock };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary(std::string_view text);
std::string_view to_string(HoppingFlavor flavor);
HoppingFlavor parse_flavor(std::string_view text);

// R_k L_i L_{i+k} + R'_k (L_i)^2 (L_{i+k})^2 beyond nearest neighbours.
struct LongRangeTerm {
  int k = 2;
  double r = 0.0;
  double rp = 0.0;
};

// Coefficients of the generic spin-1 chain
//   D sum (L_i)^2 + R sum L_i L_{i+1} + R' sum (L_i)^2 (L_{i+1})^2 - J sum (X_i^+ + X_i^-) + const
// with X = U (ladder) or C (clock). d_first / d_last replace D on the two end
// sites under open boundaries. The zero_bc_* fields describe what pinning the
// outside field to zero adds at the edges (and to the identity).
struct EffectiveCoefficients {
  double d = 0.0;
  double r = 0.0;
  double rp = 0.0;
  double j = 0.0;
  HoppingFlavor flavor = HoppingFlavor::ladder;
  std::optional<double> d_first;
  std::optional<double> d_last;

  // Identity coefficient split into per-site and per-bond pieces.
  double const_per_site = 0.0;
  double const_per_bond = 0.0;

  double zero_bc_first = 0.0;
  double zero_bc_last = 0.0;
  double zero_bc_const = 0.0;

  // Part of d and const_per_site that comes from the second-order Rabi
  // expansion rather than from the diagonal of the simulator.
  double d_from_rabi = 0.0;
  double const_from_rabi = 0.0;

  std::vector<LongRangeTerm> long_range;
  bool staggered = false;

  // Validity ratios and auxiliary quantities (V1, V2, ... , PT ratios).
  std::map<std::string, double> metadata;

  double constant(int n_sites, BoundaryCondition bc) const;
  double edge_first(BoundaryCondition bc) const;
  double edge_last(BoundaryCondition bc) const;
};

} // namespace rydberg
