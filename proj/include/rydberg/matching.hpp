#pragma once

#include <optional>
#include <string>

#include "rydberg/coefficients.hpp"
#include "rydberg/hamiltonians.hpp"

namespace rydberg {

// Simulator families that map onto the field-representation target model.
//   three_leg: straight three-leg ladder, partial blockade (ladder hopping)
//   two_leg:   two-leg ladder (ladder hopping)
//   clock:     equilateral prism (clock hopping, Y' = -3/2 Y)
enum class MatchGeometry { three_leg, two_leg, clock };

std::string_view to_string(MatchGeometry g);
MatchGeometry parse_match_geometry(std::string_view text);

// Device parameters in one common energy unit. rho = a_y / a_x.
struct DeviceParams {
  double v0 = 0.0;
  double delta = 0.0;
  double delta0 = 0.0;
  double omega = 0.0;
  double rho = 0.0;
};

struct ForwardMatch {
  TargetCouplings target;
  HoppingFlavor flavor = HoppingFlavor::ladder;
  // Identity offset of the simulator relative to the target on n_sites rungs.
  double constant = 0.0;
  // Open boundaries need the end-site (L^z)^2 coefficient U/2 + Y/2; this is
  // how far the simulator's end sites miss it. Zero under 00BC.
  double boundary_mismatch = 0.0;
  bool boundary_matchable = true;
  EffectiveCoefficients coeffs;
};

// Target couplings realised by a device. The CAHM sign convention is reached
// through the staggered redefinition: X = 2J, Y' = R', Y = -R - R', U = 2(D - Y).
ForwardMatch match_forward(MatchGeometry g, const DeviceParams& p, BoundaryCondition bc,
                           int n_sites = 2);

// The effective coefficients used by match_forward for each geometry.
EffectiveCoefficients device_coefficients(MatchGeometry g, const DeviceParams& p);

// Parameters held fixed during the inverse search. `v0_over_delta` ties delta
// to v0. Unset fields are free; the number of free parameters must equal the
// number of independent target equations (four, or three for the clock family
// whose Y' is tied to Y).
struct MatchConstraints {
  std::optional<double> v0;
  std::optional<double> delta;
  std::optional<double> delta0;
  std::optional<double> omega;
  std::optional<double> rho;
  std::optional<double> v0_over_delta;

  // three_leg: V0/Delta = 2; two_leg: nothing; clock: V0/Delta = 2 and Omega = 1.
  static MatchConstraints defaults(MatchGeometry g);
};

struct InverseMatch {
  DeviceParams params;
  double residual = 0.0; // max relative deviation of match_forward from the target
  bool exact = false;    // residual <= 1e-10
  int iterations = 0;
};

// Throws ConfigError naming the violated constraint when the target is outside
// the family's reachable manifold.
InverseMatch match_inverse(MatchGeometry g, const TargetCouplings& target,
                           const MatchConstraints& constraints);
InverseMatch match_inverse(MatchGeometry g, const TargetCouplings& target);

} // namespace rydberg
