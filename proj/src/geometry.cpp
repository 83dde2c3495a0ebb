#include "rydberg/geometry.hpp"

#include <cmath>
#include <cstdlib>

namespace rydberg {

namespace {

const double kEquilateralOffset = std::sqrt(3.0) / 2.0;

Position rung_atom_position(const LadderSpec& spec, int rung, int leg) {
  const double x = rung * spec.a_x;
  switch (spec.kind) {
  case LadderKind::chain:
    return {x, 0.0, 0.0};
  case LadderKind::two_leg:
  case LadderKind::three_leg:
    return {x, leg * spec.a_y, 0.0};
  case LadderKind::prism:
    if (leg == 1) {
      return {x, 0.5 * spec.a_y, spec.prism_height.value_or(kEquilateralOffset * spec.a_y)};
    }
    return {x, leg == 0 ? 0.0 : spec.a_y, 0.0};
  case LadderKind::in_plane_triangle:
    if (leg == 1) {
      return {x - spec.shift.value_or(kEquilateralOffset * spec.a_y), 0.5 * spec.a_y, 0.0};
    }
    return {x, leg == 0 ? 0.0 : spec.a_y, 0.0};
  }
  return {x, 0.0, 0.0};
}

} // namespace

std::string_view to_string(LadderKind kind) {
  switch (kind) {
  case LadderKind::chain: return "chain";
  case LadderKind::two_leg: return "two-leg";
  case LadderKind::three_leg: return "three-leg";
  case LadderKind::prism: return "prism";
  case LadderKind::in_plane_triangle: return "in-plane-triangle";
  }
  return "unknown";
}

LadderKind parse_ladder_kind(std::string_view text) {
  if (text == "chain") return LadderKind::chain;
  if (text == "two-leg") return LadderKind::two_leg;
  if (text == "three-leg") return LadderKind::three_leg;
  if (text == "prism") return LadderKind::prism;
  if (text == "in-plane-triangle" || text == "in-plane") return LadderKind::in_plane_triangle;
  throw ConfigError("unknown ladder kind '" + std::string(text) +
                    "' (expected chain, two-leg, three-leg, prism, in-plane-triangle)");
}

int legs_per_rung(LadderKind kind) {
  switch (kind) {
  case LadderKind::chain: return 1;
  case LadderKind::two_leg: return 2;
  default: return 3;
  }
}

void LadderSpec::validate() const {
  if (!(a_x > 0.0) || !std::isfinite(a_x)) throw ConfigError("geometry.a_x must be positive");
  if (!(a_y > 0.0) || !std::isfinite(a_y)) throw ConfigError("geometry.a_y must be positive");
  if (n_rungs < 1) throw ConfigError("geometry.n_rungs must be at least 1");
  if (shift && kind != LadderKind::in_plane_triangle) {
    throw ConfigError("geometry.shift applies only to in-plane-triangle ladders");
  }
  if (prism_height && kind != LadderKind::prism) {
    throw ConfigError("geometry.prism_height applies only to prism ladders");
  }
  if (prism_height && !(*prism_height > 0.0)) {
    throw ConfigError("geometry.prism_height must be positive");
  }
  if (shift && !std::isfinite(*shift)) throw ConfigError("geometry.shift must be finite");
}

AtomArray build_ladder(const LadderSpec& spec) {
  spec.validate();
  AtomArray atoms;
  atoms.kind = spec.kind;
  atoms.n_rungs = spec.n_rungs;
  atoms.n_legs = legs_per_rung(spec.kind);
  atoms.a_x = spec.a_x;
  atoms.a_y = spec.a_y;
  const int n = spec.n_rungs * atoms.n_legs;
  atoms.positions.reserve(n);
  for (int rung = 0; rung < spec.n_rungs; ++rung) {
    for (int leg = 0; leg < atoms.n_legs; ++leg) {
      atoms.positions.push_back(rung_atom_position(spec, rung, leg));
      atoms.rung_of.push_back(rung);
      atoms.leg_of.push_back(leg);
    }
  }
  atoms.detuning_offset.assign(n, 0.0);
  return atoms;
}

double distance(const Position& a, const Position& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double rung_separation(const AtomArray& atoms, int i, int j) {
  return std::abs(atoms.rung_of[i] - atoms.rung_of[j]) * atoms.a_x;
}

void apply_middle_leg_offset(AtomArray& atoms, double delta0) {
  if (atoms.n_legs != 3) {
    if (delta0 != 0.0) throw ConfigError("a middle-leg detuning offset needs three-atom rungs");
    return;
  }
  for (int i = 0; i < atoms.size(); ++i) {
    if (atoms.leg_of[i] == 1) atoms.detuning_offset[i] += delta0;
  }
}

double van_der_waals(double c6, double r) {
  const double r2 = r * r;
  return c6 / (r2 * r2 * r2);
}

CouplingMatrix pairwise_couplings(const AtomArray& atoms, double c6) {
  const int n = atoms.size();
  CouplingMatrix out;
  out.v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = distance(atoms.positions[i], atoms.positions[j]);
      if (!(r > 0.0)) {
        throw ConfigError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide");
      }
      out.v(i, j) = out.v(j, i) = van_der_waals(c6, r);
    }
  }

  // Named couplings come from a two-rung template of the same geometry so
  // they exist even for single-rung arrays.
  LadderSpec templ{atoms.kind, 2, atoms.a_x, atoms.a_y, std::nullopt, std::nullopt};
  auto pair = [&](int rung_a, int leg_a, int rung_b, int leg_b) {
    return van_der_waals(c6, distance(rung_atom_position(templ, rung_a, leg_a),
                                      rung_atom_position(templ, rung_b, leg_b)));
  };
  // Recover shift / prism height from the actual middle-leg position.
  if (atoms.n_legs == 3 && atoms.kind != LadderKind::three_leg && n >= 2) {
    const Position& mid = atoms.positions[1];
    if (atoms.kind == LadderKind::prism) templ.prism_height = mid[2];
    if (atoms.kind == LadderKind::in_plane_triangle) templ.shift = -mid[0];
  }

  switch (atoms.kind) {
  case LadderKind::chain:
    out.named["V1"] = pair(0, 0, 1, 0);
    break;
  case LadderKind::two_leg:
    out.named["V0"] = pair(0, 0, 0, 1);
    out.named["V1"] = pair(0, 0, 1, 0);
    out.named["V2"] = pair(0, 0, 1, 1);
    break;
  case LadderKind::three_leg:
  case LadderKind::prism:
    out.named["V0"] = pair(0, 0, 0, 1);
    out.named["V0p"] = pair(0, 0, 0, 2);
    out.named["V1"] = pair(0, 0, 1, 0);
    out.named["V2"] = pair(0, 0, 1, 1);
    out.named["V3"] = pair(0, 0, 1, 2);
    break;
  case LadderKind::in_plane_triangle:
    out.named["V0"] = pair(0, 0, 0, 1);
    out.named["V0p"] = pair(0, 0, 0, 2);
    out.named["V1"] = pair(0, 0, 1, 0);
    out.named["V2"] = pair(0, 0, 1, 1);
    out.named["V3"] = pair(0, 0, 1, 2);
    out.named["V4"] = pair(0, 1, 1, 0);
    break;
  }
  return out;
}

double blockade_radius(double c6, double omega) {
  if (!(omega > 0.0)) throw ConfigError("blockade radius needs a positive Rabi frequency");
  return std::pow(c6 / omega, 1.0 / 6.0);
}

double spacing_for_coupling(double c6, double v0) {
  if (!(v0 > 0.0)) throw ConfigError("V0 must be positive");
  return std::pow(c6 / v0, 1.0 / 6.0);
}

void pin_zero_boundary(AtomArray& atoms, const std::vector<int>& excited_legs, double c6,
                       std::optional<double> range_cutoff) {
  LadderSpec templ{atoms.kind, 1, atoms.a_x, atoms.a_y, std::nullopt, std::nullopt};
  if (atoms.n_legs == 3 && atoms.kind != LadderKind::three_leg && atoms.size() >= 2) {
    const Position& mid = atoms.positions[1];
    if (atoms.kind == LadderKind::prism) templ.prism_height = mid[2];
    if (atoms.kind == LadderKind::in_plane_triangle) templ.shift = -mid[0];
  }
  for (int virtual_rung : {-1, atoms.n_rungs}) {
    for (int leg : excited_legs) {
      const Position pin = rung_atom_position(templ, virtual_rung, leg);
      for (int i = 0; i < atoms.size(); ++i) {
        const double sep = std::abs(atoms.rung_of[i] - virtual_rung) * atoms.a_x;
        if (range_cutoff && sep > *range_cutoff) continue;
        atoms.detuning_offset[i] -= van_der_waals(c6, distance(pin, atoms.positions[i]));
      }
    }
  }
}

} // namespace rydberg
