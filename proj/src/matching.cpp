#include "rydberg/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "rydberg/effective.hpp"

namespace rydberg {

std::string_view to_string(MatchGeometry g) {
  switch (g) {
  case MatchGeometry::three_leg: return "three-leg";
  case MatchGeometry::two_leg: return "two-leg";
  case MatchGeometry::clock: return "clock";
  }
  return "unknown";
}

MatchGeometry parse_match_geometry(std::string_view text) {
  if (text == "three-leg") return MatchGeometry::three_leg;
  if (text == "two-leg") return MatchGeometry::two_leg;
  if (text == "clock" || text == "prism") return MatchGeometry::clock;
  throw ConfigError("unknown matching geometry '" + std::string(text) +
                    "' (expected three-leg, two-leg or clock)");
}

EffectiveCoefficients device_coefficients(MatchGeometry g, const DeviceParams& p) {
  switch (g) {
  case MatchGeometry::three_leg:
    return coeffs_three_leg(ThreeLegCase::two, p.v0, p.delta, p.delta0, p.omega, p.rho);
  case MatchGeometry::two_leg:
    return coeffs_two_leg(p.v0, p.delta, p.omega, p.rho);
  case MatchGeometry::clock:
    return coeffs_prism(p.v0, p.delta, p.delta0, p.omega, p.rho);
  }
  throw ConfigError("unknown matching geometry");
}

ForwardMatch match_forward(MatchGeometry g, const DeviceParams& p, BoundaryCondition bc,
                           int n_sites) {
  ForwardMatch out;
  out.coeffs = device_coefficients(g, p);
  const EffectiveCoefficients s = staggered(out.coeffs);
  out.flavor = s.flavor;
  out.target.x = 2.0 * s.j;
  out.target.yp = s.rp;
  out.target.y = -s.r - s.rp;
  out.target.u = 2.0 * (s.d - out.target.y);
  out.constant = s.constant(n_sites, bc);
  if (bc == BoundaryCondition::open) {
    // Field model end sites: U/2 + Y/2 = D - Y/2.
    out.boundary_mismatch = (s.d - s.edge_first(bc)) - 0.5 * out.target.y;
    out.boundary_matchable = std::abs(out.boundary_mismatch) <= 1e-12 * std::max(1.0, std::abs(s.d));
  } else if (bc == BoundaryCondition::zero_zero) {
    out.boundary_mismatch = std::max(std::abs(s.edge_first(bc) - s.d), std::abs(s.edge_last(bc) - s.d));
    out.boundary_matchable = out.boundary_mismatch <= 1e-12 * std::max(1.0, std::abs(s.d));
  }
  return out;
}

MatchConstraints MatchConstraints::defaults(MatchGeometry g) {
  MatchConstraints c;
  if (g == MatchGeometry::three_leg) c.v0_over_delta = 2.0;
  if (g == MatchGeometry::clock) {
    c.v0_over_delta = 2.0;
    c.omega = 1.0;
  }
  return c;
}

namespace {

enum Param { kV0, kDelta, kDelta0, kOmega, kRho };
constexpr const char* kParamNames[] = {"v0", "delta", "delta0", "omega", "rho"};

bool log_scaled(int p) { return p == kV0 || p == kRho; }

std::vector<double> equations(MatchGeometry g, const TargetCouplings& t) {
  if (g == MatchGeometry::clock) return {t.u, t.x, t.y};
  return {t.u, t.x, t.y, t.yp};
}

// Root of f on [lo, hi], after widening a scan for a sign change.
std::optional<double> bracket_root(const std::function<double(double)>& f, double lo, double hi,
                                   int scan = 400) {
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
    const double fx = f(x);
    if (std::isfinite(prev_f) && std::isfinite(fx) && (prev_f <= 0.0) != (fx <= 0.0)) {
      double a = prev_x;
      double b = x;
      double fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm <= 0.0) == (fa <= 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
    prev_f = fx;
  }
  return std::nullopt;
}

// Couplings of a unit-V0 ladder at aspect ratio rho.
struct UnitCouplings {
  double v1, v2, v3;
};

UnitCouplings unit_couplings(double rho, bool three_leg) {
  const double r2 = rho * rho;
  UnitCouplings u;
  u.v1 = std::pow(rho, 6);
  u.v2 = std::pow(r2 / (1.0 + r2), 3);
  u.v3 = three_leg ? std::pow(r2 / (1.0 + 4.0 * r2), 3) : u.v2;
  return u;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_reachable(MatchGeometry g, const TargetCouplings& t) {
  if (g == MatchGeometry::two_leg) {
    if (!(t.y < 0.0)) {
      throw ConfigError("unreachable target: two-leg ladders only realise Y < 0 (Y = -V2), got Y = " +
                        describe(t.y));
    }
    if (!(t.y + t.yp > 0.0)) {
      throw ConfigError("unreachable target: two-leg ladders need Y + Y' = (V1 - V2)/2 > 0, got " +
                        describe(t.y + t.yp));
    }
    if (t.x == 0.0) throw ConfigError("unreachable target: X = -Omega must be nonzero");
  } else if (g == MatchGeometry::clock) {
    if (!(t.y < 0.0)) {
      throw ConfigError("unreachable target: the clock family only realises Y = V2 - V1 < 0, got Y = " +
                        describe(t.y));
    }
    if (std::abs(t.yp + 1.5 * t.y) > 1e-9 * std::abs(t.y)) {
      throw ConfigError("unreachable target: the clock family fixes Y'/Y = -3/2, got Y'/Y = " +
                        describe(t.yp / t.y));
    }
    if (!(t.x > 0.0)) throw ConfigError("unreachable target: X = 2J must be positive");
  } else {
    if (!(t.y + t.yp > 0.0)) {
      throw ConfigError("unreachable target: three-leg ladders need Y + Y' = (V1 - V3)/2 > 0, got " +
                        describe(t.y + t.yp));
    }
    if (!(t.x > 0.0)) throw ConfigError("unreachable target: X = 2J must be positive");
  }
}

// Starting point from the structured solve: fix rho from a coupling ratio by
// bisection, then the scale, then the remaining parameters one at a time.
DeviceParams seed(MatchGeometry g, const TargetCouplings& t, const MatchConstraints& c) {
  DeviceParams p;
  const double ratio = c.v0_over_delta.value_or(2.0);
  if (g == MatchGeometry::two_leg) {
    const double v2 = -t.y;
    const double v1 = 2.0 * t.yp + t.y;
    if (!(v1 > v2)) {
      throw ConfigError("unreachable target: two-leg ladders need Y' > -Y so that V1 > V2");
    }
    p.rho = std::sqrt(std::cbrt(v1 / v2) - 1.0);
    p.v0 = v1 / std::pow(p.rho, 6);
    p.omega = -t.x;
    p.delta = v2 - 0.5 * t.u;
    p.delta0 = 0.0;
    return p;
  }
  if (g == MatchGeometry::three_leg) {
    const double q = t.y / (t.y + t.yp);
    auto f = [&](double rho) {
      const UnitCouplings u = unit_couplings(rho, true);
      return (2.0 * u.v2 - u.v1 - u.v3) / (0.5 * (u.v1 - u.v3)) - q;
    };
    const auto rho = bracket_root(f, 0.02, 5.0);
    if (!rho) {
      throw ConfigError("unreachable target: Y/(Y + Y') = " + describe(q) +
                        " is outside the range reachable by the three-leg ladder");
    }
    const UnitCouplings u = unit_couplings(*rho, true);
    p.rho = *rho;
    p.v0 = (t.y + t.yp) / (0.5 * (u.v1 - u.v3));
    p.delta = p.v0 / ratio;
    const double omega_sq = 2.0 * t.x * p.delta * (p.v0 - p.delta) / p.v0;
    if (!(omega_sq > 0.0)) throw ConfigError("unreachable target: X requires 0 < Delta < V0");
    p.omega = std::sqrt(omega_sq);
    p.delta0 = 0.5 * (t.u - t.x - 2.0 * p.v0 * (u.v3 - u.v1));
    return p;
  }
  // Clock family.
  p.omega = c.omega.value_or(1.0);
  if (!(ratio > 1.0)) throw ConfigError("clock matching needs V0/Delta > 1");
  p.v0 = p.omega * p.omega * ratio * ratio / (2.0 * t.x * (ratio - 1.0));
  p.delta = p.v0 / ratio;
  auto f = [&](double rho) {
    const UnitCouplings u = unit_couplings(rho, false);
    return p.v0 * (u.v2 - u.v1) - t.y;
  };
  const auto rho = bracket_root(f, 1e-3, 10.0);
  if (!rho) throw ConfigError("unreachable target: no aspect ratio gives Y = " + describe(t.y));
  p.rho = *rho;
  p.delta0 = 0.5 * t.u - t.y;
  return p;
}

} // namespace

InverseMatch match_inverse(MatchGeometry g, const TargetCouplings& target) {
  return match_inverse(g, target, MatchConstraints::defaults(g));
}

InverseMatch match_inverse(MatchGeometry g, const TargetCouplings& target,
                           const MatchConstraints& constraints) {
  check_reachable(g, target);
  const std::vector<double> goal = equations(g, target);

  // Free parameters after removing the fixed ones.
  std::array<std::optional<double>, 5> fixed = {constraints.v0, constraints.delta,
                                                constraints.delta0, constraints.omega,
                                                constraints.rho};
  if (g == MatchGeometry::two_leg) fixed[kDelta0] = 0.0;
  if (constraints.v0_over_delta && constraints.delta) {
    throw ConfigError("fix either delta or v0_over_delta, not both");
  }
  std::vector<int> free;
  for (int i = 0; i < 5; ++i) {
    if (fixed[i]) continue;
    if (i == kDelta && constraints.v0_over_delta) continue;
    free.push_back(i);
  }
  if (free.size() != goal.size()) {
    std::string names;
    for (int i : free) names += std::string(names.empty() ? "" : ", ") + kParamNames[i];
    throw ConfigError("matching " + std::string(to_string(g)) + " needs exactly " +
                      std::to_string(goal.size()) + " free parameters, got " +
                      std::to_string(free.size()) + " (" + names + ")");
  }

  DeviceParams start = seed(g, target, constraints);
  auto assemble = [&](const Eigen::VectorXd& z) {
    std::array<double, 5> v = {start.v0, start.delta, start.delta0, start.omega, start.rho};
    for (int i = 0; i < 5; ++i) {
      if (fixed[i]) v[i] = *fixed[i];
    }
    for (std::size_t k = 0; k < free.size(); ++k) {
      v[free[k]] = log_scaled(free[k]) ? std::exp(z[k]) : z[k];
    }
    if (constraints.v0_over_delta) v[kDelta] = v[kV0] / *constraints.v0_over_delta;
    return DeviceParams{v[kV0], v[kDelta], v[kDelta0], v[kOmega], v[kRho]};
  };
  double scale = 0.0;
  for (double gval : goal) scale = std::max(scale, std::abs(gval));
  if (scale == 0.0) scale = 1.0;
  auto residual = [&](const Eigen::VectorXd& z, Eigen::VectorXd& r) {
    r.resize(static_cast<Eigen::Index>(goal.size()));
    try {
      const DeviceParams p = assemble(z);
      if (!(p.v0 > 0.0) || !(p.rho > 0.0)) return false;
      const ForwardMatch f = match_forward(g, p, BoundaryCondition::zero_zero);
      const std::vector<double> got = equations(g, f.target);
      for (std::size_t i = 0; i < goal.size(); ++i) r[i] = (got[i] - goal[i]) / scale;
      return r.allFinite();
    } catch (const Error&) {
      return false;
    }
  };

  const std::array<double, 5> start_values = {start.v0, start.delta, start.delta0, start.omega,
                                              start.rho};
  Eigen::VectorXd z(static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const double v = start_values[free[k]];
    z[k] = log_scaled(free[k]) ? std::log(v) : v;
  }

  Eigen::VectorXd r;
  if (!residual(z, r)) throw NumericError("matching seed lies on a resonance");
  InverseMatch out;
  const int n = static_cast<int>(free.size());
  for (int it = 0; it < 100 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
    Eigen::MatrixXd jac(n, n);
    for (int k = 0; k < n; ++k) {
      const double h = 1e-6 * std::max(std::abs(z[k]), 1e-2);
      Eigen::VectorXd zp = z, zm = z, rp, rm;
      zp[k] += h;
      zm[k] -= h;
      if (!residual(zp, rp) || !residual(zm, rm)) throw NumericError("matching Jacobian hit a resonance");
      jac.col(k) = (rp - rm) / (2.0 * h);
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
      Eigen::VectorXd trial_r;
      const Eigen::VectorXd trial = z + lambda * step;
      if (residual(trial, trial_r) && trial_r.norm() < r.norm()) {
        z = trial;
        r = trial_r;
        improved = true;
        break;
      }
    }
    out.iterations = it + 1;
    if (!improved) break;
  }
  out.params = assemble(z);
  out.residual = r.lpNorm<Eigen::Infinity>();
  out.exact = out.residual <= 1e-10;
  if (!out.exact) {
    throw NumericError("matching did not converge (max relative residual " + describe(out.residual) +
                           ")",
                       out.residual);
  }
  return out;
}

} // namespace rydberg
