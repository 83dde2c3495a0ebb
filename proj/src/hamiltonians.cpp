#include "rydberg/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace rydberg {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
  case BoundaryCondition::open: return "obc";
  case BoundaryCondition::periodic: return "pbc";
  case BoundaryCondition::zero_zero: return "00";
  }
  return "unknown";
}

BoundaryCondition parse_boundary(std::string_view text) {
  if (text == "obc" || text == "open") return BoundaryCondition::open;
  if (text == "pbc" || text == "periodic") return BoundaryCondition::periodic;
  if (text == "00" || text == "00bc" || text == "zero-zero") return BoundaryCondition::zero_zero;
  throw ConfigError("unknown boundary condition '" + std::string(text) +
                    "' (expected obc, pbc or 00)");
}

std::string_view to_string(HoppingFlavor flavor) {
  return flavor == HoppingFlavor::ladder ? "ladder" : "clock";
}

HoppingFlavor parse_flavor(std::string_view text) {
  if (text == "ladder" || text == "U") return HoppingFlavor::ladder;
  if (text == "clock" || text == "C") return HoppingFlavor::clock;
  throw ConfigError("unknown hopping flavor '" + std::string(text) + "' (expected ladder or clock)");
}

namespace {

int bond_count(int n_sites, BoundaryCondition bc) {
  if (bc == BoundaryCondition::periodic && n_sites >= 3) return n_sites;
  return n_sites - 1;
}

// Nearest-neighbour bonds (i, i+1), plus the wrap bond for periodic chains of
// at least three sites.
std::vector<std::pair<int, int>> chain_bonds(int n_sites, BoundaryCondition bc, int k = 1) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + k < n_sites; ++i) bonds.emplace_back(i, i + k);
  if (bc == BoundaryCondition::periodic && 2 * k < n_sites) {
    for (int i = n_sites - k; i < n_sites; ++i) bonds.emplace_back(i, (i + k) % n_sites);
  }
  return bonds;
}

// Adds -amplitude * (X^+ + X^-) on every site of a spin chain.
void add_hopping(OperatorBuilder& builder, const SpinBasis& basis, double amplitude,
                 HoppingFlavor flavor) {
  if (amplitude == 0.0) return;
  const int m_max = basis.m_max();
  for (std::size_t s = 0; s < basis.size(); ++s) {
    for (int p = 0; p < basis.n_sites(); ++p) {
      const int m = basis.m(s, p);
      if (m < m_max) builder.add(s, s + basis.stride(p), -amplitude);
      if (flavor == HoppingFlavor::clock && m == m_max) {
        builder.add(s, s - 2 * static_cast<std::size_t>(m_max) * basis.stride(p), -amplitude);
      }
    }
  }
}

} // namespace

double EffectiveCoefficients::constant(int n_sites, BoundaryCondition bc) const {
  double c = n_sites * const_per_site + bond_count(n_sites, bc) * const_per_bond;
  if (bc == BoundaryCondition::zero_zero) c += zero_bc_const;
  return c;
}

double EffectiveCoefficients::edge_first(BoundaryCondition bc) const {
  if (bc == BoundaryCondition::periodic) return d;
  return d_first.value_or(d) + (bc == BoundaryCondition::zero_zero ? zero_bc_first : 0.0);
}

double EffectiveCoefficients::edge_last(BoundaryCondition bc) const {
  if (bc == BoundaryCondition::periodic) return d;
  return d_last.value_or(d) + (bc == BoundaryCondition::zero_zero ? zero_bc_last : 0.0);
}

double rydberg_diagonal(const AtomArray& atoms, double delta, const CouplingMatrix& couplings,
                        Config config, std::optional<double> range_cutoff) {
  const int n = atoms.size();
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!((config >> i) & 1)) continue;
    e -= delta + atoms.detuning_offset[i];
    for (int j = i + 1; j < n; ++j) {
      if (!((config >> j) & 1)) continue;
      if (range_cutoff && rung_separation(atoms, i, j) > *range_cutoff) continue;
      e += couplings.v(i, j);
    }
  }
  return e;
}

SparseOperator rydberg_hamiltonian(const AtomArray& atoms, double omega, double delta,
                                   const CouplingMatrix& couplings, const RydbergBasis& basis,
                                   std::optional<double> range_cutoff) {
  const int n = atoms.size();
  if (basis.n_atoms() != n) {
    throw ConfigError("basis has " + std::to_string(basis.n_atoms()) + " atoms but the array has " +
                      std::to_string(n));
  }
  if (couplings.v.rows() != n) throw ConfigError("coupling matrix does not match the atom array");

  struct Pair {
    int j;
    double v;
  };
  std::vector<std::vector<Pair>> partners(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (range_cutoff && rung_separation(atoms, i, j) > *range_cutoff) continue;
      partners[i].push_back({j, couplings.v(i, j)});
    }
  }

  OperatorBuilder builder(basis.size());
  const double half_omega = 0.5 * omega;
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const Config c = basis.state(idx);
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!((c >> i) & 1)) continue;
      e -= delta + atoms.detuning_offset[i];
      for (const Pair& p : partners[i]) {
        if ((c >> p.j) & 1) e += p.v;
      }
    }
    builder.add_diagonal(idx, e);
    if (half_omega == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Config flipped = c ^ (Config{1} << i);
      if (flipped < c) continue;
      if (const auto target = basis.index_of(flipped)) builder.add(idx, *target, half_omega);
    }
  }
  return builder.build();
}

SparseOperator effective_spin1_hamiltonian(const EffectiveCoefficients& coeffs, int n_sites,
                                           BoundaryCondition bc,
                                           std::span<const LongRangeTerm> extra_long_range) {
  const SpinBasis basis(n_sites, 1);
  std::vector<double> site_d(n_sites, coeffs.d);
  if (bc != BoundaryCondition::periodic) {
    site_d.front() = coeffs.edge_first(bc);
    if (n_sites > 1) site_d.back() = coeffs.edge_last(bc);
    else site_d.front() += coeffs.edge_last(bc) - coeffs.d;
  }

  struct Coupling {
    int a, b;
    double r, rp;
  };
  std::vector<Coupling> couplings;
  for (auto [a, b] : chain_bonds(n_sites, bc)) couplings.push_back({a, b, coeffs.r, coeffs.rp});
  std::vector<LongRangeTerm> terms = coeffs.long_range;
  terms.insert(terms.end(), extra_long_range.begin(), extra_long_range.end());
  for (const LongRangeTerm& t : terms) {
    if (t.k < 1) throw ConfigError("long-range distance k must be positive");
    if (t.k >= n_sites) {
      std::cerr << "warning: long-range term k=" << t.k << " ignored on " << n_sites
                << " sites\n";
      continue;
    }
    for (auto [a, b] : chain_bonds(n_sites, bc, t.k)) couplings.push_back({a, b, t.r, t.rp});
  }

  const double identity = coeffs.constant(n_sites, bc);
  OperatorBuilder builder(basis.size());
  for (std::size_t s = 0; s < basis.size(); ++s) {
    double e = identity;
    for (int i = 0; i < n_sites; ++i) {
      const int m = basis.m(s, i);
      e += site_d[i] * m * m;
    }
    for (const Coupling& c : couplings) {
      const int ma = basis.m(s, c.a);
      const int mb = basis.m(s, c.b);
      e += c.r * ma * mb + c.rp * ma * ma * mb * mb;
    }
    builder.add_diagonal(s, e);
  }
  add_hopping(builder, basis, coeffs.j, coeffs.flavor);
  return builder.build();
}

SparseOperator cahm_hamiltonian(const TargetCouplings& t, int n_sites, int m_max) {
  const SpinBasis basis(n_sites, m_max);
  OperatorBuilder builder(basis.size());
  const auto bonds = chain_bonds(n_sites, BoundaryCondition::open);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    double e = 0.0;
    for (int i = 0; i < n_sites; ++i) {
      const int m = basis.m(s, i);
      e += 0.5 * t.u * m * m;
    }
    for (auto [a, b] : bonds) e -= t.y * basis.m(s, a) * basis.m(s, b);
    builder.add_diagonal(s, e);
  }
  add_hopping(builder, basis, 0.5 * t.x, HoppingFlavor::ladder);
  return builder.build();
}

ChargeSector charge_sector(int n_sites, int m_max) {
  if (n_sites < 1) throw ConfigError("charge representation needs at least one site");
  ChargeSector sector;
  sector.n_links = n_sites + 1;
  sector.m_max = m_max;
  std::vector<int> s(sector.n_links, -m_max);
  // Lexicographic enumeration with link 1 most significant.
  while (true) {
    int total = 0;
    for (int v : s) total += v;
    if (total == 0) sector.states.push_back(s);
    int pos = sector.n_links - 1;
    while (pos >= 0 && s[pos] == m_max) {
      s[pos] = -m_max;
      --pos;
    }
    if (pos < 0) break;
    ++s[pos];
  }
  return sector;
}

std::vector<std::vector<int>> charge_kernel(int n_sites) {
  std::vector<std::vector<int>> c(n_sites, std::vector<int>(n_sites));
  for (int j = 1; j <= n_sites; ++j) {
    for (int k = 1; k <= n_sites; ++k) c[j - 1][k - 1] = n_sites + 1 - std::max(j, k);
  }
  return c;
}

SparseOperator sqed_charge_hamiltonian(const TargetCouplings& t, int n_sites, int m_max) {
  const ChargeSector sector = charge_sector(n_sites, m_max);
  const auto kernel = charge_kernel(n_sites);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < sector.states.size(); ++i) index[sector.states[i]] = i;

  OperatorBuilder builder(sector.states.size());
  for (std::size_t i = 0; i < sector.states.size(); ++i) {
    const std::vector<int>& s = sector.states[i];
    double e = 0.0;
    for (int j = 0; j < n_sites; ++j) {
      for (int k = 0; k < n_sites; ++k) e += 0.5 * t.u * kernel[j][k] * s[j] * s[k];
    }
    for (int v : s) e += 0.5 * t.y * v * v;
    builder.add_diagonal(i, e);
    // U^+_l U^-_{l+1}; its Hermitian conjugate is the reverse move, added by symmetry.
    for (int l = 0; l < n_sites; ++l) {
      if (s[l] == m_max || s[l + 1] == -m_max) continue;
      std::vector<int> moved = s;
      ++moved[l];
      --moved[l + 1];
      builder.add(i, index.at(moved), -0.5 * t.x);
    }
  }
  return builder.build();
}

SparseOperator sqed_field_hamiltonian(const TargetCouplings& t, int n_sites, BoundaryCondition bc,
                                      HoppingFlavor flavor) {
  const SpinBasis basis(n_sites, 1);
  const auto bonds = chain_bonds(n_sites, bc);
  // Pinned L_0 = L_{N+1} = 0 bonds only contribute their (Y/2) L^2 piece.
  const bool pinned = bc == BoundaryCondition::zero_zero;
  OperatorBuilder builder(basis.size());
  for (std::size_t s = 0; s < basis.size(); ++s) {
    double e = 0.0;
    for (int p = 0; p < n_sites; ++p) {
      const int m = basis.m(s, p);
      e += 0.5 * t.u * m * m;
    }
    for (auto [a, b] : bonds) {
      const int ma = basis.m(s, a);
      const int mb = basis.m(s, b);
      e += 0.5 * t.y * (ma * ma + mb * mb) - (t.y + t.yp) * ma * mb + t.yp * ma * ma * mb * mb;
    }
    if (pinned) {
      const int first = basis.m(s, 0);
      const int last = basis.m(s, n_sites - 1);
      e += 0.5 * t.y * (first * first + last * last);
    }
    builder.add_diagonal(s, e);
  }
  add_hopping(builder, basis, 0.5 * t.x, flavor);
  return builder.build();
}

SparseOperator ising_chain(double j_coupling, double h_field, int n_sites, BoundaryCondition bc) {
  if (n_sites < 2) throw ConfigError("Ising chain needs at least two sites");
  if (n_sites > kMaxAtoms) throw DimensionError("Ising chain exceeds the 26-site limit");
  const std::size_t dim = std::size_t{1} << n_sites;
  const auto bonds = chain_bonds(n_sites, bc == BoundaryCondition::periodic
                                              ? BoundaryCondition::periodic
                                              : BoundaryCondition::open);
  OperatorBuilder builder(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    double e = 0.0;
    for (auto [a, b] : bonds) {
      const int za = ((c >> a) & 1) ? -1 : 1;
      const int zb = ((c >> b) & 1) ? -1 : 1;
      e -= j_coupling * za * zb;
    }
    builder.add_diagonal(c, e);
    if (h_field == 0.0) continue;
    for (int i = 0; i < n_sites; ++i) {
      const std::size_t f = c ^ (std::size_t{1} << i);
      if (f > c) builder.add(c, f, -h_field);
    }
  }
  return builder.build();
}

} // namespace rydberg
