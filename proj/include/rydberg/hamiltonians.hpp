#pragma once

#include <optional>
#include <span>

#include "rydberg/basis.hpp"
#include "rydberg/coefficients.hpp"
#include "rydberg/geometry.hpp"
#include "rydberg/sparse_operator.hpp"

namespace rydberg {

// Couplings of the compact-scalar-QED family. yp (Y') multiplies the quartic
// penalty of the field representation and is ignored by the CAHM builder.
struct TargetCouplings {
  double u = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yp = 0.0;
};

// (Omega/2) sum_i sigma^x_i - sum_i (Delta + offset_i) n_i + sum_{i<j} V_ij n_i n_j.
// With `range_cutoff`, pairs whose rung separation exceeds it are dropped.
SparseOperator rydberg_hamiltonian(const AtomArray& atoms, double omega, double delta,
                                   const CouplingMatrix& couplings, const RydbergBasis& basis,
                                   std::optional<double> range_cutoff = std::nullopt);

// Diagonal energy of one configuration (the Omega = 0 part of the above).
double rydberg_diagonal(const AtomArray& atoms, double delta, const CouplingMatrix& couplings,
                        Config config, std::optional<double> range_cutoff = std::nullopt);

// Generic spin-1 chain over SpinBasis(n_sites, 1). Long-range terms come from
// coeffs.long_range plus the optional `extra_long_range` list; terms with
// k >= n_sites are skipped with a warning on stderr.
SparseOperator effective_spin1_hamiltonian(const EffectiveCoefficients& coeffs, int n_sites,
                                           BoundaryCondition bc,
                                           std::span<const LongRangeTerm> extra_long_range = {});

// (U/2) sum (L^z)^2 - Y sum L^z_i L^z_{i+1} - X sum U^x_i,  U^x = (U^+ + U^-)/2.
SparseOperator cahm_hamiltonian(const TargetCouplings& t, int n_sites, int m_max = 1);

// Charge representation on n_sites + 1 links with zero total charge.
struct ChargeSector {
  int n_links = 0;
  int m_max = 1;
  std::vector<std::vector<int>> states;
};

ChargeSector charge_sector(int n_sites, int m_max = 1);

// c_jk = N_s + 1 - max(j, k) for 1 <= j, k <= N_s (returned 0-based).
std::vector<std::vector<int>> charge_kernel(int n_sites);

SparseOperator sqed_charge_hamiltonian(const TargetCouplings& t, int n_sites, int m_max = 1);

// Field representation with the Y' penalty, in expanded form:
//   (U/2 + Y) sum (L_p)^2 - (Y + Y') sum L_p L_{p-1} + Y' sum (L_p)^2 (L_{p-1})^2
//   - (X/2) sum (X_p^+ + X_p^-)
// Under zero_zero the sums over bonds include the pinned L_0 = L_{N+1} = 0;
// under open boundaries the end sites carry U/2 + Y/2.
SparseOperator sqed_field_hamiltonian(const TargetCouplings& t, int n_sites, BoundaryCondition bc,
                                      HoppingFlavor flavor = HoppingFlavor::ladder);

// -j sum sigma^z sigma^z - h sum sigma^x on n_sites qubits (bit i = spin down).
SparseOperator ising_chain(double j_coupling, double h_field, int n_sites, BoundaryCondition bc);

} // namespace rydberg
