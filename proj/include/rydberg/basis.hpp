#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rydberg/geometry.hpp"

namespace rydberg {

using Config = std::uint64_t;

inline constexpr int kMaxAtoms = 26;

// Bit configurations of an atom array, bit b set <=> atom b in |r>.
// Atom index = rung * atoms_per_rung + leg, so each rung is a contiguous group
// of bits. With a per-rung cap, the allowed rung patterns are enumerated once
// and a configuration's index is its mixed-radix rank over those patterns.
class RydbergBasis {
public:
  RydbergBasis(int n_atoms, int atoms_per_rung, std::optional<int> max_per_rung = std::nullopt);

  int n_atoms() const { return n_atoms_; }
  int atoms_per_rung() const { return atoms_per_rung_; }
  int n_rungs() const { return n_atoms_ / atoms_per_rung_; }
  std::optional<int> max_per_rung() const { return max_per_rung_; }
  std::size_t size() const { return states_.size(); }
  Config state(std::size_t index) const { return states_[index]; }
  const std::vector<Config>& states() const { return states_; }
  std::optional<std::size_t> index_of(Config config) const;

  Config rung_pattern(Config config, int rung) const {
    return (config >> (rung * atoms_per_rung_)) & rung_mask_;
  }

private:
  int n_atoms_;
  int atoms_per_rung_;
  std::optional<int> max_per_rung_;
  Config rung_mask_;
  std::vector<Config> states_;
  std::vector<Config> rung_patterns_;
  std::vector<std::int32_t> pattern_rank_; // pattern -> rank, -1 when excluded
};

RydbergBasis enumerate_rydberg(int n_atoms, int atoms_per_rung = 1,
                               std::optional<int> max_per_rung = std::nullopt);

// Truncated spins on n sites, m in [-m_max, m_max]. Index = sum_i (m_i + m_max) * d^i
// with d = 2 m_max + 1, so site 0 is the least significant digit.
class SpinBasis {
public:
  explicit SpinBasis(int n_sites, int m_max = 1);

  int n_sites() const { return n_sites_; }
  int m_max() const { return m_max_; }
  int local_dim() const { return 2 * m_max_ + 1; }
  std::size_t size() const { return size_; }
  int m(std::size_t index, int site) const;
  std::vector<int> spins(std::size_t index) const;
  std::size_t index_of(std::span<const int> spins) const;
  std::size_t stride(int site) const { return strides_[site]; }

private:
  int n_sites_;
  int m_max_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

inline SpinBasis spin1_basis(int n_sites) { return SpinBasis(n_sites, 1); }

// Per-rung map between Rydberg patterns and spin-1 labels.
//   two-leg:     |gg> -> 0, |gr> -> +1, |rg> -> -1   (leg 0 written first)
//   three-atom:  |rgg> -> +1, |grg> -> 0, |ggr> -> -1
class StateDictionary {
public:
  explicit StateDictionary(LadderKind kind);

  LadderKind kind() const { return kind_; }
  int legs() const { return legs_; }
  std::optional<int> spin_of(Config rung_pattern) const;
  Config pattern_of(int m) const { return patterns_[m + 1]; }
  // Leg carrying the +1 / -1 excitation.
  int plus_leg() const { return plus_leg_; }
  int minus_leg() const { return minus_leg_; }
  // Legs excited in the m = 0 pattern.
  std::vector<int> zero_legs() const;

private:
  LadderKind kind_;
  int legs_;
  int plus_leg_;
  int minus_leg_;
  std::array<Config, 3> patterns_;
};

struct SectorMap {
  // Position in the Rydberg basis of each spin-1 state, in SpinBasis order.
  std::vector<std::size_t> rydberg_index;
  // Spin-1 index of each Rydberg basis state, or nullopt outside the sector.
  std::vector<std::optional<std::size_t>> spin_index;
};

SectorMap project_to_spin1(const RydbergBasis& basis, const StateDictionary& dict);

// Probability weight of psi inside the spin-1 sector.
double sector_overlap(const Eigen::VectorXcd& psi, const RydbergBasis& basis,
                      const StateDictionary& dict);
double sector_overlap(const Eigen::VectorXd& psi, const RydbergBasis& basis,
                      const StateDictionary& dict);

} // namespace rydberg
