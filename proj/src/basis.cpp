#include "rydberg/basis.hpp"

#include <bit>
#include <complex>
#include <string>

namespace rydberg {

RydbergBasis::RydbergBasis(int n_atoms, int atoms_per_rung, std::optional<int> max_per_rung)
    : n_atoms_(n_atoms), atoms_per_rung_(atoms_per_rung), max_per_rung_(max_per_rung) {
  if (n_atoms < 1) throw ConfigError("a Rydberg basis needs at least one atom");
  if (n_atoms > kMaxAtoms) {
    throw DimensionError("Rydberg basis with " + std::to_string(n_atoms) +
                         " atoms exceeds the limit of " + std::to_string(kMaxAtoms) + " atoms");
  }
  if (atoms_per_rung < 1 || n_atoms % atoms_per_rung != 0) {
    throw ConfigError("atom count must be a multiple of the rung size");
  }
  if (max_per_rung && *max_per_rung < 0) throw ConfigError("per-rung cap must be non-negative");

  rung_mask_ = (Config{1} << atoms_per_rung) - 1;
  pattern_rank_.assign(std::size_t{1} << atoms_per_rung, -1);
  for (Config p = 0; p <= rung_mask_; ++p) {
    if (max_per_rung && std::popcount(p) > *max_per_rung) continue;
    pattern_rank_[p] = static_cast<std::int32_t>(rung_patterns_.size());
    rung_patterns_.push_back(p);
  }

  const int rungs = n_rungs();
  const std::size_t k = rung_patterns_.size();
  std::size_t total = 1;
  for (int r = 0; r < rungs; ++r) total *= k;
  states_.resize(total);
  std::vector<std::size_t> digit(rungs, 0);
  for (std::size_t index = 0; index < total; ++index) {
    Config c = 0;
    for (int r = 0; r < rungs; ++r) c |= rung_patterns_[digit[r]] << (r * atoms_per_rung_);
    states_[index] = c;
    for (int r = 0; r < rungs; ++r) {
      if (++digit[r] < k) break;
      digit[r] = 0;
    }
  }
}

std::optional<std::size_t> RydbergBasis::index_of(Config config) const {
  if (n_atoms_ < 64 && (config >> n_atoms_) != 0) return std::nullopt;
  if (!max_per_rung_) return static_cast<std::size_t>(config);
  const std::size_t k = rung_patterns_.size();
  std::size_t index = 0;
  for (int r = n_rungs() - 1; r >= 0; --r) {
    const std::int32_t rank = pattern_rank_[rung_pattern(config, r)];
    if (rank < 0) return std::nullopt;
    index = index * k + static_cast<std::size_t>(rank);
  }
  return index;
}

RydbergBasis enumerate_rydberg(int n_atoms, int atoms_per_rung, std::optional<int> max_per_rung) {
  return RydbergBasis(n_atoms, atoms_per_rung, max_per_rung);
}

SpinBasis::SpinBasis(int n_sites, int m_max) : n_sites_(n_sites), m_max_(m_max) {
  if (n_sites < 1) throw ConfigError("a spin chain needs at least one site");
  if (m_max < 1) throw ConfigError("spin truncation m_max must be at least 1");
  const std::size_t d = static_cast<std::size_t>(local_dim());
  size_ = 1;
  strides_.resize(n_sites);
  for (int i = 0; i < n_sites; ++i) {
    strides_[i] = size_;
    if (size_ > (std::size_t{1} << 40) / d) {
      throw DimensionError("spin basis with " + std::to_string(n_sites) +
                           " sites exceeds the 2^40 state limit");
    }
    size_ *= d;
  }
}

int SpinBasis::m(std::size_t index, int site) const {
  return static_cast<int>((index / strides_[site]) % static_cast<std::size_t>(local_dim())) -
         m_max_;
}

std::vector<int> SpinBasis::spins(std::size_t index) const {
  std::vector<int> out(n_sites_);
  for (int i = 0; i < n_sites_; ++i) out[i] = m(index, i);
  return out;
}

std::size_t SpinBasis::index_of(std::span<const int> spins) const {
  std::size_t index = 0;
  for (int i = 0; i < n_sites_; ++i) {
    index += static_cast<std::size_t>(spins[i] + m_max_) * strides_[i];
  }
  return index;
}

StateDictionary::StateDictionary(LadderKind kind) : kind_(kind), legs_(legs_per_rung(kind)) {
  switch (kind) {
  case LadderKind::chain:
    throw ConfigError("a single-leg chain has no spin-1 dictionary");
  case LadderKind::two_leg:
    plus_leg_ = 1;
    minus_leg_ = 0;
    patterns_ = {0b01, 0b00, 0b10};
    break;
  default:
    plus_leg_ = 0;
    minus_leg_ = 2;
    patterns_ = {0b100, 0b010, 0b001};
    break;
  }
}

std::optional<int> StateDictionary::spin_of(Config rung_pattern) const {
  for (int m = -1; m <= 1; ++m) {
    if (patterns_[m + 1] == rung_pattern) return m;
  }
  return std::nullopt;
}

std::vector<int> StateDictionary::zero_legs() const {
  std::vector<int> legs;
  for (int leg = 0; leg < legs_; ++leg) {
    if ((patterns_[1] >> leg) & 1) legs.push_back(leg);
  }
  return legs;
}

SectorMap project_to_spin1(const RydbergBasis& basis, const StateDictionary& dict) {
  if (basis.atoms_per_rung() != dict.legs()) {
    throw ConfigError("dictionary rung size does not match the basis");
  }
  const int rungs = basis.n_rungs();
  const SpinBasis spins(rungs, 1);
  SectorMap map;
  map.spin_index.assign(basis.size(), std::nullopt);
  map.rydberg_index.assign(spins.size(), 0);
  for (std::size_t s = 0; s < spins.size(); ++s) {
    Config c = 0;
    for (int r = 0; r < rungs; ++r) {
      c |= dict.pattern_of(spins.m(s, r)) << (r * basis.atoms_per_rung());
    }
    const auto idx = basis.index_of(c);
    if (!idx) throw ConfigError("basis constraint excludes part of the spin-1 sector");
    map.rydberg_index[s] = *idx;
    map.spin_index[*idx] = s;
  }
  return map;
}

namespace {

template <typename Vec>
double overlap_impl(const Vec& psi, const RydbergBasis& basis, const StateDictionary& dict) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) {
    throw ConfigError("state dimension does not match the basis");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Config c = basis.state(i);
    bool inside = true;
    for (int r = 0; r < basis.n_rungs() && inside; ++r) {
      inside = dict.spin_of(basis.rung_pattern(c, r)).has_value();
    }
    if (inside) total += std::norm(psi[static_cast<Eigen::Index>(i)]);
  }
  return total;
}

} // namespace

double sector_overlap(const Eigen::VectorXcd& psi, const RydbergBasis& basis,
                      const StateDictionary& dict) {
  return overlap_impl(psi, basis, dict);
}

double sector_overlap(const Eigen::VectorXd& psi, const RydbergBasis& basis,
                      const StateDictionary& dict) {
  return overlap_impl(psi, basis, dict);
}

} // namespace rydberg
