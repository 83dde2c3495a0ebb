#include <doctest.h>

#include <cmath>
#include <vector>

#include "rydberg/basis.hpp"

using namespace rydberg;

TEST_CASE("unconstrained Rydberg basis sizes") {
  CHECK(enumerate_rydberg(2).size() == 4);
  CHECK(enumerate_rydberg(4).size() == 16);
  CHECK(enumerate_rydberg(10).size() == 1024);
  CHECK_THROWS_AS(enumerate_rydberg(kMaxAtoms + 1), DimensionError);
}

TEST_CASE("per-rung cap") {
  // Two-leg rungs with at most one excitation: 3 patterns per rung.
  const RydbergBasis capped = enumerate_rydberg(6, 2, 1);
  CHECK(capped.size() == 27);
  for (std::size_t i = 0; i < capped.size(); ++i) {
    const Config c = capped.state(i);
    for (int r = 0; r < 3; ++r) CHECK(capped.rung_pattern(c, r) != 0b11);
    CHECK(capped.index_of(c) == i);
  }
  CHECK_FALSE(capped.index_of(0b000011).has_value());
}

TEST_CASE("two-leg dictionary") {
  const StateDictionary dict(LadderKind::two_leg);
  CHECK(dict.spin_of(0b00) == 0);
  CHECK(dict.spin_of(0b10) == 1);
  CHECK(dict.spin_of(0b01) == -1);
  CHECK_FALSE(dict.spin_of(0b11).has_value());
  CHECK(dict.plus_leg() == 1);
  CHECK(dict.minus_leg() == 0);
  CHECK(dict.zero_legs().empty());
}

TEST_CASE("three-atom dictionary") {
  for (LadderKind kind : {LadderKind::three_leg, LadderKind::prism, LadderKind::in_plane_triangle}) {
    const StateDictionary dict(kind);
    CHECK(dict.spin_of(0b001) == 1);
    CHECK(dict.spin_of(0b010) == 0);
    CHECK(dict.spin_of(0b100) == -1);
    CHECK_FALSE(dict.spin_of(0b000).has_value());
    CHECK_FALSE(dict.spin_of(0b101).has_value());
    CHECK(dict.zero_legs() == std::vector<int>{1});
  }
  CHECK_THROWS_AS(StateDictionary(LadderKind::chain), ConfigError);
}

TEST_CASE("spin-1 sector of a two-rung ladder") {
  const RydbergBasis basis = enumerate_rydberg(4, 2);
  const StateDictionary dict(LadderKind::two_leg);
  const SectorMap map = project_to_spin1(basis, dict);
  CHECK(map.rydberg_index.size() == 9);
  const SpinBasis spins = spin1_basis(2);
  for (std::size_t s = 0; s < spins.size(); ++s) {
    const Config c = basis.state(map.rydberg_index[s]);
    for (int site = 0; site < 2; ++site) CHECK(dict.spin_of(basis.rung_pattern(c, site)) == spins.m(s, site));
    CHECK(map.spin_index[map.rydberg_index[s]] == s);
  }
  int outside = 0;
  for (const auto& idx : map.spin_index) outside += idx.has_value() ? 0 : 1;
  CHECK(outside == 16 - 9);
}

TEST_CASE("uniform superposition has sector weight (3/4)^N") {
  const StateDictionary dict(LadderKind::two_leg);
  for (int n : {1, 2, 3, 4}) {
    const RydbergBasis basis = enumerate_rydberg(2 * n, 2);
    const Eigen::VectorXcd psi =
        Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(basis.size()), 1.0 / std::sqrt(double(basis.size())));
    CHECK(sector_overlap(psi, basis, dict) == doctest::Approx(std::pow(0.75, n)));
  }
}

TEST_CASE("spin basis indexing") {
  const SpinBasis b(3, 1);
  CHECK(b.size() == 27);
  CHECK(b.spins(0) == std::vector<int>{-1, -1, -1});
  CHECK(b.spins(1) == std::vector<int>{0, -1, -1});
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::vector<int> s = b.spins(i);
    CHECK(b.index_of(s) == i);
  }
  const SpinBasis wide(2, 2);
  CHECK(wide.size() == 25);
  CHECK(wide.m(24, 1) == 2);
}
