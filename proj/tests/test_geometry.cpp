#include <doctest.h>

#include <cmath>
#include <random>

#include "rydberg/geometry.hpp"

using namespace rydberg;

TEST_CASE("rectangular two-leg ladder positions") {
  const AtomArray atoms = build_ladder({LadderKind::two_leg, 2, 2.0, 1.0, std::nullopt, std::nullopt});
  REQUIRE(atoms.size() == 4);
  const std::vector<Position> expected{{0, 0, 0}, {0, 1, 0}, {2, 0, 0}, {2, 1, 0}};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) CHECK(atoms.positions[i][k] == doctest::Approx(expected[i][k]));
  }
  CHECK(atoms.rung_of == std::vector<int>{0, 0, 1, 1});
  CHECK(atoms.leg_of == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("three-leg rung spans two lattice spacings") {
  const AtomArray atoms = build_ladder({LadderKind::three_leg, 1, 1.0, 1.0, std::nullopt, std::nullopt});
  CHECK(distance(atoms.positions[0], atoms.positions[2]) == doctest::Approx(2.0));
  const CouplingMatrix v = pairwise_couplings(atoms, 40.0);
  CHECK(v.named.at("V0p") == doctest::Approx(v.named.at("V0") / 64.0));
}

TEST_CASE("prism rung is equilateral") {
  const AtomArray atoms = build_ladder({LadderKind::prism, 1, 1.0, 1.0, std::nullopt, std::nullopt});
  CHECK(distance(atoms.positions[0], atoms.positions[1]) == doctest::Approx(1.0));
  CHECK(distance(atoms.positions[1], atoms.positions[2]) == doctest::Approx(1.0));
  CHECK(distance(atoms.positions[0], atoms.positions[2]) == doctest::Approx(1.0));
}

TEST_CASE("rubidium rung length gives V0 near 1000 x 2pi") {
  const double v0 = van_der_waals(kDefaultC6, 3.083);
  CHECK(v0 / kTwoPi == doctest::Approx(1000.0).epsilon(1e-3));
  CHECK(spacing_for_coupling(kDefaultC6, v0) == doctest::Approx(3.083));
}

TEST_CASE("three-leg couplings at rho = 1/3") {
  const double v0 = 40 * kTwoPi;
  const AtomArray atoms = build_ladder({LadderKind::three_leg, 2, 3.0, 1.0, std::nullopt, std::nullopt});
  const CouplingMatrix v = pairwise_couplings(atoms, v0);
  // 40 rho^6 / (1 + rho^2)^3 = 40 / 1000 exactly.
  CHECK(v.named.at("V2") / kTwoPi == doctest::Approx(0.04).epsilon(1e-14));
  CHECK(v.named.at("V1") / kTwoPi == doctest::Approx(40.0 / 729.0).epsilon(1e-14));
}

TEST_CASE("blockade radius") {
  CHECK(blockade_radius(1000 * kTwoPi, 10 * kTwoPi) == doctest::Approx(2.154).epsilon(1e-3));
  CHECK(blockade_radius(5.0, 5.0) == doctest::Approx(1.0));
  CHECK(blockade_radius(7.0, 1.0) / blockade_radius(7.0, 64.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(blockade_radius(7.0, 0.0), ConfigError);
}

TEST_CASE("couplings are symmetric and positive for random geometries") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (LadderKind kind : {LadderKind::chain, LadderKind::two_leg, LadderKind::three_leg, LadderKind::prism,
                          LadderKind::in_plane_triangle}) {
    LadderSpec spec{kind, 3, u(rng), u(rng), std::nullopt, std::nullopt};
    const AtomArray atoms = build_ladder(spec);
    const CouplingMatrix v = pairwise_couplings(atoms, 100.0);
    CHECK((v.v - v.v.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < atoms.size(); ++i) {
      CHECK(v.v(i, i) == 0.0);
      for (int j = 0; j < atoms.size(); ++j) {
        if (i != j) CHECK(v.v(i, j) > 0.0);
      }
    }
  }
}

TEST_CASE("invalid geometry is rejected") {
  CHECK_THROWS_AS(build_ladder({LadderKind::two_leg, 0, 1.0, 1.0, std::nullopt, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(build_ladder({LadderKind::two_leg, 2, -1.0, 1.0, std::nullopt, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(build_ladder({LadderKind::two_leg, 2, 1.0, 1.0, 0.5, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(parse_ladder_kind("four-leg"), ConfigError);
  CHECK_THROWS_AS(build_ladder({LadderKind::prism, 2, 1.0, 1.0, std::nullopt, -0.5}), ConfigError);
}

TEST_CASE("middle-leg offset and pinned boundary") {
  AtomArray atoms = build_ladder({LadderKind::three_leg, 2, 2.0, 1.0, std::nullopt, std::nullopt});
  apply_middle_leg_offset(atoms, 0.3);
  CHECK(atoms.detuning_offset == std::vector<double>{0, 0.3, 0, 0, 0.3, 0});
  pin_zero_boundary(atoms, {1}, 64.0, 3.0);
  // Rung 0 feels the left pin only (the right pin is two rungs away, beyond the cutoff).
  CHECK(atoms.detuning_offset[1] == doctest::Approx(0.3 - 64.0 / std::pow(2.0, 6)));
  CHECK(atoms.detuning_offset[0] == doctest::Approx(-64.0 / std::pow(5.0, 3)));
  AtomArray two = build_ladder({LadderKind::two_leg, 2, 2.0, 1.0, std::nullopt, std::nullopt});
  CHECK_THROWS_AS(apply_middle_leg_offset(two, 0.1), ConfigError);
}
