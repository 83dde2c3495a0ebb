#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rydberg/effective.hpp"
#include "rydberg/hamiltonians.hpp"
#include "rydberg/solvers.hpp"

using namespace rydberg;

namespace {

SparseOperator single_atom(double omega, double delta) {
  const AtomArray atom = build_ladder({LadderKind::chain, 1, 1.0, 1.0, std::nullopt, std::nullopt});
  return rydberg_hamiltonian(atom, omega, delta, pairwise_couplings(atom), enumerate_rydberg(1));
}

StateVector ground_ket(std::size_t dim) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  psi(0) = 1.0;
  return psi;
}

SparseOperator random_chain(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  EffectiveCoefficients c;
  c.d = u(rng);
  c.r = u(rng);
  c.rp = u(rng);
  c.j = u(rng);
  return effective_spin1_hamiltonian(c, n, BoundaryCondition::open);
}

} // namespace

TEST_CASE("resonant and detuned Rabi oscillation") {
  const double omega = 2.0;
  for (double delta : {0.0, 1.5}) {
    const SparseOperator h = single_atom(omega, delta);
    const double w = std::sqrt(omega * omega + delta * delta);
    const Trajectory tr = krylov_evolve(h, ground_ket(2), 3.0, 0.1);
    REQUIRE(tr.times.size() == 31);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double t = tr.times[k];
      const double expected = omega * omega / (w * w) * std::pow(std::sin(w * t / 2), 2);
      CHECK(std::norm(tr.states[k](1)) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("trajectory starts at the initial state") {
  const SparseOperator h = random_chain(3, 5);
  StateVector psi = StateVector::Zero(27);
  psi(4) = 1.0;
  const Trajectory tr = krylov_evolve(h, psi, 0.35, 0.1);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(0.35));
  CHECK(tr.times.size() == 5);
  CHECK((tr.states.front() - psi).norm() == 0.0);
}

TEST_CASE("diagonal Hamiltonians keep basis states") {
  EffectiveCoefficients c;
  c.d = 0.4;
  c.r = -0.3;
  const SparseOperator h = effective_spin1_hamiltonian(c, 3, BoundaryCondition::open);
  StateVector psi = StateVector::Zero(27);
  psi(13) = 1.0;
  const Trajectory tr = krylov_evolve(h, psi, 2.0, 0.25);
  for (const StateVector& s : tr.states) CHECK(std::norm(s(13)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("forward then backward evolution is the identity") {
  const SparseOperator h = random_chain(4, 9);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  StateVector psi(81);
  for (auto& a : psi) a = {g(rng), g(rng)};
  psi.normalize();
  const StateVector back = evolve_by(h, evolve_by(h, psi, 1.7), -1.7);
  CHECK((back - psi).norm() < 1e-10);
}

TEST_CASE("Lanczos agrees with dense diagonalisation") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const SparseOperator h = random_chain(6, seed);
    const double dense = dense_eigs(h, 1, false).eigenvalues(0);
    const GroundState gs = lanczos_ground_state(h, {.tol = 1e-12});
    CHECK(gs.energy == doctest::Approx(dense).epsilon(1e-11));
    CHECK(gs.residual <= 1e-12 * std::max(1.0, std::abs(gs.energy)));
    CHECK(std::abs(gs.psi.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("Lanczos is reproducible for a fixed seed") {
  const SparseOperator h = random_chain(5, 4);
  const GroundState a = lanczos_ground_state(h, {.seed = 17});
  const GroundState b = lanczos_ground_state(h, {.seed = 17});
  CHECK(a.energy == b.energy);
  CHECK(a.iterations == b.iterations);
  CHECK((a.psi - b.psi).norm() == 0.0);
  const GroundState c = lanczos_ground_state(h, {.seed = 18});
  CHECK(c.energy == doctest::Approx(a.energy).epsilon(1e-9));
}

TEST_CASE("Lanczos reports non-convergence") {
  const SparseOperator h = random_chain(6, 7);
  try {
    lanczos_ground_state(h, {.tol = 1e-14, .max_iter = 5, .krylov_dim = 5});
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.best_estimate.has_value());
  }
}

TEST_CASE("dense solvers refuse oversized problems") {
  const SparseOperator big = ising_chain(1.0, 1.0, 13, BoundaryCondition::open);
  CHECK_THROWS_AS(dense_eigs(big), DimensionError);
}

TEST_CASE("sector eigenstates separate the spin-1 band") {
  // One straight three-leg rung with a weak outer-outer pair: |rgr> lies
  // below the band by Delta - V0'.
  const double v0 = 40, delta = 20;
  const AtomArray atoms = build_ladder({LadderKind::three_leg, 1, 3.0, 1.0, std::nullopt, std::nullopt});
  const CouplingMatrix v = pairwise_couplings(atoms, v0);
  const RydbergBasis basis = enumerate_rydberg(3, 3);
  const StateDictionary dict(LadderKind::three_leg);
  const SparseOperator h = rydberg_hamiltonian(atoms, 0.0, delta, v, basis);
  const SectorSpectrum s = sector_eigenstates(h, basis, dict);
  REQUIRE(s.band.size() == 3);
  for (const auto& e : s.band) {
    CHECK(e.overlap == doctest::Approx(1.0));
    CHECK(e.energy == doctest::Approx(-delta));
  }
  for (std::size_t i = 3; i < s.ranked.size(); ++i) CHECK(s.ranked[i].overlap == doctest::Approx(0.0));
  const double lowest = dense_eigs(h, 1, false).eigenvalues(0);
  CHECK(lowest == doctest::Approx(-2 * delta + v0 / 64));
  CHECK(s.band.front().energy - lowest == doctest::Approx(delta - v0 / 64));
  CHECK_FALSE(s.ambiguous);
}

TEST_CASE("windowed dense eigenvalues") {
  const SparseOperator h = random_chain(3, 3);
  const Eigen::VectorXd all = dense_eigs(h, 0, false).eigenvalues;
  // Window edges halfway between distinct levels.
  const double lo = (all(3) + all(4)) / 2, hi = (all(20) + all(21)) / 2;
  std::vector<double> inside;
  for (double e : all) {
    if (e > lo && e <= hi) inside.push_back(e);
  }
  const SpectrumResult part = dense_eigs_in_range(h, lo, hi);
  REQUIRE(static_cast<std::size_t>(part.eigenvalues.size()) == inside.size());
  for (std::size_t i = 0; i < inside.size(); ++i) CHECK(part.eigenvalues(i) == doctest::Approx(inside[i]));
  for (double r : part.residuals) CHECK(r < 1e-10);
}
