#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rydberg/hamiltonians.hpp"
#include "rydberg/solvers.hpp"

using namespace rydberg;

namespace {

Eigen::VectorXd sorted_eigs(const SparseOperator& h) { return oracle::spectrum(h.to_dense()); }

void check_same_spectrum(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol = 1e-9) {
  REQUIRE(a.size() == b.size());
  CHECK((a - b).cwiseAbs().maxCoeff() <= tol);
}

// Dense Rydberg Hamiltonian straight from the bit definition.
Eigen::MatrixXd rydberg_dense(const AtomArray& atoms, double omega, double delta, const Eigen::MatrixXd& v) {
  const int n = atoms.size();
  const int dim = 1 << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int i = 0; i < n; ++i) {
      if (!(c >> i & 1)) continue;
      h(c, c) -= delta + atoms.detuning_offset[i];
      for (int j = i + 1; j < n; ++j) {
        if (c >> j & 1) h(c, c) += v(i, j);
      }
    }
    for (int i = 0; i < n; ++i) h(c ^ (1 << i), c) += omega / 2;
  }
  return h;
}

} // namespace

TEST_CASE("single two-leg rung spectrum") {
  const double v0 = 50.0, delta = 3.0;
  const AtomArray atoms = build_ladder({LadderKind::two_leg, 1, 1.0, 1.0, std::nullopt, std::nullopt});
  const CouplingMatrix v = pairwise_couplings(atoms, v0);
  const SparseOperator h = rydberg_hamiltonian(atoms, 0.0, delta, v, enumerate_rydberg(2, 2));
  Eigen::Vector4d expected(v0 - 2 * delta, -delta, -delta, 0.0);
  std::sort(expected.data(), expected.data() + 4);
  check_same_spectrum(sorted_eigs(h), expected);
}

TEST_CASE("Rydberg Hamiltonian matches a bitwise dense build") {
  for (LadderKind kind : {LadderKind::two_leg, LadderKind::three_leg, LadderKind::prism}) {
    AtomArray atoms = build_ladder({kind, 2, 1.7, 1.1, std::nullopt, std::nullopt});
    if (atoms.n_legs == 3) apply_middle_leg_offset(atoms, 0.4);
    const CouplingMatrix v = pairwise_couplings(atoms, 30.0);
    const RydbergBasis basis = enumerate_rydberg(atoms.size(), atoms.n_legs);
    const SparseOperator h = rydberg_hamiltonian(atoms, 1.3, 2.1, v, basis);
    CHECK((h.to_dense() - rydberg_dense(atoms, 1.3, 2.1, v.v)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("range cutoff drops distant rungs") {
  const AtomArray atoms = build_ladder({LadderKind::two_leg, 3, 1.0, 1.0, std::nullopt, std::nullopt});
  const CouplingMatrix v = pairwise_couplings(atoms, 10.0);
  // Only the two end rungs excited on leg 0: distance 2, separated by two rungs.
  const Config c = 0b010001;
  CHECK(rydberg_diagonal(atoms, 0.0, v, c) == doctest::Approx(10.0 / 64.0));
  CHECK(rydberg_diagonal(atoms, 0.0, v, c, 1.5) == 0.0);
}

TEST_CASE("D-only effective chain counts nonzero spins") {
  EffectiveCoefficients c;
  c.d = 0.7;
  const SparseOperator h = effective_spin1_hamiltonian(c, 3, BoundaryCondition::open);
  std::vector<double> expected;
  for (int k = 0; k <= 3; ++k) {
    const int mult = (k == 0 ? 1 : k == 1 ? 3 : k == 2 ? 3 : 1) * (1 << k);
    for (int i = 0; i < mult; ++i) expected.push_back(0.7 * k);
  }
  std::sort(expected.begin(), expected.end());
  check_same_spectrum(sorted_eigs(h), Eigen::Map<Eigen::VectorXd>(expected.data(), 27));
}

TEST_CASE("effective chain against Kronecker-product oracle") {
  for (HoppingFlavor flavor : {HoppingFlavor::ladder, HoppingFlavor::clock}) {
    EffectiveCoefficients c;
    c.d = 0.070260631;
    c.r = 0.01833152;
    c.rp = 0.011407849;
    c.j = 0.1;
    c.flavor = flavor;
    for (int n : {2, 3, 4}) {
      const SparseOperator h = effective_spin1_hamiltonian(c, n, BoundaryCondition::open);
      const Eigen::MatrixXd ref = oracle::effective_chain(c.d, c.r, c.rp, c.j, n, flavor == HoppingFlavor::clock);
      check_same_spectrum(sorted_eigs(h), oracle::spectrum(ref));
    }
  }
}

TEST_CASE("clock hopping links +1 and -1 directly") {
  EffectiveCoefficients c;
  c.j = 0.3;
  const SpinBasis b = spin1_basis(1);
  const std::size_t plus = b.index_of(std::vector<int>{1});
  const std::size_t minus = b.index_of(std::vector<int>{-1});
  const Eigen::MatrixXd ladder = effective_spin1_hamiltonian(c, 1, BoundaryCondition::open).to_dense();
  c.flavor = HoppingFlavor::clock;
  const Eigen::MatrixXd clock = effective_spin1_hamiltonian(c, 1, BoundaryCondition::open).to_dense();
  CHECK(ladder(plus, minus) == 0.0);
  CHECK(clock(plus, minus) == doctest::Approx(-0.3));
  CHECK(clock(plus, b.index_of(std::vector<int>{0})) == doctest::Approx(-0.3));
}

TEST_CASE("periodic chain adds the wrap bond") {
  EffectiveCoefficients c;
  c.r = 1.0;
  const SpinBasis b = spin1_basis(3);
  const SparseOperator obc = effective_spin1_hamiltonian(c, 3, BoundaryCondition::open);
  const SparseOperator pbc = effective_spin1_hamiltonian(c, 3, BoundaryCondition::periodic);
  const std::size_t s = b.index_of(std::vector<int>{1, 1, 1});
  CHECK(obc.diagonal(s) == doctest::Approx(2.0));
  CHECK(pbc.diagonal(s) == doctest::Approx(3.0));
}

TEST_CASE("CAHM matches its spin-1 reading") {
  const TargetCouplings t{0.4, 1.2, 0.35, 0.0};
  for (int n : {1, 2, 3}) {
    const SparseOperator h = cahm_hamiltonian(t, n);
    check_same_spectrum(sorted_eigs(h), oracle::spectrum(oracle::effective_chain(t.u / 2, -t.y, 0.0, t.x / 2, n)));
  }
  // Single site, X only: eigenvalues of -(X/2)(U+ + U-) are -X/sqrt2, 0, X/sqrt2.
  const Eigen::VectorXd e = sorted_eigs(cahm_hamiltonian({0.0, 2.0, 0.0, 0.0}, 1));
  CHECK(e(0) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(e(1) == doctest::Approx(0.0));
  CHECK(e(2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("field representation without Y' is a gauge-field energy") {
  const TargetCouplings t{0.6, 0.9, 0.45, 0.0};
  const int n = 3;
  const int dim = 27;
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < n; ++p) {
    const Eigen::MatrixXd l = oracle::site_op(oracle::lz(), p, n);
    const Eigen::MatrixXd u = oracle::site_op(oracle::raise(), p, n);
    ref += t.u / 2 * l * l - t.x / 2 * (u + u.transpose());
  }
  // (Y/2) sum_{p=1}^{N+1} (L_p - L_{p-1})^2 with L_0 = L_{N+1} = 0.
  for (int p = 0; p <= n; ++p) {
    const Eigen::MatrixXd right = p < n ? oracle::site_op(oracle::lz(), p, n) : Eigen::MatrixXd::Zero(dim, dim);
    const Eigen::MatrixXd left = p > 0 ? oracle::site_op(oracle::lz(), p - 1, n) : Eigen::MatrixXd::Zero(dim, dim);
    ref += t.y / 2 * (right - left) * (right - left);
  }
  const SparseOperator h = sqed_field_hamiltonian(t, n, BoundaryCondition::zero_zero);
  check_same_spectrum(sorted_eigs(h), oracle::spectrum(ref));
}

TEST_CASE("Y' penalty only acts on opposite neighbours") {
  const SpinBasis b = spin1_basis(2);
  const SparseOperator h = sqed_field_hamiltonian({0.0, 0.0, 0.0, 0.5}, 2, BoundaryCondition::open);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::vector<int> s = b.spins(i);
    const double expected = s[0] * s[1] == -1 ? 1.0 : 0.0;
    CHECK(h.diagonal(i) == doctest::Approx(expected));
  }
}

TEST_CASE("charge sector and kernel") {
  const ChargeSector one = charge_sector(1);
  CHECK(one.n_links == 2);
  REQUIRE(one.states.size() == 3);
  for (const auto& s : one.states) CHECK(s[0] + s[1] == 0);
  CHECK(charge_sector(2).states.size() == 7);
  const std::vector<std::vector<int>> k = charge_kernel(3);
  CHECK(k == std::vector<std::vector<int>>{{3, 2, 1}, {2, 2, 1}, {1, 1, 1}});
}

TEST_CASE("transverse-field Ising chain") {
  const int l = 8;
  // h = 0: classical ferromagnet.
  CHECK(sorted_eigs(ising_chain(1.0, 0.0, l, BoundaryCondition::periodic))(0) == doctest::Approx(-l));
  CHECK(sorted_eigs(ising_chain(1.0, 0.0, l, BoundaryCondition::open))(0) == doctest::Approx(-(l - 1)));
  // j = 0: free spins in a field.
  CHECK(sorted_eigs(ising_chain(0.0, 1.0, l, BoundaryCondition::open))(0) == doctest::Approx(-l));

  // Critical point, free-fermion result with antiperiodic momenta.
  const int big = 12;
  double exact = 0.0;
  for (int q = 0; q < big; ++q) exact -= 2.0 * std::abs(std::sin(std::numbers::pi * (2 * q + 1) / (2.0 * big)));
  const GroundState gs = lanczos_ground_state(ising_chain(1.0, 1.0, big, BoundaryCondition::periodic));
  CHECK(gs.energy == doctest::Approx(exact).epsilon(1e-9));
  CHECK(gs.energy / big == doctest::Approx(-4.0 / std::numbers::pi).epsilon(5e-3));
}

TEST_CASE("spectra are invariant under chain reversal") {
  EffectiveCoefficients c;
  c.d = 0.3;
  c.r = -0.2;
  c.rp = 0.1;
  c.j = 0.25;
  c.d_first = 0.5;
  c.d_last = -0.1;
  const Eigen::VectorXd fwd = sorted_eigs(effective_spin1_hamiltonian(c, 4, BoundaryCondition::open));
  std::swap(c.d_first, c.d_last);
  const Eigen::VectorXd rev = sorted_eigs(effective_spin1_hamiltonian(c, 4, BoundaryCondition::open));
  check_same_spectrum(fwd, rev);
}
