#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rydberg/observables.hpp"

using namespace rydberg;

namespace {

Eigen::VectorXcd spin_ket(const SpinBasis& b, const std::vector<int>& spins) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
  psi(static_cast<Eigen::Index>(b.index_of(spins))) = 1.0;
  return psi;
}

} // namespace

TEST_CASE("site profiles") {
  const SpinBasis b = spin1_basis(3);
  const SiteProfile zero = site_profile(spin_ket(b, {0, 0, 0}), b);
  CHECK(zero.lz == std::vector<double>{0, 0, 0});
  CHECK(zero.lz2 == std::vector<double>{0, 0, 0});
  const SiteProfile mixed = site_profile(spin_ket(b, {1, 0, -1}), b);
  CHECK(mixed.lz == std::vector<double>{1, 0, -1});
  CHECK(mixed.lz2 == std::vector<double>{1, 0, 1});
}

TEST_CASE("Rydberg profile uses the dictionary") {
  const RydbergBasis basis = enumerate_rydberg(4, 2);
  const StateDictionary dict(LadderKind::two_leg);
  // |gr> (x) |rg>: rung 0 has leg 1 excited, rung 1 has leg 0 excited.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi(static_cast<Eigen::Index>(*basis.index_of(0b0110))) = 1.0;
  const SiteProfile p = site_profile(psi, basis, dict);
  CHECK(p.lz == std::vector<double>{1, -1});
  CHECK(p.lz2 == std::vector<double>{1, 1});
  // Both legs excited is outside the sector; the occupation form still counts it.
  psi.setZero();
  psi(static_cast<Eigen::Index>(*basis.index_of(0b0011))) = 1.0;
  const SiteProfile out = site_profile(psi, basis, dict);
  CHECK(out.lz[0] == 0.0);
  CHECK(out.lz2[0] == 2.0);
}

TEST_CASE("order parameters of product states") {
  const SpinBasis b = spin1_basis(4);
  const OrderParameters rdw = order_parameters(spin_ket(b, {1, 0, 1, 0}), b);
  CHECK(rdw.m_rdw == doctest::Approx(-0.5));
  CHECK(rdw.m_fm == doctest::Approx(0.5));
  CHECK(rdw.m_afm == doctest::Approx(-0.5));
  CHECK(classify_phase(rdw) == Phase::frdw);

  const OrderParameters fm = order_parameters(spin_ket(b, {1, 1, 1, 1}), b);
  CHECK(fm.m_fm == doctest::Approx(1.0));
  CHECK(fm.m_afm == doctest::Approx(0.0));
  CHECK(fm.m_rdw == doctest::Approx(0.0));
  CHECK(fm.chi_fm == doctest::Approx(0.0));
}

TEST_CASE("cat state fluctuations") {
  const SpinBasis b = spin1_basis(2);
  Eigen::VectorXcd psi = (spin_ket(b, {1, 1}) + spin_ket(b, {-1, -1})) / std::sqrt(2.0);
  const OrderParameters op = order_parameters(psi, b);
  CHECK(op.m_fm == doctest::Approx(0.0));
  CHECK(op.abs_fm == doctest::Approx(1.0));
  CHECK(op.chi_fm == doctest::Approx(2.0));
  CHECK(op.chi_abs_fm == doctest::Approx(0.0));
}

TEST_CASE("Renyi entropies") {
  const SpinBasis b = spin1_basis(2);
  const Eigen::VectorXcd product = spin_ket(b, {1, 0});
  CHECK(renyi_entropy(product, b, 1, 1) == doctest::Approx(0.0));
  CHECK(renyi_entropy(product, b, 1, 2) == doctest::Approx(0.0));

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(renyi_entropy(bell, 2, 2, 1, 1) == doctest::Approx(std::log(2.0)));
  CHECK(renyi_entropy(bell, 2, 2, 1, 2) == doctest::Approx(std::log(2.0)));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  const SpinBasis b4 = spin1_basis(4);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd psi(81);
    for (auto& a : psi) a = {g(rng), g(rng)};
    psi.normalize();
    for (int cut = 1; cut < 4; ++cut) {
      const double s1 = renyi_entropy(psi, b4, cut, 1);
      const double s2 = renyi_entropy(psi, b4, cut, 2);
      CHECK(s2 <= s1 + 1e-12);
      CHECK(s1 <= std::log(std::pow(3.0, std::min(cut, 4 - cut))) + 1e-12);
      // Purity from the reduced density matrix built by hand.
      const int da = static_cast<int>(std::pow(3, cut)), db = 81 / da;
      Eigen::MatrixXcd m(da, db);
      for (int i = 0; i < 81; ++i) m(i % da, i / da) = psi(i);
      const Eigen::MatrixXcd rho = m * m.adjoint();
      CHECK(s2 == doctest::Approx(-std::log((rho * rho).trace().real())).epsilon(1e-12));
    }
  }
}

TEST_CASE("phase classification") {
  CHECK(classify_phase(0.9, 0, 0) == Phase::fm);
  CHECK(classify_phase(0, 0.9, 0) == Phase::afm);
  CHECK(classify_phase(0, 0, 0.8) == Phase::prdw);
  CHECK(classify_phase(0.5, 0.5, 0.5) == Phase::frdw);
  CHECK(classify_phase(0, 0, 0) == Phase::disorder);
  CHECK(classify_phase(0.9, 0.9, 0) == Phase::unclassified);
  CHECK(to_string(Phase::prdw) == "PRDW");
}

TEST_CASE("susceptibility peak interpolation") {
  std::vector<double> x, y;
  for (int i = 0; i < 9; ++i) {
    x.push_back(0.5 * i);
    y.push_back(3.0 - 2.0 * (x.back() - 1.7) * (x.back() - 1.7));
  }
  const PeakEstimate p = susceptibility_peak(x, y);
  CHECK(p.x == doctest::Approx(1.7));
  CHECK(p.y == doctest::Approx(3.0));
  CHECK_FALSE(p.at_boundary);

  const std::vector<double> sx{1, 2, 3}, sy{0.5, 1.0, 0.5};
  CHECK(susceptibility_peak(sx, sy).x == doctest::Approx(2.0));

  const std::vector<double> rising{1, 2, 3};
  CHECK(susceptibility_peak(sx, rising).at_boundary);
}
