#include "rydberg/observables.hpp"

#include <cmath>
#include <complex>

#include "rydberg/common.hpp"

namespace rydberg {

SiteProfile site_profile(const Eigen::VectorXcd& psi, const SpinBasis& basis) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) {
    throw ConfigError("state does not match the spin basis");
  }
  const int n = basis.n_sites();
  SiteProfile out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double p = std::norm(psi[static_cast<Eigen::Index>(s)]);
    if (p == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const int m = basis.m(s, i);
      out.lz[i] += p * m;
      out.lz2[i] += p * m * m;
    }
  }
  return out;
}

SiteProfile site_profile(const Eigen::VectorXcd& psi, const RydbergBasis& basis,
                         const StateDictionary& dict) {
  if (static_cast<std::size_t>(psi.size()) != basis.size()) {
    throw ConfigError("state does not match the Rydberg basis");
  }
  if (basis.atoms_per_rung() != dict.legs()) throw ConfigError("dictionary does not match the basis");
  const int n = basis.n_rungs();
  const int legs = dict.legs();
  SiteProfile out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double p = std::norm(psi[static_cast<Eigen::Index>(s)]);
    if (p == 0.0) continue;
    const Config c = basis.state(s);
    for (int i = 0; i < n; ++i) {
      const int plus = static_cast<int>((c >> (i * legs + dict.plus_leg())) & 1);
      const int minus = static_cast<int>((c >> (i * legs + dict.minus_leg())) & 1);
      out.lz[i] += p * (plus - minus);
      out.lz2[i] += p * (plus + minus);
    }
  }
  return out;
}

namespace {

struct Moments {
  double mean = 0.0, abs = 0.0, square = 0.0;
};

} // namespace

OrderParameters order_parameters(std::span<const Eigen::VectorXcd> states, const SpinBasis& basis) {
  if (states.empty()) throw ConfigError("no states given");
  const int n = basis.n_sites();
  Moments fm, afm, rdw;
  for (const Eigen::VectorXcd& psi : states) {
    if (static_cast<std::size_t>(psi.size()) != basis.size()) {
      throw ConfigError("state does not match the spin basis");
    }
    const double w = 1.0 / static_cast<double>(states.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const double p = w * std::norm(psi[static_cast<Eigen::Index>(s)]);
      if (p == 0.0) continue;
      double a = 0.0, b = 0.0, c = 0.0;
      for (int i = 0; i < n; ++i) {
        const int m = basis.m(s, i);
        // Site i here is site i + 1 in the (-1)^i convention.
        const int sign = (i % 2 == 0) ? -1 : 1;
        a += m;
        b += sign * m;
        c += sign * m * m;
      }
      a /= n;
      b /= n;
      c /= n;
      for (auto [mom, v] : {std::pair{&fm, a}, std::pair{&afm, b}, std::pair{&rdw, c}}) {
        mom->mean += p * v;
        mom->abs += p * std::abs(v);
        mom->square += p * v * v;
      }
    }
  }
  OrderParameters op;
  op.m_fm = fm.mean;
  op.m_afm = afm.mean;
  op.m_rdw = rdw.mean;
  op.abs_fm = fm.abs;
  op.abs_afm = afm.abs;
  op.abs_rdw = rdw.abs;
  op.chi_fm = n * (fm.square - fm.mean * fm.mean);
  op.chi_afm = n * (afm.square - afm.mean * afm.mean);
  op.chi_rdw = n * (rdw.square - rdw.mean * rdw.mean);
  op.chi_abs_fm = n * (fm.square - fm.abs * fm.abs);
  op.chi_abs_afm = n * (afm.square - afm.abs * afm.abs);
  op.chi_abs_rdw = n * (rdw.square - rdw.abs * rdw.abs);
  return op;
}

OrderParameters order_parameters(const Eigen::VectorXcd& psi, const SpinBasis& basis) {
  return order_parameters(std::span<const Eigen::VectorXcd>(&psi, 1), basis);
}

double renyi_entropy(const Eigen::VectorXcd& psi, int n_sites, int local_dim, int cut, int order) {
  if (cut < 1 || cut >= n_sites) throw ConfigError("entanglement cut must lie inside the chain");
  if (order != 1 && order != 2) throw ConfigError("Renyi order must be 1 or 2");
  const Eigen::Index rows = static_cast<Eigen::Index>(std::pow(local_dim, cut));
  const Eigen::Index cols = static_cast<Eigen::Index>(std::pow(local_dim, n_sites - cut));
  if (psi.size() != rows * cols) throw ConfigError("state does not match the product space");
  const Eigen::Map<const Eigen::MatrixXcd> m(psi.data(), rows, cols);
  const Eigen::MatrixXcd rho = rows <= cols ? Eigen::MatrixXcd(m * m.adjoint())
                                            : Eigen::MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  const double norm = eig.eigenvalues().sum();
  double s = 0.0;
  for (double p : eig.eigenvalues()) {
    p /= norm;
    if (p <= 0.0) continue;
    s += order == 1 ? -p * std::log(p) : p * p;
  }
  return order == 1 ? s : -std::log(s);
}

double renyi_entropy(const Eigen::VectorXcd& psi, const SpinBasis& basis, int cut, int order) {
  return renyi_entropy(psi, basis.n_sites(), basis.local_dim(), cut, order);
}

std::string_view to_string(Phase phase) {
  switch (phase) {
  case Phase::fm: return "FM";
  case Phase::afm: return "AFM";
  case Phase::frdw: return "FRDW";
  case Phase::prdw: return "PRDW";
  case Phase::disorder: return "Disorder";
  case Phase::unclassified: return "unclassified";
  }
  return "unclassified";
}

Phase classify_phase(double m_fm, double m_afm, double m_rdw, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("phase threshold must be positive");
  const bool fm = std::abs(m_fm) > threshold;
  const bool afm = std::abs(m_afm) > threshold;
  const bool rdw = std::abs(m_rdw) > threshold;
  if (fm && afm && rdw) return Phase::frdw;
  if (fm && !afm && !rdw) return Phase::fm;
  if (!fm && afm && !rdw) return Phase::afm;
  if (!fm && !afm && rdw) return Phase::prdw;
  if (!fm && !afm && !rdw) return Phase::disorder;
  return Phase::unclassified;
}

Phase classify_phase(const OrderParameters& op, double threshold) {
  return classify_phase(op.abs_fm, op.abs_afm, op.abs_rdw, threshold);
}

PeakEstimate susceptibility_peak(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("scan abscissa and values differ in length");
  if (x.size() < 3) throw ConfigError("peak search needs at least three scan points");
  PeakEstimate out;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] > y[out.index]) out.index = i;
  }
  out.x = x[out.index];
  out.y = y[out.index];
  if (out.index == 0 || out.index + 1 == y.size()) {
    out.at_boundary = true;
    return out;
  }
  const std::size_t i = out.index;
  const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
  const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
  // Lagrange parabola; vertex from its derivative.
  const double d0 = y0 / ((x0 - x1) * (x0 - x2));
  const double d1 = y1 / ((x1 - x0) * (x1 - x2));
  const double d2 = y2 / ((x2 - x0) * (x2 - x1));
  const double a = d0 + d1 + d2;
  const double b = -(d0 * (x1 + x2) + d1 * (x0 + x2) + d2 * (x0 + x1));
  const double c = d0 * x1 * x2 + d1 * x0 * x2 + d2 * x0 * x1;
  if (a >= 0.0) return out;
  out.x = -b / (2.0 * a);
  out.y = c - b * b / (4.0 * a);
  return out;
}

} // namespace rydberg
