#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rydberg/basis.hpp"

namespace rydberg {

struct SiteProfile {
  std::vector<double> lz;
  std::vector<double> lz2;
};

// Spin-basis expectations <L^z_i> and <(L^z_i)^2>.
SiteProfile site_profile(const Eigen::VectorXcd& psi, const SpinBasis& basis);

// Rydberg-basis expectations from occupations:
//   L^z_i = n_{i,+} - n_{i,-},  (L^z_i)^2 = n_{i,+} + n_{i,-}
// with +/- the legs carrying the m = +1 / -1 excitation.
SiteProfile site_profile(const Eigen::VectorXcd& psi, const RydbergBasis& basis,
                         const StateDictionary& dict);

// M_FM = (1/L) sum L_i, M_AFM = (1/L) sum (-1)^i L_i, M_RDW = (1/L) sum (-1)^i L_i^2
// with i = 1..L. For each O: m = <O>, abs = <|O|>, chi = L (<O^2> - <O>^2) and
// chi_abs = L (<O^2> - <|O|>^2).
struct OrderParameters {
  double m_fm = 0.0, m_afm = 0.0, m_rdw = 0.0;
  double abs_fm = 0.0, abs_afm = 0.0, abs_rdw = 0.0;
  double chi_fm = 0.0, chi_afm = 0.0, chi_rdw = 0.0;
  double chi_abs_fm = 0.0, chi_abs_afm = 0.0, chi_abs_rdw = 0.0;
};

OrderParameters order_parameters(const Eigen::VectorXcd& psi, const SpinBasis& basis);

// Order parameters averaged over a set of (degenerate) eigenstates.
OrderParameters order_parameters(std::span<const Eigen::VectorXcd> states, const SpinBasis& basis);

// Entropy of sites [0, cut) in nats, order 1 (von Neumann) or 2.
double renyi_entropy(const Eigen::VectorXcd& psi, const SpinBasis& basis, int cut, int order);

// Same on a generic product space with `local_dim` states per site, site 0
// least significant.
double renyi_entropy(const Eigen::VectorXcd& psi, int n_sites, int local_dim, int cut, int order);

enum class Phase { fm, afm, frdw, prdw, disorder, unclassified };

std::string_view to_string(Phase phase);

// Zero/nonzero pattern of (|m_fm|, |m_afm|, |m_rdw|) against `threshold`:
//   FM (fm only), AFM (afm only), FRDW (all three), PRDW (rdw only), Disorder (none).
Phase classify_phase(double m_fm, double m_afm, double m_rdw, double threshold = 0.1);

// Uses the absolute-value order parameters.
Phase classify_phase(const OrderParameters& op, double threshold = 0.1);

struct PeakEstimate {
  double x = 0.0;
  double y = 0.0;
  std::size_t index = 0; // sample index of the maximum
  bool at_boundary = false;
};

// Vertex of the parabola through the largest sample and its two neighbours.
PeakEstimate susceptibility_peak(std::span<const double> x, std::span<const double> y);

} // namespace rydberg
