#include "rydberg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <lapacke.h>

namespace rydberg {

namespace {

void check_dense_dim(const SparseOperator& h) {
  if (h.dim() > kMaxDenseDim) {
    throw DimensionError("dense eigensolver limited to dimension " + std::to_string(kMaxDenseDim) +
                         ", got " + std::to_string(h.dim()));
  }
  if (h.dim() == 0) throw ConfigError("empty operator");
}

void fill_residuals(const SparseOperator& h, SpectrumResult& out) {
  out.residuals.clear();
  for (Eigen::Index i = 0; i < out.eigenvectors.cols(); ++i) {
    const Eigen::VectorXd v = out.eigenvectors.col(i);
    out.residuals.push_back((h * v - out.eigenvalues[i] * v).norm());
  }
}

// dsyevr over an index range [il, iu] (1-based) or a value range (vl, vu].
SpectrumResult syevr(const SparseOperator& h, char range, double vl, double vu, int il, int iu,
                     bool vectors) {
  check_dense_dim(h);
  const lapack_int n = static_cast<lapack_int>(h.dim());
  Eigen::MatrixXd a = h.to_dense();
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, vectors ? (range == 'I' ? iu - il + 1 : n) : 1);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', range, 'U', n,
                                         a.data(), n, vl, vu, il, iu, 0.0, &found, w.data(), z.data(),
                                         n, isuppz.data());
  if (info != 0) throw NumericError("dsyevr failed with info " + std::to_string(info));
  SpectrumResult out;
  out.eigenvalues = w.head(found);
  if (vectors) out.eigenvectors = z.leftCols(found);
  fill_residuals(h, out);
  return out;
}

} // namespace

SpectrumResult dense_eigs(const SparseOperator& h, int k, bool vectors) {
  check_dense_dim(h);
  const lapack_int n = static_cast<lapack_int>(h.dim());
  if (k > 0 && k < n) return syevr(h, 'I', 0.0, 0.0, 1, k, vectors);
  Eigen::MatrixXd a = h.to_dense();
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, a.data(), n, w.data());
  if (info != 0) throw NumericError("dsyevd failed with info " + std::to_string(info));
  SpectrumResult out;
  out.eigenvalues = std::move(w);
  if (vectors) out.eigenvectors = std::move(a);
  fill_residuals(h, out);
  return out;
}

SpectrumResult dense_eigs_in_range(const SparseOperator& h, double lo, double hi, bool vectors) {
  if (!(lo < hi)) throw ConfigError("empty eigenvalue window");
  return syevr(h, 'V', lo, hi, 0, 0, vectors);
}

GroundState lanczos_ground_state(const SparseOperator& h, const LanczosOptions& options) {
  const std::size_t dim = h.dim();
  if (dim == 0) throw ConfigError("empty operator");
  GroundState out;
  out.seed = options.seed;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(static_cast<Eigen::Index>(dim));
  for (auto& x : start) x = normal(rng);
  start.normalize();

  const std::size_t by_memory = std::max<std::size_t>(3, options.memory_budget / (8 * dim));
  const int m = static_cast<int>(
      std::min<std::size_t>({static_cast<std::size_t>(std::max(3, options.krylov_dim)), dim, by_memory}));
  const double h_scale = std::max(1.0, h.gershgorin_bound());

  // Thick restart: the lowest `keep` Ritz vectors survive each restart, so
  // nearly degenerate ground states do not stall the iteration.
  const int keep_max = std::max(1, m / 3);
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(dim), m);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  basis.col(0) = start;
  int kept = 0;
  int matvecs = 0;
  Eigen::VectorXd w;
  while (matvecs < options.max_iter) {
    int used = kept + 1;
    double tail = 0.0;
    for (int j = kept; j < m; ++j) {
      h.apply(Eigen::VectorXd(basis.col(j)), w);
      ++matvecs;
      used = j + 1;
      // Two passes of classical Gram-Schmidt; the projections are column j of V^T H V.
      Eigen::VectorXd column = Eigen::VectorXd::Zero(used);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeff = basis.leftCols(used).transpose() * w;
        w.noalias() -= basis.leftCols(used) * coeff;
        column += coeff;
      }
      t.col(j).head(used) = column;
      t.row(j).head(used) = column.transpose();
      tail = w.norm();
      if (tail <= 1e-13 * h_scale || j + 1 == m || matvecs >= options.max_iter) break;
      basis.col(j + 1) = w / tail;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t.topLeftCorner(used, used));
    const Eigen::VectorXd y = small.eigenvectors().col(0);
    Eigen::VectorXd x = basis.leftCols(used) * y;
    x.normalize();
    const Eigen::VectorXd hx = h * x;
    const double energy = x.dot(hx);
    const double residual = (hx - energy * x).norm();
    out.energy = energy;
    out.psi = x;
    out.residual = residual;
    out.iterations = matvecs;
    if (residual <= options.tol * std::max(1.0, std::abs(energy))) return out;
    if (tail <= 1e-13 * h_scale) {
      // Invariant subspace without convergence: only rounding is left.
      throw NumericError("Lanczos stagnated in an invariant subspace (residual " +
                             std::to_string(residual) + ")",
                         energy);
    }

    const int keep = std::min(keep_max, used - 1);
    const Eigen::MatrixXd ritz = basis.leftCols(used) * small.eigenvectors().leftCols(keep);
    basis.leftCols(keep) = ritz;
    basis.col(keep) = w / tail;
    t.setZero();
    for (int i = 0; i < keep; ++i) t(i, i) = small.eigenvalues()[i];
    kept = keep;
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge within " << options.max_iter << " matrix-vector products (residual "
      << std::scientific << std::setprecision(3) << out.residual << ")";
  throw NumericError(msg.str(), out.energy);
}

namespace {

// One Krylov projection of length <= m from psi. Returns the tridiagonal
// coefficients and the orthonormal basis; `tail` is the last beta (0 on an
// invariant subspace).
struct KrylovSpace {
  Eigen::MatrixXcd v;
  Eigen::MatrixXd t;
  double tail = 0.0;
  double norm = 0.0;
};

KrylovSpace build_krylov(const SparseOperator& h, const StateVector& psi, int m, double h_scale) {
  KrylovSpace k;
  const Eigen::Index dim = psi.size();
  m = static_cast<int>(std::min<Eigen::Index>(m, dim));
  k.norm = psi.norm();
  k.v.resize(dim, m);
  k.v.col(0) = psi / k.norm;
  std::vector<double> alpha, beta;
  Eigen::VectorXcd w;
  int used = 0;
  for (int j = 0; j < m; ++j) {
    h.apply(Eigen::VectorXcd(k.v.col(j)), w);
    used = j + 1;
    alpha.push_back(k.v.col(j).dot(w).real());
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeff = k.v.leftCols(used).adjoint() * w;
      w.noalias() -= k.v.leftCols(used) * coeff;
    }
    const double b = w.norm();
    if (b <= 1e-13 * h_scale) {
      k.tail = 0.0;
      break;
    }
    if (j + 1 == m) {
      k.tail = b;
      break;
    }
    beta.push_back(b);
    k.v.col(j + 1) = w / b;
  }
  k.v.conservativeResize(dim, used);
  k.t = Eigen::MatrixXd::Zero(used, used);
  for (int i = 0; i < used; ++i) {
    k.t(i, i) = alpha[i];
    if (i + 1 < used) k.t(i, i + 1) = k.t(i + 1, i) = beta[i];
  }
  return k;
}

} // namespace

StateVector evolve_by(const SparseOperator& h, const StateVector& psi, double t,
                      const KrylovOptions& options, EvolveStats* stats) {
  if (static_cast<std::size_t>(psi.size()) != h.dim()) {
    throw ConfigError("state and operator dimensions differ");
  }
  if (options.m < 1) throw ConfigError("Krylov dimension must be positive");
  StateVector current = psi;
  if (t == 0.0) return current;
  const double h_norm = std::max(h.gershgorin_bound(), 1e-300);
  const double h_scale = std::max(1.0, h_norm);
  const double sign = t > 0.0 ? 1.0 : -1.0;
  double remaining = std::abs(t);
  while (remaining > 0.0) {
    const KrylovSpace k = build_krylov(h, current, options.m, h_scale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(k.t);
    const Eigen::VectorXd& lambda = small.eigenvalues();
    const Eigen::MatrixXd& q = small.eigenvectors();
    double tau = std::min(remaining, options.max_phase / h_norm);
    Eigen::VectorXcd y;
    double estimate = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      // y = exp(-i tau T) e_1
      Eigen::VectorXcd phase(lambda.size());
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        phase[i] = std::polar(q(0, i), -sign * tau * lambda[i]);
      }
      y = q.cast<std::complex<double>>() * phase;
      estimate = k.tail * std::abs(y[y.size() - 1]);
      if (estimate <= options.tol) break;
      tau *= 0.5;
    }
    current = k.norm * (k.v * y);
    remaining -= tau;
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
    if (stats) {
      ++stats->substeps;
      stats->max_error_estimate = std::max(stats->max_error_estimate, estimate);
    }
  }
  return current;
}

EvolveStats krylov_evolve(const SparseOperator& h, const StateVector& psi, double t_total, double dt,
                          const std::function<void(double, const StateVector&)>& observe,
                          const KrylovOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (t_total < 0.0) throw ConfigError("total time must be nonnegative");
  EvolveStats stats;
  StateVector current = psi;
  observe(0.0, current);
  const long steps = static_cast<long>(std::ceil(t_total / dt - 1e-9));
  double t = 0.0;
  for (long s = 1; s <= steps; ++s) {
    const double next = std::min(t_total, s * dt);
    current = evolve_by(h, current, next - t, options, &stats);
    t = next;
    observe(t, current);
  }
  return stats;
}

Trajectory krylov_evolve(const SparseOperator& h, const StateVector& psi, double t_total, double dt,
                         const KrylovOptions& options) {
  Trajectory out;
  out.stats = krylov_evolve(
      h, psi, t_total, dt,
      [&](double t, const StateVector& state) {
        out.times.push_back(t);
        out.states.push_back(state);
      },
      options);
  return out;
}

SectorSpectrum sector_eigenstates(const SparseOperator& h, const RydbergBasis& basis,
                                  const StateDictionary& dict, int k,
                                  std::optional<std::pair<double, double>> window) {
  if (h.dim() != basis.size()) throw ConfigError("operator does not match the Rydberg basis");
  const SpectrumResult spec = window ? dense_eigs_in_range(h, window->first, window->second)
                                     : dense_eigs(h, 0);
  if (k <= 0) k = static_cast<int>(std::pow(3, basis.n_rungs()));
  SectorSpectrum out;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    SectorEigenpair p;
    p.energy = spec.eigenvalues[i];
    p.vector = spec.eigenvectors.col(i);
    p.overlap = sector_overlap(p.vector, basis, dict);
    out.ranked.push_back(std::move(p));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const SectorEigenpair& a, const SectorEigenpair& b) { return a.overlap > b.overlap; });
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), out.ranked.size());
  out.band.assign(out.ranked.begin(), out.ranked.begin() + static_cast<long>(take));
  std::sort(out.band.begin(), out.band.end(),
            [](const SectorEigenpair& a, const SectorEigenpair& b) { return a.energy < b.energy; });
  for (const SectorEigenpair& p : out.band) {
    if (p.overlap < 0.5) out.ambiguous = true;
  }
  if (out.ambiguous) {
    std::cerr << "warning: spin-1 band is ambiguous (some overlaps below 0.5)\n";
  }
  return out;
}

} // namespace rydberg
