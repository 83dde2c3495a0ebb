#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rydberg/basis.hpp"
#include "rydberg/sparse_operator.hpp"

namespace rydberg {

using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDenseDim = 4096;

// Eigenpairs in ascending order. `eigenvectors` is empty unless requested;
// residuals are ||H v - lambda v|| when vectors are available.
struct SpectrumResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<double> residuals;
};

// Lowest k eigenpairs (all when k <= 0) of the densified operator.
SpectrumResult dense_eigs(const SparseOperator& h, int k = 0, bool vectors = true);

// All eigenpairs with eigenvalues in (lo, hi].
SpectrumResult dense_eigs_in_range(const SparseOperator& h, double lo, double hi,
                                   bool vectors = true);

struct LanczosOptions {
  double tol = 1e-10;
  int max_iter = 5000; // total matrix-vector products
  std::uint64_t seed = 1;
  int krylov_dim = 100; // per restart, further capped by memory_budget
  std::size_t memory_budget = std::size_t{1} << 30; // bytes for the Krylov basis
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd psi;
  double residual = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

// Restarted Lanczos with full reorthogonalization. Converged when
// ||H psi - E psi|| <= tol * max(1, |E|). Throws NumericError carrying the
// best energy estimate otherwise.
GroundState lanczos_ground_state(const SparseOperator& h, const LanczosOptions& options = {});

struct KrylovOptions {
  int m = 20;
  // Per-substep bound on the a-posteriori error estimate of exp(-iH dt) psi.
  double tol = 1e-12;
  // Substeps satisfy ||H||_est * dt <= max_phase.
  double max_phase = 5.0;
};

struct EvolveStats {
  int substeps = 0;
  double max_error_estimate = 0.0;
};

// exp(-i H t) psi. Negative t evolves backwards.
StateVector evolve_by(const SparseOperator& h, const StateVector& psi, double t,
                      const KrylovOptions& options = {}, EvolveStats* stats = nullptr);

// Calls `observe(t, psi)` at t = 0, dt, 2 dt, ..., t_total (the last step is
// shortened if dt does not divide t_total).
EvolveStats krylov_evolve(const SparseOperator& h, const StateVector& psi, double t_total, double dt,
                          const std::function<void(double, const StateVector&)>& observe,
                          const KrylovOptions& options = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  EvolveStats stats;
};

Trajectory krylov_evolve(const SparseOperator& h, const StateVector& psi, double t_total, double dt,
                         const KrylovOptions& options = {});

struct SectorEigenpair {
  double energy = 0.0;
  double overlap = 0.0;
  Eigen::VectorXd vector;
};

struct SectorSpectrum {
  // The k eigenpairs with the largest spin-1 overlap, in ascending energy.
  std::vector<SectorEigenpair> band;
  // Every computed eigenpair, ranked by decreasing overlap.
  std::vector<SectorEigenpair> ranked;
  bool ambiguous = false;
};

// Dense eigenpairs of a Rydberg-basis operator tagged with their spin-1 sector
// weight. With `window`, only eigenvalues in (first, second] are computed.
// k defaults to the sector size 3^N_s.
SectorSpectrum sector_eigenstates(const SparseOperator& h, const RydbergBasis& basis,
                                  const StateDictionary& dict, int k = 0,
                                  std::optional<std::pair<double, double>> window = std::nullopt);

} // namespace rydberg
