#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rydberg/basis.hpp"
#include "rydberg/config.hpp"
#include "rydberg/observables.hpp"
#include "rydberg/sparse_operator.hpp"

namespace rydberg {

inline constexpr const char* kToolVersion = "1.0.0";

// A Hamiltonian together with the basis it acts on.
struct ModelInstance {
  ModelKind kind = ModelKind::rydberg;
  SparseOperator h;
  int n_sites = 0;
  std::optional<AtomArray> atoms;
  std::optional<RydbergBasis> rydberg;
  std::optional<StateDictionary> dict;
  std::optional<SpinBasis> spin;
  std::optional<EffectiveCoefficients> coeffs;
};

// Effective coefficients for the configured geometry (staggering and flavor
// overrides applied).
EffectiveCoefficients coefficients_for(const RunConfig& config);

// The configured atom array, with middle-leg offsets and, under 00BC, the
// pinned boundary rungs folded into the detunings.
AtomArray atoms_for(const RunConfig& config);

ModelInstance build_model(const RunConfig& config, ModelKind kind);

// "all-ground", "spin:<s_1 s_2 ...>" with s in {+, 0, -}, or "index:<n>".
Eigen::VectorXcd initial_state(const ModelInstance& model, const std::string& label);

// Site profile for any model with a spin or dictionary-mapped Rydberg basis.
SiteProfile model_profile(const ModelInstance& model, const Eigen::VectorXcd& psi);

// Executes the configured task, writing manifest.json and CSV files into
// config.output_dir. Progress lines go to `log`. Errors propagate as exceptions.
void run(const RunConfig& config, std::ostream& log);

} // namespace rydberg
