#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydberg/coefficients.hpp"
#include "rydberg/effective.hpp"
#include "rydberg/geometry.hpp"
#include "rydberg/hamiltonians.hpp"

namespace rydberg {

enum class ModelKind { rydberg, effective, cahm, sqed_charge, sqed_field };
enum class TaskKind { geom, coeffs, match, gs, spectrum, evolve, sweep, compare };
enum class Units { two_pi_mhz, rad_per_us };

std::string_view to_string(ModelKind k);
std::string_view to_string(TaskKind k);
std::string_view to_string(Units u);
ModelKind parse_model_kind(std::string_view text);
TaskKind parse_task_kind(std::string_view text);
Units parse_units(std::string_view text);

// Sectioned key = value text. Lines starting with '#' or ';' are comments.
// Values are stored verbatim; typed access happens in parse_config.
using IniSections = std::map<std::string, std::map<std::string, std::string>>;
IniSections parse_ini(std::istream& in);

// Exact decimal parsing (std::from_chars); throws ConfigError naming `field`.
double parse_double(std::string_view text, const std::string& field);
long parse_integer(std::string_view text, const std::string& field);

// Every energy is stored in rad/us after conversion; lengths in um; times in us.
struct RunConfig {
  LadderSpec geometry;
  double c6 = kDefaultC6;
  Units units = Units::two_pi_mhz;

  double omega = 0.0;
  double delta = 0.0;
  double delta0 = 0.0;

  ModelKind model = ModelKind::rydberg;
  BoundaryCondition bc = BoundaryCondition::open;
  std::optional<HoppingFlavor> flavor;
  std::optional<double> range_cutoff; // um, compared with the rung separation
  int k_max = 1;
  bool staggered = false;
  ThreeLegCase three_leg_case = ThreeLegCase::two;
  std::optional<int> max_per_rung;
  int m_max = 1;
  TargetCouplings target; // cahm / sqed models, and inverse matching

  TaskKind task = TaskKind::gs;
  int n_eigs = 6;
  std::string initial = "all-ground";
  double t_total = 1.0;
  double dt = 0.01;
  std::string sweep_axis = "omega";
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 1;
  std::string match_direction = "forward";
  std::vector<ModelKind> compare_models;
  TaskKind compare_task = TaskKind::gs;
  double phase_threshold = 0.1;
  double lanczos_tol = 1e-10;

  std::string output_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;

  // The text the configuration was parsed from, kept for the manifest.
  std::string source_text;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Energy as entered in the config's unit system -> rad/us.
double to_internal(double value, Units units);
double from_internal(double value, Units units);

} // namespace rydberg
