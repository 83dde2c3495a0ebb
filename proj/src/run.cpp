#include "rydberg/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rydberg/effective.hpp"
#include "rydberg/hamiltonians.hpp"
#include "rydberg/matching.hpp"
#include "rydberg/solvers.hpp"

namespace rydberg {

using nlohmann::json;

namespace {

double v0_of(const RunConfig& c) { return c.c6 / std::pow(c.geometry.a_y, 6); }

MatchGeometry match_geometry_for(LadderKind kind) {
  switch (kind) {
  case LadderKind::two_leg: return MatchGeometry::two_leg;
  case LadderKind::three_leg: return MatchGeometry::three_leg;
  case LadderKind::prism: return MatchGeometry::clock;
  default: break;
  }
  throw ConfigError("matching is defined for two-leg, three-leg and prism geometries, not " +
                    std::string(to_string(kind)));
}

class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << std::setprecision(17);
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  template <typename... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << values, first = false), ...);
    out_ << '\n';
  }

private:
  std::ofstream out_;
};

json coefficients_json(const EffectiveCoefficients& c, Units units) {
  auto e = [&](double v) { return from_internal(v, units); };
  json j;
  j["D"] = e(c.d);
  j["R"] = e(c.r);
  j["Rp"] = e(c.rp);
  j["J"] = e(c.j);
  j["flavor"] = std::string(to_string(c.flavor));
  j["staggered"] = c.staggered;
  if (c.d_first) j["d_first"] = e(*c.d_first);
  if (c.d_last) j["d_last"] = e(*c.d_last);
  j["const_per_site"] = e(c.const_per_site);
  j["const_per_bond"] = e(c.const_per_bond);
  j["zero_bc_first"] = e(c.zero_bc_first);
  j["zero_bc_last"] = e(c.zero_bc_last);
  j["zero_bc_const"] = e(c.zero_bc_const);
  json lr = json::array();
  for (const LongRangeTerm& t : c.long_range) lr.push_back({{"k", t.k}, {"R", e(t.r)}, {"Rp", e(t.rp)}});
  j["long_range"] = lr;
  // Metadata mixes energies, inverse energies and ratios, so it stays in rad/us.
  json meta;
  for (const auto& [key, value] : c.metadata) meta[key] = value;
  j["metadata"] = meta;
  return j;
}

json couplings_json(const RunConfig& c) {
  json j;
  const AtomArray atoms = build_ladder(c.geometry);
  const CouplingMatrix cm = pairwise_couplings(atoms, c.c6);
  for (const auto& [name, value] : cm.named) j[name] = from_internal(value, c.units);
  return j;
}

json resolved_config(const RunConfig& c) {
  auto e = [&](double v) { return from_internal(v, c.units); };
  json j;
  j["geometry"] = {{"kind", std::string(to_string(c.geometry.kind))},
                   {"n_rungs", c.geometry.n_rungs},
                   {"a_x", c.geometry.a_x},
                   {"a_y", c.geometry.a_y},
                   {"rho", c.geometry.rho()}};
  if (c.geometry.shift) j["geometry"]["shift"] = *c.geometry.shift;
  if (c.geometry.prism_height) j["geometry"]["prism_height"] = *c.geometry.prism_height;
  j["drive"] = {{"units", std::string(to_string(c.units))},
                {"omega", e(c.omega)},
                {"delta", e(c.delta)},
                {"delta0", e(c.delta0)},
                {"c6", e(c.c6)}};
  j["model"] = {{"type", std::string(to_string(c.model))},
                {"bc", std::string(to_string(c.bc))},
                {"k_max", c.k_max},
                {"staggered", c.staggered},
                {"case", static_cast<int>(c.three_leg_case)},
                {"m_max", c.m_max},
                {"u", e(c.target.u)},
                {"x", e(c.target.x)},
                {"y", e(c.target.y)},
                {"yp", e(c.target.yp)}};
  if (c.flavor) j["model"]["flavor"] = std::string(to_string(*c.flavor));
  if (c.range_cutoff) j["model"]["range_cutoff"] = *c.range_cutoff;
  if (c.max_per_rung) j["model"]["max_per_rung"] = *c.max_per_rung;
  json models = json::array();
  for (ModelKind k : c.compare_models) models.push_back(std::string(to_string(k)));
  j["task"] = {{"type", std::string(to_string(c.task))},
               {"k", c.n_eigs},
               {"initial", c.initial},
               {"t_total", c.t_total},
               {"dt", c.dt},
               {"axis", c.sweep_axis},
               {"from", e(c.sweep_from)},
               {"to", e(c.sweep_to)},
               {"steps", c.sweep_steps},
               {"direction", c.match_direction},
               {"models", models},
               {"compare", std::string(to_string(c.compare_task))},
               {"threshold", c.phase_threshold},
               {"tol", c.lanczos_tol}};
  j["output"] = {{"directory", c.output_dir}, {"seed", c.seed}, {"threads", c.threads}};
  return j;
}

GroundState ground_state(const ModelInstance& m, const RunConfig& c) {
  LanczosOptions opts;
  opts.tol = c.lanczos_tol;
  opts.seed = c.seed;
  return lanczos_ground_state(m.h, opts);
}

struct ScanRow {
  double omega = 0.0, delta = 0.0, delta0 = 0.0;
  double e0 = std::numeric_limits<double>::quiet_NaN();
  OrderParameters op;
  double s1 = std::numeric_limits<double>::quiet_NaN();
  double s2 = std::numeric_limits<double>::quiet_NaN();
  std::string phase = "n/a";
  std::string error;
};

ScanRow scan_point(RunConfig c) {
  ScanRow row;
  row.omega = c.omega;
  row.delta = c.delta;
  row.delta0 = c.delta0;
  try {
    const ModelInstance m = build_model(c, c.model);
    const GroundState gs = ground_state(m, c);
    row.e0 = gs.energy;
    if (m.spin) {
      const Eigen::VectorXcd psi = gs.psi.cast<std::complex<double>>();
      row.op = order_parameters(psi, *m.spin);
      row.phase = std::string(to_string(classify_phase(row.op, c.phase_threshold)));
      if (m.n_sites >= 2) {
        row.s1 = renyi_entropy(psi, *m.spin, m.n_sites / 2, 1);
        row.s2 = renyi_entropy(psi, *m.spin, m.n_sites / 2, 2);
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

void write_manifest(const std::filesystem::path& dir, json manifest) {
  std::ofstream out(dir / "manifest.json");
  if (!out) throw ConfigError("cannot write manifest in " + dir.string());
  out << std::setw(2) << manifest << '\n';
}

} // namespace

EffectiveCoefficients coefficients_for(const RunConfig& c) {
  const double v0 = v0_of(c);
  const double rho = c.geometry.rho();
  EffectiveCoefficients coeffs;
  switch (c.geometry.kind) {
  case LadderKind::two_leg:
    coeffs = coeffs_two_leg(v0, c.delta, c.omega, rho, c.k_max);
    break;
  case LadderKind::three_leg:
    coeffs = coeffs_three_leg(c.three_leg_case, v0, c.delta, c.delta0, c.omega, rho);
    break;
  case LadderKind::prism:
    coeffs = coeffs_prism(v0, c.delta, c.delta0, c.omega, rho,
                          c.geometry.prism_height.value_or(std::numbers::sqrt3 / 2.0 * c.geometry.a_y) /
                              c.geometry.a_y);
    break;
  case LadderKind::in_plane_triangle:
    coeffs = coeffs_in_plane(v0, c.delta, c.delta0, c.omega, rho,
                             c.geometry.shift.value_or(std::numbers::sqrt3 / 2.0 * c.geometry.a_y) /
                                 c.geometry.a_y);
    break;
  case LadderKind::chain:
    throw ConfigError("a single chain has no spin-1 effective model");
  }
  if (c.staggered) coeffs = staggered(coeffs);
  if (c.flavor) coeffs.flavor = *c.flavor;
  return coeffs;
}

AtomArray atoms_for(const RunConfig& c) {
  AtomArray atoms = build_ladder(c.geometry);
  if (atoms.n_legs == 3) apply_middle_leg_offset(atoms, c.delta0);
  if (c.bc == BoundaryCondition::zero_zero && c.geometry.kind != LadderKind::chain) {
    const StateDictionary dict(c.geometry.kind);
    pin_zero_boundary(atoms, dict.zero_legs(), c.c6, c.range_cutoff);
  }
  return atoms;
}

ModelInstance build_model(const RunConfig& c, ModelKind kind) {
  ModelInstance m;
  m.kind = kind;
  m.n_sites = c.geometry.n_rungs;
  switch (kind) {
  case ModelKind::rydberg: {
    if (c.bc == BoundaryCondition::periodic) {
      throw ConfigError("model.bc: periodic boundaries are not available for the Rydberg simulator");
    }
    m.atoms = atoms_for(c);
    const CouplingMatrix couplings = pairwise_couplings(*m.atoms, c.c6);
    m.rydberg.emplace(enumerate_rydberg(m.atoms->size(), m.atoms->n_legs, c.max_per_rung));
    if (c.geometry.kind != LadderKind::chain) m.dict.emplace(c.geometry.kind);
    m.h = rydberg_hamiltonian(*m.atoms, c.omega, c.delta, couplings, *m.rydberg, c.range_cutoff);
    break;
  }
  case ModelKind::effective: {
    m.coeffs = coefficients_for(c);
    m.spin.emplace(m.n_sites, 1);
    m.h = effective_spin1_hamiltonian(*m.coeffs, m.n_sites, c.bc);
    break;
  }
  case ModelKind::cahm:
    m.spin.emplace(m.n_sites, c.m_max);
    m.h = cahm_hamiltonian(c.target, m.n_sites, c.m_max);
    break;
  case ModelKind::sqed_field:
    m.spin.emplace(m.n_sites, 1);
    m.h = sqed_field_hamiltonian(c.target, m.n_sites, c.bc, c.flavor.value_or(HoppingFlavor::ladder));
    break;
  case ModelKind::sqed_charge:
    m.h = sqed_charge_hamiltonian(c.target, m.n_sites, c.m_max);
    break;
  }
  return m;
}

Eigen::VectorXcd initial_state(const ModelInstance& m, const std::string& label) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.h.dim()));
  std::size_t index = 0;
  if (label == "all-ground") {
    if (m.rydberg) {
      index = *m.rydberg->index_of(0);
    } else if (m.spin) {
      std::vector<int> zeros(m.n_sites, 0);
      index = m.spin->index_of(zeros);
    } else {
      throw ConfigError("task.initial: all-ground is not defined for this model");
    }
  } else if (label.rfind("spin:", 0) == 0) {
    const std::string digits = label.substr(5);
    if (static_cast<int>(digits.size()) != m.n_sites) {
      throw ConfigError("task.initial: expected " + std::to_string(m.n_sites) + " spin labels in '" +
                        label + "'");
    }
    std::vector<int> spins;
    for (char ch : digits) {
      if (ch == '+' || ch == '1') spins.push_back(1);
      else if (ch == '0') spins.push_back(0);
      else if (ch == '-') spins.push_back(-1);
      else throw ConfigError("task.initial: spin labels must be +, 0 or -");
    }
    if (m.spin) {
      index = m.spin->index_of(spins);
    } else if (m.rydberg && m.dict) {
      Config config = 0;
      for (int i = 0; i < m.n_sites; ++i) {
        config |= m.dict->pattern_of(spins[i]) << (i * m.dict->legs());
      }
      const auto found = m.rydberg->index_of(config);
      if (!found) throw ConfigError("task.initial: state is excluded by the rung constraint");
      index = *found;
    } else {
      throw ConfigError("task.initial: spin labels need a spin or dictionary basis");
    }
  } else if (label.rfind("index:", 0) == 0) {
    const long i = parse_integer(label.substr(6), "task.initial");
    if (i < 0 || static_cast<std::size_t>(i) >= m.h.dim()) {
      throw ConfigError("task.initial: basis index out of range");
    }
    index = static_cast<std::size_t>(i);
  } else {
    throw ConfigError("task.initial: unknown state label '" + label + "'");
  }
  psi[static_cast<Eigen::Index>(index)] = 1.0;
  return psi;
}

SiteProfile model_profile(const ModelInstance& m, const Eigen::VectorXcd& psi) {
  if (m.spin) return site_profile(psi, *m.spin);
  if (m.rydberg && m.dict) return site_profile(psi, *m.rydberg, *m.dict);
  throw ConfigError("site profiles need a spin basis or a ladder dictionary");
}

void run(const RunConfig& c, std::ostream& log) {
  const auto started = std::chrono::steady_clock::now();
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  auto e = [&](double v) { return from_internal(v, c.units); };

  json manifest;
  manifest["tool"] = "rydsim";
  manifest["version"] = kToolVersion;
  manifest["task"] = std::string(to_string(c.task));
  manifest["config"] = resolved_config(c);
  manifest["config_text"] = c.source_text;
  manifest["seed"] = c.seed;
  manifest["threads"] = c.threads;
  manifest["energy_units"] = std::string(to_string(c.units));
  json outputs = json::array();
  json summary;

  json derived;
  derived["rho"] = c.geometry.rho();
  derived["V0"] = e(v0_of(c));
  if (c.omega > 0.0) derived["R_b"] = blockade_radius(c.c6, c.omega);
  derived["couplings"] = couplings_json(c);
  if (c.geometry.kind != LadderKind::chain) {
    try {
      derived["coefficients"] = coefficients_json(coefficients_for(c), c.units);
    } catch (const ConfigError& err) {
      derived["coefficients_error"] = err.what();
    }
  }
  manifest["derived"] = derived;

  switch (c.task) {
  case TaskKind::geom: {
    const AtomArray atoms = atoms_for(c);
    CsvWriter csv(dir / "atoms.csv", {"atom_id", "rung", "leg", "x", "y", "z"});
    for (int i = 0; i < atoms.size(); ++i) {
      const Position& p = atoms.positions[i];
      csv.row(i, atoms.rung_of[i] + 1, atoms.leg_of[i], p[0], p[1], p[2]);
    }
    outputs.push_back("atoms.csv");
    log << "wrote " << atoms.size() << " atoms\n";
    break;
  }
  case TaskKind::coeffs: {
    const json coeffs = coefficients_json(coefficients_for(c), c.units);
    std::ofstream(dir / "coeffs.json") << std::setw(2) << coeffs << '\n';
    outputs.push_back("coeffs.json");
    log << std::setw(2) << coeffs << '\n';
    break;
  }
  case TaskKind::match: {
    const MatchGeometry g = match_geometry_for(c.geometry.kind);
    json result;
    if (c.match_direction == "forward") {
      const DeviceParams p{v0_of(c), c.delta, c.delta0, c.omega, c.geometry.rho()};
      const ForwardMatch f = match_forward(g, p, c.bc, c.geometry.n_rungs);
      result = {{"direction", "forward"},
                {"geometry", std::string(to_string(g))},
                {"U", e(f.target.u)},
                {"X", e(f.target.x)},
                {"Y", e(f.target.y)},
                {"Yp", e(f.target.yp)},
                {"flavor", std::string(to_string(f.flavor))},
                {"constant", e(f.constant)},
                {"boundary_matchable", f.boundary_matchable},
                {"boundary_mismatch", e(f.boundary_mismatch)}};
    } else {
      const InverseMatch inv = match_inverse(g, c.target);
      result = {{"direction", "inverse"},
                {"geometry", std::string(to_string(g))},
                {"v0", e(inv.params.v0)},
                {"delta", e(inv.params.delta)},
                {"delta0", e(inv.params.delta0)},
                {"omega", e(inv.params.omega)},
                {"rho", inv.params.rho},
                {"residual", inv.residual},
                {"iterations", inv.iterations}};
    }
    std::ofstream(dir / "match.json") << std::setw(2) << result << '\n';
    outputs.push_back("match.json");
    summary = result;
    log << std::setw(2) << result << '\n';
    break;
  }
  case TaskKind::gs: {
    const ModelInstance m = build_model(c, c.model);
    const GroundState gs = ground_state(m, c);
    summary["E0"] = e(gs.energy);
    summary["residual"] = e(gs.residual);
    summary["iterations"] = gs.iterations;
    summary["dim"] = m.h.dim();
    const Eigen::VectorXcd psi = gs.psi.cast<std::complex<double>>();
    if (m.spin || m.dict) {
      const SiteProfile prof = model_profile(m, psi);
      CsvWriter csv(dir / "profile.csv", {"site", "lz", "lz2"});
      for (std::size_t i = 0; i < prof.lz.size(); ++i) csv.row(i + 1, prof.lz[i], prof.lz2[i]);
      outputs.push_back("profile.csv");
    }
    if (m.spin) {
      const OrderParameters op = order_parameters(psi, *m.spin);
      summary["m_fm"] = op.m_fm;
      summary["m_afm"] = op.m_afm;
      summary["m_rdw"] = op.m_rdw;
      summary["phase"] = std::string(to_string(classify_phase(op, c.phase_threshold)));
    }
    log << "E0 = " << std::setprecision(12) << e(gs.energy) << " (dim " << m.h.dim() << ")\n";
    break;
  }
  case TaskKind::spectrum: {
    const ModelInstance m = build_model(c, c.model);
    const SpectrumResult spec = dense_eigs(m.h, c.n_eigs);
    CsvWriter csv(dir / "spectrum.csv", {"index", "energy", "sector_overlap", "residual"});
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      double overlap = std::numeric_limits<double>::quiet_NaN();
      if (m.rydberg && m.dict) {
        overlap = sector_overlap(Eigen::VectorXd(spec.eigenvectors.col(i)), *m.rydberg, *m.dict);
      }
      csv.row(i, e(spec.eigenvalues[i]), overlap, e(spec.residuals[i]));
    }
    outputs.push_back("spectrum.csv");
    summary["n_eigenvalues"] = spec.eigenvalues.size();
    log << "computed " << spec.eigenvalues.size() << " eigenvalues\n";
    break;
  }
  case TaskKind::evolve: {
    const ModelInstance m = build_model(c, c.model);
    const Eigen::VectorXcd psi0 = initial_state(m, c.initial);
    CsvWriter csv(dir / "timeseries.csv", {"t", "site", "lz", "lz2"});
    double max_norm_dev = 0.0;
    const double e_start = m.h.expectation(psi0);
    double max_energy_dev = 0.0;
    const EvolveStats stats = krylov_evolve(m.h, psi0, c.t_total, c.dt, [&](double t, const StateVector& psi) {
      const SiteProfile prof = model_profile(m, psi);
      for (std::size_t i = 0; i < prof.lz.size(); ++i) csv.row(t, i + 1, prof.lz[i], prof.lz2[i]);
      max_norm_dev = std::max(max_norm_dev, std::abs(psi.norm() - 1.0));
      max_energy_dev = std::max(max_energy_dev, std::abs(m.h.expectation(psi) - e_start));
    });
    outputs.push_back("timeseries.csv");
    summary["substeps"] = stats.substeps;
    summary["max_error_estimate"] = stats.max_error_estimate;
    summary["max_norm_deviation"] = max_norm_dev;
    summary["max_energy_deviation"] = e(max_energy_dev);
    log << "evolved " << stats.substeps << " Krylov substeps\n";
    break;
  }
  case TaskKind::sweep: {
    std::vector<RunConfig> points;
    for (int i = 0; i < c.sweep_steps; ++i) {
      RunConfig p = c;
      const double value =
          c.sweep_steps == 1 ? c.sweep_from
                             : c.sweep_from + (c.sweep_to - c.sweep_from) * i / (c.sweep_steps - 1);
      if (c.sweep_axis == "omega") p.omega = value;
      else if (c.sweep_axis == "delta") p.delta = value;
      else p.delta0 = value;
      points.push_back(p);
    }
    std::vector<ScanRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = scan_point(points[i]);
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(c.threads, static_cast<int>(points.size()));
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    CsvWriter csv(dir / "scan.csv",
                  {"omega", "delta", "delta0", "m_fm", "m_afm", "m_rdw", "chi_fm", "chi_afm", "chi_rdw",
                   "chi_abs_fm", "chi_abs_afm", "chi_abs_rdw", "S1", "S2", "E0", "phase_label", "error"});
    int failures = 0;
    for (const ScanRow& r : rows) {
      if (!r.error.empty()) ++failures;
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      csv.row(e(r.omega), e(r.delta), e(r.delta0), r.op.m_fm, r.op.m_afm, r.op.m_rdw, r.op.chi_fm,
              r.op.chi_afm, r.op.chi_rdw, r.op.chi_abs_fm, r.op.chi_abs_afm, r.op.chi_abs_rdw, r.s1,
              r.s2, e(r.e0), r.phase, err);
    }
    outputs.push_back("scan.csv");
    summary["points"] = rows.size();
    summary["failures"] = failures;
    log << "swept " << rows.size() << " points (" << failures << " failures)\n";
    break;
  }
  case TaskKind::compare: {
    std::vector<ModelKind> models = c.compare_models;
    if (models.empty()) models = {ModelKind::rydberg, ModelKind::effective};
    if (models.size() != 2) throw ConfigError("task.models must name exactly two models");
    const ModelInstance a = build_model(c, models[0]);
    const ModelInstance b = build_model(c, models[1]);
    summary["models"] = {std::string(to_string(models[0])), std::string(to_string(models[1]))};
    if (c.compare_task == TaskKind::gs) {
      const double ea = ground_state(a, c).energy;
      const double eb = ground_state(b, c).energy;
      CsvWriter csv(dir / "compare.csv", {"quantity", "a", "b", "abs_dev", "rel_dev"});
      csv.row("E0", e(ea), e(eb), e(std::abs(ea - eb)), std::abs(ea - eb) / std::abs(ea));
      summary["E0_a"] = e(ea);
      summary["E0_b"] = e(eb);
      summary["relative_error"] = std::abs(ea - eb) / std::abs(ea);
      log << "E0: " << std::setprecision(12) << e(ea) << " vs " << e(eb) << '\n';
    } else if (c.compare_task == TaskKind::evolve) {
      const Trajectory ta = krylov_evolve(a.h, initial_state(a, c.initial), c.t_total, c.dt);
      const Trajectory tb = krylov_evolve(b.h, initial_state(b, c.initial), c.t_total, c.dt);
      CsvWriter csv(dir / "compare_timeseries.csv", {"t", "site", "lz_a", "lz_b", "lz2_a", "lz2_b"});
      double max_dev = 0.0;
      for (std::size_t s = 0; s < ta.times.size(); ++s) {
        const SiteProfile pa = model_profile(a, ta.states[s]);
        const SiteProfile pb = model_profile(b, tb.states[s]);
        for (std::size_t i = 0; i < pa.lz.size(); ++i) {
          csv.row(ta.times[s], i + 1, pa.lz[i], pb.lz[i], pa.lz2[i], pb.lz2[i]);
          max_dev = std::max(max_dev, std::abs(pa.lz2[i] - pb.lz2[i]));
        }
      }
      summary["max_lz2_deviation"] = max_dev;
      log << "max |lz2_a - lz2_b| = " << max_dev << '\n';
    } else {
      throw ConfigError("task.compare must be gs or evolve");
    }
    outputs.push_back(c.compare_task == TaskKind::gs ? "compare.csv" : "compare_timeseries.csv");
    break;
  }
  }

  manifest["outputs"] = outputs;
  manifest["summary"] = summary;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_manifest(dir, manifest);
}

} // namespace rydberg
