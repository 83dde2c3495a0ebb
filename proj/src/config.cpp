#include "rydberg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rydberg {

std::string_view to_string(ModelKind k) {
  switch (k) {
  case ModelKind::rydberg: return "rydberg";
  case ModelKind::effective: return "effective";
  case ModelKind::cahm: return "cahm";
  case ModelKind::sqed_charge: return "sqed-charge";
  case ModelKind::sqed_field: return "sqed-field";
  }
  return "unknown";
}

std::string_view to_string(TaskKind k) {
  switch (k) {
  case TaskKind::geom: return "geom";
  case TaskKind::coeffs: return "coeffs";
  case TaskKind::match: return "match";
  case TaskKind::gs: return "gs";
  case TaskKind::spectrum: return "spectrum";
  case TaskKind::evolve: return "evolve";
  case TaskKind::sweep: return "sweep";
  case TaskKind::compare: return "compare";
  }
  return "unknown";
}

std::string_view to_string(Units u) { return u == Units::two_pi_mhz ? "two-pi-mhz" : "rad-per-us"; }

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind k : {ModelKind::rydberg, ModelKind::effective, ModelKind::cahm,
                      ModelKind::sqed_charge, ModelKind::sqed_field}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("model.type: unknown model '" + std::string(text) +
                    "' (expected rydberg, effective, cahm, sqed-charge or sqed-field)");
}

TaskKind parse_task_kind(std::string_view text) {
  for (TaskKind k : {TaskKind::geom, TaskKind::coeffs, TaskKind::match, TaskKind::gs,
                     TaskKind::spectrum, TaskKind::evolve, TaskKind::sweep, TaskKind::compare}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("task.type: unknown task '" + std::string(text) + "'");
}

Units parse_units(std::string_view text) {
  if (text == "two-pi-mhz") return Units::two_pi_mhz;
  if (text == "rad-per-us") return Units::rad_per_us;
  throw ConfigError("drive.units: expected two-pi-mhz or rad-per-us, got '" + std::string(text) + "'");
}

double to_internal(double value, Units units) {
  return units == Units::two_pi_mhz ? from_two_pi_mhz(value) : value;
}

double from_internal(double value, Units units) {
  return units == Units::two_pi_mhz ? to_two_pi_mhz(value) : value;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

} // namespace

IniSections parse_ini(std::istream& in) {
  IniSections out;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      out[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (section.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key outside a section");
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (out[section].count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + section + "." + key);
    }
    out[section][key] = value;
  }
  return out;
}

double parse_double(std::string_view text, const std::string& field) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(field + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long parse_integer(std::string_view text, const std::string& field) {
  long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(field + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

namespace {

class SectionReader {
public:
  SectionReader(const IniSections& ini, const std::string& name) : name_(name) {
    if (auto it = ini.find(name); it != ini.end()) values_ = it->second;
  }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    return std::nullopt;
  }
  std::optional<double> number(const std::string& key) {
    if (auto t = text(key)) return parse_double(*t, field(key));
    return std::nullopt;
  }
  std::optional<long> integer(const std::string& key) {
    if (auto t = text(key)) return parse_integer(*t, field(key));
    return std::nullopt;
  }
  std::optional<bool> boolean(const std::string& key) {
    if (auto t = text(key)) {
      if (*t == "true" || *t == "yes" || *t == "1") return true;
      if (*t == "false" || *t == "no" || *t == "0") return false;
      throw ConfigError(field(key) + ": expected true or false, got '" + *t + "'");
    }
    return std::nullopt;
  }
  std::string field(const std::string& key) const { return name_ + "." + key; }

  void reject_unknown() const {
    for (const auto& [key, value] : values_) {
      if (!used_.count(key)) throw ConfigError("unknown field " + name_ + "." + key);
    }
  }

private:
  std::string name_;
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

} // namespace

RunConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  const IniSections ini = parse_ini(in);
  for (const auto& [name, values] : ini) {
    static const std::set<std::string> known = {"geometry", "drive", "model", "task", "output"};
    if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");
  }
  RunConfig c;
  c.source_text = text;

  SectionReader drive(ini, "drive");
  if (auto u = drive.text("units")) c.units = parse_units(*u);
  auto energy = [&](SectionReader& r, const std::string& key) -> std::optional<double> {
    if (auto v = r.number(key)) return to_internal(*v, c.units);
    return std::nullopt;
  };
  if (auto v = energy(drive, "c6")) c.c6 = *v;
  c.omega = energy(drive, "omega").value_or(0.0);
  c.delta = energy(drive, "delta").value_or(0.0);
  c.delta0 = energy(drive, "delta0").value_or(0.0);
  const std::optional<double> v0 = energy(drive, "v0");
  drive.reject_unknown();
  if (!(c.c6 > 0.0)) throw ConfigError("drive.c6 must be positive");

  SectionReader geo(ini, "geometry");
  if (auto k = geo.text("kind")) c.geometry.kind = parse_ladder_kind(*k);
  if (auto n = geo.integer("n_rungs")) c.geometry.n_rungs = static_cast<int>(*n);
  const auto a_x = geo.number("a_x");
  const auto a_y = geo.number("a_y");
  const auto rho = geo.number("rho");
  const auto a_x_in_rb = geo.number("a_x_in_rb");
  c.geometry.shift = geo.number("shift");
  c.geometry.prism_height = geo.number("prism_height");
  geo.reject_unknown();
  if (a_y && v0) throw ConfigError("give either geometry.a_y or drive.v0, not both");
  if (a_y) c.geometry.a_y = *a_y;
  if (v0) {
    if (!(*v0 > 0.0)) throw ConfigError("drive.v0 must be positive");
    c.geometry.a_y = spacing_for_coupling(c.c6, *v0);
  }
  const int given = (a_x ? 1 : 0) + (rho ? 1 : 0) + (a_x_in_rb ? 1 : 0);
  if (given > 1) throw ConfigError("give only one of geometry.a_x, geometry.rho, geometry.a_x_in_rb");
  if (a_x) c.geometry.a_x = *a_x;
  if (rho) {
    if (!(*rho > 0.0)) throw ConfigError("geometry.rho must be positive");
    c.geometry.a_x = c.geometry.a_y / *rho;
  }
  if (a_x_in_rb) c.geometry.a_x = *a_x_in_rb * blockade_radius(c.c6, c.omega);
  c.geometry.validate();

  SectionReader model(ini, "model");
  if (auto t = model.text("type")) c.model = parse_model_kind(*t);
  if (auto t = model.text("bc")) c.bc = parse_boundary(*t);
  if (auto t = model.text("flavor")) c.flavor = parse_flavor(*t);
  if (auto t = model.text("range_cutoff")) {
    if (*t == "nn") {
      c.range_cutoff = 1.5 * c.geometry.a_x;
    } else if (*t != "none") {
      c.range_cutoff = parse_double(*t, model.field("range_cutoff"));
      if (!(*c.range_cutoff > 0.0)) throw ConfigError("model.range_cutoff must be positive");
    }
  }
  if (auto k = model.integer("k_max")) c.k_max = static_cast<int>(*k);
  if (auto s = model.boolean("staggered")) c.staggered = *s;
  if (auto k = model.integer("case")) {
    if (*k != 1 && *k != 2) throw ConfigError("model.case must be 1 or 2");
    c.three_leg_case = *k == 1 ? ThreeLegCase::one : ThreeLegCase::two;
  }
  if (auto k = model.integer("max_per_rung")) c.max_per_rung = static_cast<int>(*k);
  if (auto k = model.integer("m_max")) c.m_max = static_cast<int>(*k);
  c.target.u = energy(model, "u").value_or(0.0);
  c.target.x = energy(model, "x").value_or(0.0);
  c.target.y = energy(model, "y").value_or(0.0);
  c.target.yp = energy(model, "yp").value_or(0.0);
  model.reject_unknown();
  if (c.k_max < 1) throw ConfigError("model.k_max must be at least 1");
  if (c.m_max < 1) throw ConfigError("model.m_max must be at least 1");

  SectionReader task(ini, "task");
  if (auto t = task.text("type")) c.task = parse_task_kind(*t);
  if (auto k = task.integer("k")) c.n_eigs = static_cast<int>(*k);
  if (auto t = task.text("initial")) c.initial = *t;
  if (auto t = task.number("t_total")) c.t_total = *t;
  if (auto t = task.number("dt")) c.dt = *t;
  if (auto t = task.text("axis")) c.sweep_axis = *t;
  c.sweep_from = energy(task, "from").value_or(0.0);
  c.sweep_to = energy(task, "to").value_or(c.sweep_from);
  if (auto n = task.integer("steps")) c.sweep_steps = static_cast<int>(*n);
  if (auto t = task.text("direction")) c.match_direction = *t;
  if (auto t = task.text("models")) {
    std::istringstream list(*t);
    std::string item;
    while (std::getline(list, item, ',')) c.compare_models.push_back(parse_model_kind(trim(item)));
  }
  if (auto t = task.text("compare")) c.compare_task = parse_task_kind(*t);
  if (auto t = task.number("threshold")) c.phase_threshold = *t;
  if (auto t = task.number("tol")) c.lanczos_tol = *t;
  task.reject_unknown();
  if (c.sweep_axis != "omega" && c.sweep_axis != "delta" && c.sweep_axis != "delta0") {
    throw ConfigError("task.axis must be omega, delta or delta0");
  }
  if (c.sweep_steps < 1) throw ConfigError("task.steps must be at least 1");
  if (c.match_direction != "forward" && c.match_direction != "inverse") {
    throw ConfigError("task.direction must be forward or inverse");
  }
  if (!(c.dt > 0.0)) throw ConfigError("task.dt must be positive");
  if (c.t_total < 0.0) throw ConfigError("task.t_total must be nonnegative");

  SectionReader output(ini, "output");
  if (auto t = output.text("directory")) c.output_dir = *t;
  if (auto s = output.integer("seed")) c.seed = static_cast<std::uint64_t>(*s);
  if (auto s = output.integer("threads")) c.threads = static_cast<int>(*s);
  output.reject_unknown();
  if (c.threads < 1) throw ConfigError("output.threads must be at least 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

} // namespace rydberg
