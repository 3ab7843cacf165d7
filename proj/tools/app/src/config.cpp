#include "eprlat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "eprlattice/error.hpp"

namespace eprlat {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                                  : fmt::format("{}: {}", source, message)),
      line_(line) {}

eprl::PhysicalParams PhysicalSection::to_physical() const {
  eprl::PhysicalParams p;
  p.atom_mass = atom_mass_u * eprl::si::atomic_mass_unit;
  p.lambda_lattice = lambda_lattice_nm * 1e-9;
  p.lambda_coupling = lambda_coupling_nm * 1e-9;
  p.intensity_lattice = intensity_lattice_w_cm2 * 1e4;
  p.intensity_coupling = intensity_coupling_w_cm2 * 1e4;
  p.dipole_lattice = dipole_lattice_cm;
  p.dipole_coupling = dipole_coupling_cm;
  p.detuning_lattice = detuning_lattice_rad_s;
  p.detuning_coupling = detuning_coupling_rad_s;
  p.transition_freq_coupling = 2.0 * eprl::kPi * eprl::si::speed_of_light / p.lambda_coupling;
  p.lattice_shift = lattice_shift_nm * 1e-9;
  return p;
}

std::string_view to_string(ExternalKind k) {
  switch (k) {
    case ExternalKind::none: return "none";
    case ExternalKind::linear: return "linear";
    case ExternalKind::harmonic: return "harmonic";
  }
  return "none";
}

std::string_view to_string(DistState s) {
  switch (s) {
    case DistState::ground: return "ground";
    case DistState::thermal: return "thermal";
    case DistState::prepared: return "prepared";
  }
  return "ground";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw std::invalid_argument("expected a finite number, got '" + v + "'");
  return out;
}

int to_int(const std::string& v) {
  int out = 0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return out;
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  return out;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt_double(v[i]);
  return out;
}

template <class E>
E to_enum(const std::string& v, std::initializer_list<E> options) {
  for (E e : options)
    if (to_string(e) == v) return e;
  std::string names;
  for (E e : options) names += (names.empty() ? "" : ", ") + std::string(to_string(e));
  throw std::invalid_argument("expected one of " + names + ", got '" + v + "'");
}

struct Key {
  std::string section;
  std::string name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::optional<std::string>(const ExperimentConfig&)> get;
};

template <class Member>
Key number(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](ExperimentConfig& c, const std::string& v) { member(c) = to_double(v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            return fmt_double(member(c));
          }};
}

template <class Member>
Key integer(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](ExperimentConfig& c, const std::string& v) { member(c) = to_int(v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            return std::to_string(member(c));
          }};
}

template <class Member>
Key optional_number(std::string section, std::string name, Member member) {
  return {std::move(section), std::move(name),
          [member](ExperimentConfig& c, const std::string& v) { member(c) = to_double(v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> {
            const auto& o = member(c);
            if (!o) return std::nullopt;
            return fmt_double(*o);
          }};
}

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    using C = ExperimentConfig;
    k.push_back(number("physical", "atom_mass_u", [](auto& c) -> auto& { return c.physical.atom_mass_u; }));
    k.push_back(number("physical", "lambda_lattice_nm", [](auto& c) -> auto& { return c.physical.lambda_lattice_nm; }));
    k.push_back(number("physical", "lambda_coupling_nm", [](auto& c) -> auto& { return c.physical.lambda_coupling_nm; }));
    k.push_back(number("physical", "intensity_lattice_w_cm2",
                       [](auto& c) -> auto& { return c.physical.intensity_lattice_w_cm2; }));
    k.push_back(number("physical", "intensity_coupling_w_cm2",
                       [](auto& c) -> auto& { return c.physical.intensity_coupling_w_cm2; }));
    k.push_back(number("physical", "dipole_lattice_cm", [](auto& c) -> auto& { return c.physical.dipole_lattice_cm; }));
    k.push_back(number("physical", "dipole_coupling_cm", [](auto& c) -> auto& { return c.physical.dipole_coupling_cm; }));
    k.push_back(number("physical", "detuning_lattice_rad_s",
                       [](auto& c) -> auto& { return c.physical.detuning_lattice_rad_s; }));
    k.push_back(number("physical", "detuning_coupling_rad_s",
                       [](auto& c) -> auto& { return c.physical.detuning_coupling_rad_s; }));
    k.push_back(number("physical", "lattice_shift_nm", [](auto& c) -> auto& { return c.physical.lattice_shift_nm; }));

    k.push_back(integer("model", "sites", [](auto& c) -> auto& { return c.model.sites; }));
    k.push_back({"model", "boundary",
                 [](C& c, const std::string& v) {
                   try {
                     c.model.boundary = eprl::boundary_from_string(v);
                   } catch (const std::exception&) {
                     throw std::invalid_argument("expected open or periodic, got '" + v + "'");
                   }
                 },
                 [](const C& c) -> std::optional<std::string> { return std::string(eprl::to_string(c.model.boundary)); }});
    k.push_back(optional_number("model", "depth", [](auto& c) -> auto& { return c.model.depth; }));
    k.push_back(optional_number("model", "hop", [](auto& c) -> auto& { return c.model.hop; }));
    k.push_back(optional_number("model", "vdd", [](auto& c) -> auto& { return c.model.vdd; }));
    k.push_back(number("model", "measurement_depth", [](auto& c) -> auto& { return c.model.measurement_depth; }));
    k.push_back({"model", "external",
                 [](C& c, const std::string& v) {
                   c.model.external =
                       to_enum(v, {ExternalKind::none, ExternalKind::linear, ExternalKind::harmonic});
                 },
                 [](const C& c) -> std::optional<std::string> { return std::string(to_string(c.model.external)); }});
    k.push_back(integer("model", "n_planewaves", [](auto& c) -> auto& { return c.model.n_planewaves; }));
    k.push_back(integer("model", "n_k", [](auto& c) -> auto& { return c.model.n_k; }));
    k.push_back(integer("model", "dense_limit", [](auto& c) -> auto& { return c.model.dense_limit; }));

    k.push_back(number("protocol", "sigma_E", [](auto& c) -> auto& { return c.protocol.sigma_E; }));
    k.push_back(optional_number("protocol", "j0", [](auto& c) -> auto& { return c.protocol.j0; }));
    k.push_back(number("protocol", "slope", [](auto& c) -> auto& { return c.protocol.slope; }));
    k.push_back({"protocol", "times_s", [](C& c, const std::string& v) { c.protocol.times_s = to_list(v); },
                 [](const C& c) -> std::optional<std::string> { return fmt_list(c.protocol.times_s); }});
    k.push_back(number("protocol", "temperature_nK", [](auto& c) -> auto& { return c.protocol.temperature_nK; }));
    k.push_back(optional_number("protocol", "ejection_line",
                                [](auto& c) -> auto& { return c.protocol.ejection_line; }));
    k.push_back({"protocol", "boundary",
                 [](C& c, const std::string& v) {
                   try {
                     c.protocol.boundary = eprl::boundary_from_string(v);
                   } catch (const std::exception&) {
                     throw std::invalid_argument("expected open or periodic, got '" + v + "'");
                   }
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(eprl::to_string(c.protocol.boundary));
                 }});

    k.push_back({"dist", "state",
                 [](C& c, const std::string& v) {
                   c.dist.state = to_enum(v, {DistState::ground, DistState::thermal, DistState::prepared});
                 },
                 [](const C& c) -> std::optional<std::string> { return std::string(to_string(c.dist.state)); }});
    k.push_back(optional_number("dist", "conditional_site",
                                [](auto& c) -> auto& { return c.dist.conditional_site; }));

    k.push_back({"output", "directory",
                 [](C& c, const std::string& v) {
                   if (v.empty()) throw std::invalid_argument("directory must not be empty");
                   c.output.directory = v;
                 },
                 [](const C& c) -> std::optional<std::string> { return c.output.directory; }});
    k.push_back(integer("output", "resolution", [](auto& c) -> auto& { return c.output.resolution; }));
    k.push_back(integer("output", "momentum_points_per_zone",
                        [](auto& c) -> auto& { return c.output.momentum_points_per_zone; }));
    k.push_back(number("output", "momentum_window", [](auto& c) -> auto& { return c.output.momentum_window; }));

    k.push_back({"sweep", "parameter",
                 [](C& c, const std::string& v) {
                   const auto& names = sweep_parameters();
                   if (std::find(names.begin(), names.end(), v) == names.end())
                     throw std::invalid_argument("unknown sweep parameter '" + v + "'");
                   c.sweep.parameter = v;
                 },
                 [](const C& c) -> std::optional<std::string> { return c.sweep.parameter; }});
    k.push_back(number("sweep", "start", [](auto& c) -> auto& { return c.sweep.start; }));
    k.push_back(number("sweep", "stop", [](auto& c) -> auto& { return c.sweep.stop; }));
    k.push_back(integer("sweep", "steps", [](auto& c) -> auto& { return c.sweep.steps; }));
    return k;
  }();
  return keys;
}

const Key* find_key(const std::string& section, const std::string& name) {
  for (const Key& k : schema())
    if (k.section == section && k.name == name) return &k;
  return nullptr;
}

bool known_section(const std::string& section) {
  for (const Key& k : schema())
    if (k.section == section) return true;
  return false;
}

// Line of each key, for anchoring semantic errors.
using LineMap = std::map<std::string, int>;

void check(bool ok, const LineMap& lines, const std::string& source, const std::string& key,
           const std::string& message) {
  if (ok) return;
  const auto it = lines.find(key);
  throw ConfigError(source, it == lines.end() ? 0 : it->second, key + ": " + message);
}

void validate_impl(const ExperimentConfig& c, const std::string& source, const LineMap& lines) {
  const auto& p = c.physical;
  check(p.atom_mass_u > 0, lines, source, "physical.atom_mass_u", "must be positive");
  check(p.lambda_lattice_nm > 0, lines, source, "physical.lambda_lattice_nm", "must be positive");
  check(p.lambda_coupling_nm > 0, lines, source, "physical.lambda_coupling_nm", "must be positive");
  check(p.intensity_lattice_w_cm2 >= 0, lines, source, "physical.intensity_lattice_w_cm2", "must be non-negative");
  check(p.intensity_coupling_w_cm2 >= 0, lines, source, "physical.intensity_coupling_w_cm2", "must be non-negative");
  check(p.dipole_lattice_cm > 0, lines, source, "physical.dipole_lattice_cm", "must be positive");
  check(p.dipole_coupling_cm > 0, lines, source, "physical.dipole_coupling_cm", "must be positive");
  check(p.detuning_lattice_rad_s != 0, lines, source, "physical.detuning_lattice_rad_s", "must be non-zero");
  check(p.lattice_shift_nm > 0, lines, source, "physical.lattice_shift_nm", "must be positive");
  check(p.lattice_shift_nm < p.lambda_lattice_nm / 2, lines, source, "physical.lattice_shift_nm",
        "must be below half the lattice wavelength");

  const auto& m = c.model;
  check(m.sites >= 3, lines, source, "model.sites", "need at least 3 sites");
  check(!m.depth || *m.depth >= 0, lines, source, "model.depth", "must be non-negative");
  check(!m.hop || *m.hop <= 0, lines, source, "model.hop", "hopping is negative in this convention");
  check(m.measurement_depth > 0, lines, source, "model.measurement_depth", "must be positive");
  check(m.n_planewaves >= 3 && m.n_planewaves % 2 == 1, lines, source, "model.n_planewaves", "must be odd and >= 3");
  check(m.n_k >= 8, lines, source, "model.n_k", "must be at least 8");
  check(m.dense_limit >= 3, lines, source, "model.dense_limit", "must be at least 3");
  check(!(m.external == ExternalKind::linear && m.boundary == eprl::Boundary::periodic), lines, source,
        "model.external", "a linear potential needs an open boundary");

  const auto& pr = c.protocol;
  check(pr.sigma_E > 0, lines, source, "protocol.sigma_E", "must be positive");
  check(pr.temperature_nK >= 0, lines, source, "protocol.temperature_nK", "must be non-negative");
  check(!pr.j0 || (*pr.j0 >= 0 && *pr.j0 <= m.sites - 1), lines, source, "protocol.j0", "must lie on the lattice");
  check(!(pr.boundary == eprl::Boundary::periodic && pr.slope != 0.0), lines, source, "protocol.boundary",
        "a linear potential needs an open boundary");
  check(!pr.times_s.empty(), lines, source, "protocol.times_s", "need at least one time");
  check(std::is_sorted(pr.times_s.begin(), pr.times_s.end()), lines, source, "protocol.times_s",
        "times must be non-decreasing");

  const auto& o = c.output;
  check(o.resolution >= 16, lines, source, "output.resolution", "need at least 16 points per cell");
  check(o.momentum_points_per_zone >= 0, lines, source, "output.momentum_points_per_zone", "must be non-negative");
  check(o.momentum_window > 0, lines, source, "output.momentum_window", "must be positive");

  check(c.sweep.steps >= 0, lines, source, "sweep.steps", "must be non-negative");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig c;
  LineMap lines;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_section(section)) throw ConfigError(source, line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    if (section.empty()) throw ConfigError(source, line_no, "key outside of a section");
    const std::string name = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const Key* key = find_key(section, name);
    if (key == nullptr) throw ConfigError(source, line_no, "unknown key '" + name + "' in [" + section + "]");
    const std::string full = section + "." + name;
    if (lines.count(full)) throw ConfigError(source, line_no, "duplicate key '" + name + "'");
    lines[full] = line_no;
    try {
      key->set(c, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, line_no, name + ": " + e.what());
    }
  }
  validate_impl(c, source, lines);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

void validate(const ExperimentConfig& config, const std::string& source) { validate_impl(config, source, {}); }

std::string to_text(const ExperimentConfig& config) {
  std::string out;
  std::string section;
  for (const Key& k : schema()) {
    const auto v = k.get(config);
    if (!v) continue;
    if (k.section != section) {
      out += (section.empty() ? "" : "\n") + fmt::format("[{}]\n", k.section);
      section = k.section;
    }
    out += fmt::format("{} = {}\n", k.name, *v);
  }
  return out;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"vdd", "vhop", "U0", "T", "sigma_E", "l", "slope"};
  return names;
}

ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& parameter, double value) {
  ExperimentConfig c = config;
  if (parameter == "vdd") c.model.vdd = value;
  else if (parameter == "vhop") c.model.hop = value;
  else if (parameter == "U0") c.model.depth = value;
  else if (parameter == "T") c.protocol.temperature_nK = value;
  else if (parameter == "sigma_E") c.protocol.sigma_E = value;
  else if (parameter == "l") c.physical.lattice_shift_nm = value;
  else if (parameter == "slope") c.protocol.slope = value;
  else throw ConfigError("sweep", 0, "unknown sweep parameter '" + parameter + "'");
  validate(c, "sweep point " + parameter + " = " + fmt_double(value));
  return c;
}

std::vector<double> sweep_grid(const SweepSection& sweep) {
  std::vector<double> out;
  if (sweep.steps <= 0) return out;
  if (sweep.steps == 1) return {sweep.start};
  out.reserve(static_cast<std::size_t>(sweep.steps));
  for (int i = 0; i < sweep.steps; ++i)
    out.push_back(sweep.start + (sweep.stop - sweep.start) * i / (sweep.steps - 1));
  return out;
}

SweepSection parse_range(const std::string& parameter, const std::string& range) {
  const auto& names = sweep_parameters();
  if (std::find(names.begin(), names.end(), parameter) == names.end())
    throw ConfigError("command line", 0, "unknown sweep parameter '" + parameter + "'");
  SweepSection s;
  s.parameter = parameter;
  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw ConfigError("command line", 0, "range must be start:stop:steps, got '" + range + "'");
  try {
    s.start = to_double(parts[0]);
    s.stop = to_double(parts[1]);
    s.steps = to_int(parts[2]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("command line", 0, std::string("range: ") + e.what());
  }
  if (s.steps < 0) throw ConfigError("command line", 0, "range: steps must be non-negative");
  return s;
}

Derived derive(const ExperimentConfig& config) {
  Derived d;
  d.physical = config.physical.to_physical();
  d.band.n_planewaves = config.model.n_planewaves;
  d.band.n_k = config.model.n_k;
  d.model = eprl::to_model(d.physical, config.model.sites, config.model.boundary, d.band);
  if (config.model.depth) {
    d.model.lattice_depth = *config.model.depth;
    const eprl::HoppingResult h = eprl::hopping_exact(eprl::bloch_spectrum(*config.model.depth, d.band));
    d.model.hop = h.hop;
    d.model.hop_valid = h.valid;
    d.model.hop_next_nearest = h.next_nearest;
    d.model.bandwidth = h.bandwidth;
  }
  if (config.model.hop) d.model.hop = *config.model.hop;
  if (config.model.vdd) d.model.vdd = *config.model.vdd;
  d.j0 = config.protocol.j0 ? *config.protocol.j0 : (config.model.sites - 1) / 2.0;
  d.kT = d.model.kelvin_to_energy(config.protocol.temperature_nK * 1e-9);
  return d;
}

}  // namespace eprlat
