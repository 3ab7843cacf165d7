#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eprlattice/band_structure.hpp"
#include "eprlattice/parameters.hpp"
#include "eprlattice/two_atom.hpp"

namespace eprlat {

/// Invalid configuration. `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct PhysicalSection {
  double atom_mass_u = 7.0160034;
  double lambda_lattice_nm = 323.0;
  double lambda_coupling_nm = 670.8;
  double intensity_lattice_w_cm2 = 0.186;
  double intensity_coupling_w_cm2 = 0.023;
  double dipole_lattice_cm = 1.26e-30;
  double dipole_coupling_cm = 2.7e-29;
  double detuning_lattice_rad_s = 6.0e7;
  double detuning_coupling_rad_s = 3.7e9;
  double lattice_shift_nm = 40.0;

  eprl::PhysicalParams to_physical() const;
  bool operator==(const PhysicalSection&) const = default;
};

enum class ExternalKind { none, linear, harmonic };

struct ModelSection {
  int sites = 25;
  eprl::Boundary boundary = eprl::Boundary::periodic;
  std::optional<double> depth;  // U0 override, E_rec
  std::optional<double> hop;    // V_hop override, E_rec
  std::optional<double> vdd;    // V_dd override, E_rec
  double measurement_depth = 13.4;
  ExternalKind external = ExternalKind::none;
  int n_planewaves = 41;
  int n_k = 64;
  int dense_limit = 40;
  bool operator==(const ModelSection&) const = default;
};

struct ProtocolSection {
  double sigma_E = 5.0;             // a
  std::optional<double> j0;         // default: lattice centre
  double slope = 0.04;              // E_rec per site
  std::vector<double> times_s{0.0, 1.4e-4, 2.16e-4};
  double temperature_nK = 10.0;
  std::optional<double> ejection_line;  // site coordinate; default from the diatom Bloch amplitude
  eprl::Boundary boundary = eprl::Boundary::open;
  bool operator==(const ProtocolSection&) const = default;
};

enum class DistState { ground, thermal, prepared };

struct DistSection {
  DistState state = DistState::thermal;
  std::optional<double> conditional_site;  // default: lattice centre
  bool operator==(const DistSection&) const = default;
};

struct OutputSection {
  std::string directory = "out";
  int resolution = 16;               // position points per lattice cell
  int momentum_points_per_zone = 0;  // 0: 4 N
  double momentum_window = 4.0;      // written |p| range, units of pi hbar / a
  bool operator==(const OutputSection&) const = default;
};

struct SweepSection {
  std::string parameter = "vdd";
  double start = 0.0;
  double stop = 2.5;
  int steps = 0;  // number of grid points, endpoints included
  bool operator==(const SweepSection&) const = default;
};

struct ExperimentConfig {
  PhysicalSection physical;
  ModelSection model;
  ProtocolSection protocol;
  DistSection dist;
  OutputSection output;
  SweepSection sweep;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parse INI text. `source` names the input in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "config");
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical text with every key; parse_config(to_text(c)) == c.
std::string to_text(const ExperimentConfig& config);

/// Semantic checks that need more than one key. Throws ConfigError.
void validate(const ExperimentConfig& config, const std::string& source = "config");

std::string_view to_string(ExternalKind k);
std::string_view to_string(DistState s);

/// Parameters a sweep may vary.
const std::vector<std::string>& sweep_parameters();
/// Copy of `config` with one sweep parameter set to `value`.
ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& parameter, double value);
/// Grid of `steps` points from start to stop inclusive (steps = 1 gives start).
std::vector<double> sweep_grid(const SweepSection& sweep);
/// "start:stop:steps"
SweepSection parse_range(const std::string& parameter, const std::string& range);

// Derived quantities shared by the subcommands.
struct Derived {
  eprl::PhysicalParams physical;
  eprl::ModelParams model;
  eprl::BandOptions band;
  double j0 = 0.0;
  double kT = 0.0;  // E_rec
};
Derived derive(const ExperimentConfig& config);

}  // namespace eprlat
