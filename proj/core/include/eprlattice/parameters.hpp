#pragma once

#include <string_view>

namespace eprl {

namespace si {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
}  // namespace si

inline constexpr double kPi = 3.14159265358979323846;

// Natural units used everywhere below this module: energies in E_rec, lengths
// in the lattice constant a = lambda_L/2, hbar = 1. The bare atomic mass is
// then pi^2/2, since E_rec = pi^2 hbar^2 / (2 m a^2).
inline constexpr double kBareMass = kPi * kPi / 2.0;

enum class Boundary { open, periodic };

std::string_view to_string(Boundary b);
Boundary boundary_from_string(std::string_view s);

struct PhysicalParams {
  double atom_mass = 0.0;                 // kg
  double lambda_lattice = 0.0;            // m
  double lambda_coupling = 0.0;           // m
  double intensity_lattice = 0.0;         // W/m^2
  double intensity_coupling = 0.0;        // W/m^2
  double dipole_lattice = 0.0;            // C m
  double dipole_coupling = 0.0;           // C m
  double detuning_lattice = 0.0;          // rad/s
  double detuning_coupling = 0.0;         // rad/s, omega = omega_A - delta_C
  double transition_freq_coupling = 0.0;  // rad/s (omega_A)
  double lattice_shift = 0.0;             // m (l)

  /// Throws DomainError on non-physical input. Intensities may be zero.
  void validate() const;

  /// Lithium-7 set: 2s-3p lattice at 323 nm, 2s-2p coupling at 670.8 nm, l = 40 nm.
  static PhysicalParams lithium_reference();

  bool operator==(const PhysicalParams&) const = default;
};

/// Dimensionless tight-binding parameters plus the SI anchors needed to go back.
struct ModelParams {
  double recoil_energy = 0.0;      // J
  double lattice_depth = 0.0;      // U0 / E_rec
  double hop = 0.0;                // V_hop / E_rec (negative)
  double vdd = 0.0;                // V_dd / E_rec (negative = attractive)
  int site_count = 0;
  double lattice_constant = 0.0;   // m
  Boundary boundary = Boundary::periodic;

  // Band-structure side information.
  bool hop_valid = true;           // nearest-neighbour truncation acceptable
  double hop_next_nearest = 0.0;   // E_rec
  double bandwidth = 0.0;          // V_B / E_rec
  bool vdd_valid = true;           // l << lambda_C holds (l <= lambda_C/10)

  void validate() const;

  // Unit conversions anchored on this model's E_rec and a.
  double energy_to_joule(double e) const { return e * recoil_energy; }
  double joule_to_energy(double joule) const { return joule / recoil_energy; }
  double kelvin_to_energy(double kelvin) const;
  double energy_to_kelvin(double e) const;
  double seconds_to_time(double seconds) const;
  double time_to_seconds(double t) const;
  double mass_to_kg(double m) const;

  bool operator==(const ModelParams&) const = default;
};

/// E_rec = 2 pi^2 hbar^2 / (m lambda_L^2), in joules.
double recoil_energy(double mass_kg, double lambda_lattice_m);

/// U0 = 4 |mu_L|^2 I_L / (eps0 hbar c delta_L), in joules.
double lattice_depth(double intensity_lattice, double dipole_lattice, double detuning_lattice);

struct BandOptions;

/// Compose the SI-level inputs into a ModelParams. The hopping comes from the
/// exact band calculation and V_dd from the nearest-site LIDDI formula.
ModelParams to_model(const PhysicalParams& phys, int site_count, Boundary boundary);
ModelParams to_model(const PhysicalParams& phys, int site_count, Boundary boundary,
                     const BandOptions& band);

}  // namespace eprl
