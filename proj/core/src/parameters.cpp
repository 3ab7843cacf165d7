#include "eprlattice/parameters.hpp"

#include <cmath>
#include <string>

#include "eprlattice/band_structure.hpp"
#include "eprlattice/error.hpp"
#include "eprlattice/liddi.hpp"

namespace eprl {

std::string_view to_string(Boundary b) {
  return b == Boundary::open ? "open" : "periodic";
}

Boundary boundary_from_string(std::string_view s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw DomainError("unknown boundary '" + std::string(s) + "' (expected open or periodic)");
}

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) throw DomainError(std::string(name) + " must be positive");
}

void require_non_negative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(name) + " must be non-negative");
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(atom_mass, "atom_mass");
  require_positive(lambda_lattice, "lambda_lattice");
  require_positive(lambda_coupling, "lambda_coupling");
  require_non_negative(intensity_lattice, "intensity_lattice");
  require_non_negative(intensity_coupling, "intensity_coupling");
  require_positive(dipole_lattice, "dipole_lattice");
  require_positive(dipole_coupling, "dipole_coupling");
  require_positive(transition_freq_coupling, "transition_freq_coupling");
  require_positive(lattice_shift, "lattice_shift");
  if (!std::isfinite(detuning_lattice) || detuning_lattice == 0.0)
    throw DomainError("detuning_lattice must be nonzero");
  if (!std::isfinite(detuning_coupling) || detuning_coupling == 0.0)
    throw DomainError("detuning_coupling must be nonzero");
  if (lattice_shift >= lambda_lattice / 2.0)
    throw DomainError("lattice_shift must be smaller than the lattice constant");
}

PhysicalParams PhysicalParams::lithium_reference() {
  PhysicalParams p;
  p.atom_mass = 7.0160034 * si::atomic_mass_unit;
  p.lambda_lattice = 323e-9;
  p.lambda_coupling = 670.8e-9;
  p.intensity_lattice = 0.186e4;
  p.intensity_coupling = 0.023e4;
  p.dipole_lattice = 1.26e-30;
  p.dipole_coupling = 2.7e-29;
  p.detuning_lattice = 50.0 * 1.2e6;
  p.detuning_coupling = 100.0 * 3.7e7;
  p.transition_freq_coupling = 2.0 * kPi * si::speed_of_light / p.lambda_coupling;
  p.lattice_shift = 40e-9;
  return p;
}

void ModelParams::validate() const {
  require_positive(recoil_energy, "recoil_energy");
  require_positive(lattice_constant, "lattice_constant");
  if (site_count < 3) throw DomainError("site_count must be at least 3");
  if (!std::isfinite(hop)) throw DomainError("hop must be finite");
  if (!std::isfinite(vdd)) throw DomainError("vdd must be finite");
  if (!std::isfinite(lattice_depth) || lattice_depth < 0.0)
    throw DomainError("lattice_depth must be finite and non-negative");
}

double ModelParams::kelvin_to_energy(double kelvin) const {
  return si::k_boltzmann * kelvin / recoil_energy;
}

double ModelParams::energy_to_kelvin(double e) const {
  return e * recoil_energy / si::k_boltzmann;
}

double ModelParams::seconds_to_time(double seconds) const {
  return seconds * recoil_energy / si::hbar;
}

double ModelParams::time_to_seconds(double t) const {
  return t * si::hbar / recoil_energy;
}

double ModelParams::mass_to_kg(double m) const {
  return m * si::hbar * si::hbar / (recoil_energy * lattice_constant * lattice_constant);
}

double recoil_energy(double mass_kg, double lambda_lattice_m) {
  require_positive(mass_kg, "mass");
  require_positive(lambda_lattice_m, "lambda_lattice");
  return 2.0 * kPi * kPi * si::hbar * si::hbar / (mass_kg * lambda_lattice_m * lambda_lattice_m);
}

double lattice_depth(double intensity_lattice, double dipole_lattice, double detuning_lattice) {
  if (!std::isfinite(detuning_lattice) || detuning_lattice == 0.0)
    throw DomainError("lattice detuning must be nonzero");
  return 4.0 * dipole_lattice * dipole_lattice * intensity_lattice /
         (si::epsilon0 * si::hbar * si::speed_of_light * detuning_lattice);
}

ModelParams to_model(const PhysicalParams& phys, int site_count, Boundary boundary) {
  return to_model(phys, site_count, boundary, BandOptions{});
}

ModelParams to_model(const PhysicalParams& phys, int site_count, Boundary boundary,
                     const BandOptions& band) {
  phys.validate();
  ModelParams m;
  m.recoil_energy = recoil_energy(phys.atom_mass, phys.lambda_lattice);
  m.lattice_constant = phys.lambda_lattice / 2.0;
  m.site_count = site_count;
  m.boundary = boundary;
  m.lattice_depth =
      lattice_depth(phys.intensity_lattice, phys.dipole_lattice, phys.detuning_lattice) /
      m.recoil_energy;

  const BlochSpectrum spectrum = bloch_spectrum(m.lattice_depth, band);
  const HoppingResult h = hopping_exact(spectrum);
  m.hop = h.hop;
  m.hop_next_nearest = h.next_nearest;
  m.bandwidth = h.bandwidth;
  m.hop_valid = h.valid;

  const double omega = phys.transition_freq_coupling - phys.detuning_coupling;
  const double alpha = polarizability(phys.dipole_coupling, phys.transition_freq_coupling, omega);
  const double vc = coupling_strength(alpha, phys.lambda_coupling, phys.intensity_coupling);
  const VddNearest v = vdd_nearest(vc, phys.lambda_coupling, phys.lattice_shift);
  m.vdd = v.value / m.recoil_energy;
  m.vdd_valid = v.valid;

  m.validate();
  return m;
}

}  // namespace eprl
