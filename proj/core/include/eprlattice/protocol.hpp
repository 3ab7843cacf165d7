#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eprlattice/distributions.hpp"
#include "eprlattice/two_atom.hpp"

namespace eprl {

// Preparation sequence: cooled harmonic ground state, lattice product state,
// then evolution under LIDDI plus a linear tilt that lets light single atoms
// run away from slow diatoms. Natural units; times in hbar / E_rec.

struct InitialState {
  TwoAtomState state;
  std::vector<double> envelope;  // alpha_j, normalised on the lattice
  double tail_mass = 0.0;        // envelope weight cut off by the lattice ends
  std::vector<std::string> warnings;
};

/// c_jl = alpha_j alpha_l with alpha_j ~ exp(-(j - j0)^2 / (4 sigma_E^2)).
InitialState initial_state(double sigma_E, double j0, int site_count);

struct SeparationDiagnostics {
  double diagonal_weight = 0.0;  // sum_j |c_jj|^2
  double diatom_mass = 0.0;      // |j - l| <= band
  double single_mass = 0.0;
  std::optional<double> diatom_centroid;  // mean of (j + l) / 2 over the diatom band
  std::optional<double> single_centroid;  // same over the remainder
};

SeparationDiagnostics separation_diagnostics(const TwoAtomState& state, int band = 1);

/// |single - origin| / |diatom - origin|; empty when either centroid is absent
/// or the diatom has not moved.
std::optional<double> displacement_ratio(const SeparationDiagnostics& d, double origin);

struct ProtocolTrace {
  std::vector<double> times;
  std::vector<TwoAtomState> states;
  std::vector<SeparationDiagnostics> diagnostics;
  std::vector<double> energies;  // <H> per snapshot
  double max_norm_error = 0.0;
  double max_energy_drift = 0.0;  // relative to the t = 0 value (absolute if that is ~0)
};

/// psi(t) = sum_n exp(-i E_n t) <n|psi(0)> |n>, using a complete spectrum.
class Propagator {
 public:
  Propagator(const SpectrumResult& spectrum, const TwoAtomState& initial);
  TwoAtomState at(double t) const;
  double energy() const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXcd overlaps_;
  int site_count_;
};

/// Snapshots at the given non-decreasing times (negative times run backwards).
ProtocolTrace evolve(const TwoAtomState& initial, const SpectrumResult& spectrum,
                     const std::vector<double>& times, int band = 1);
/// n_snapshots uniformly spaced times in [0, t_final].
ProtocolTrace evolve(const TwoAtomState& initial, const SpectrumResult& spectrum, double t_final,
                     int n_snapshots, int band = 1);

struct Region {
  double lo = -1e300;
  double hi = 1e300;
};

struct PostSelection {
  TwoAtomState state;
  double retained_mass = 0.0;
};

/// Keep amplitudes with |j - l| <= band and both atoms inside the region, renormalised.
PostSelection postselect_diatoms(const TwoAtomState& state, const Region& region, int band = 1);

/// Diagonal part of the initial product state, sum_j alpha_j^2 |j j>, normalised.
TwoAtomState ideal_diatom_state(const InitialState& initial);

/// |<a|b>|^2
double fidelity(const TwoAtomState& a, const TwoAtomState& b);

struct CoolingRequirements {
  double t_max_initial = 0.0;   // K, hbar^2 / (4 m k_B sigma_E^2)
  double t_max_band = 0.0;      // K, diatom bandwidth 4 |2 V_hop^2 / V_dd| / k_B
  double trap_frequency = 0.0;  // Hz, trap whose ground state has width sigma_E
};

/// sigma_E in m, mass in kg; hop and vdd in E_rec with the given recoil energy in J.
CoolingRequirements cooling_requirements(double sigma_E, double mass, double hop, double vdd,
                                         double recoil_energy);

/// Single-atom thermal density matrix of the harmonic trap (bare mass, width
/// sigma_E in a) sampled at the site centres; unit trace. kT in E_rec.
Eigen::MatrixXd thermal_envelope(double sigma_E, double kT, double j0, int site_count);

/// Two thermal atoms post-selected onto |j j>: rho_d(j, j') = rho(j, j')^2,
/// returned as its eigen-decomposition.
MixedState prepared_diatom_mixture(double sigma_E, double kT, double j0, int site_count);

}  // namespace eprl
