#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "eprlattice/parameters.hpp"

namespace eprl {

// Two distinguishable atoms on N-site tight-binding chains. Basis state
// |chi_j>|chi_l> has flat index j*N + l. Energies in E_rec, H0 = 0.

struct ExternalPotential {
  enum class Kind { none, harmonic, linear };
  Kind kind = Kind::none;
  double sigma_E = 0.0;  // harmonic: ground-state width in a (bare mass)
  double slope = 0.0;    // linear: E_rec per site
  double center = 0.0;   // site coordinate of the trap centre / zero of the ramp

  static ExternalPotential none() { return {}; }
  static ExternalPotential harmonic(double sigma_E, double center);
  static ExternalPotential linear(double slope, double center = 0.0);

  /// Energy of one atom at site j.
  double at(int j) const;
  void validate() const;
};

/// Harmonic frequency whose bare-mass ground state has width sigma_E: 1/(pi^2 sigma_E^2).
double harmonic_frequency(double sigma_E);

struct TwoAtomState {
  Eigen::MatrixXcd amplitudes;  // c(j, l)

  TwoAtomState() = default;
  explicit TwoAtomState(Eigen::MatrixXcd c) : amplitudes(std::move(c)) {}

  int site_count() const { return static_cast<int>(amplitudes.rows()); }
  double norm() const { return amplitudes.norm(); }
  void normalize();

  Eigen::VectorXcd flat() const;
  static TwoAtomState from_flat(const Eigen::VectorXcd& v, int site_count);
  static TwoAtomState from_flat(const Eigen::VectorXd& v, int site_count);

  /// Swap the roles of the two atoms.
  TwoAtomState swapped() const;
};

struct TwoAtomOptions {
  double memory_budget_mb = 1024.0;  // dense matrix limit
  bool sparse = false;               // matrix-free operator instead of dense storage
  int dense_limit = 40;              // N above which diagonalize uses Lanczos
  int lanczos_eigs = 0;              // 0: 2N + 10
  std::vector<double> offsite_vdd;   // optional V(|j - l| = 1, 2, ...), E_rec
};

class TwoAtomHamiltonian {
 public:
  TwoAtomHamiltonian(int site_count, double hop, double vdd, Boundary boundary,
                     ExternalPotential external, const TwoAtomOptions& options = {});

  int site_count() const { return n_; }
  int dimension() const { return n_ * n_; }
  int index(int j, int l) const { return j * n_ + l; }
  double hop() const { return hop_; }
  double vdd() const { return vdd_; }
  Boundary boundary() const { return boundary_; }
  const ExternalPotential& external() const { return external_; }
  const TwoAtomOptions& options() const { return options_; }

  bool has_dense() const { return dense_.size() > 0; }
  /// Dense matrix; assembled on demand when built in sparse mode.
  Eigen::MatrixXd dense() const;
  double diagonal(int j, int l) const;
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

  /// Upper bound on ||H||_2 (max absolute row sum).
  double norm_bound() const;

  /// Single-atom tight-binding matrix including the external potential.
  Eigen::MatrixXd single_atom_matrix() const;
  Eigen::VectorXd single_atom_spectrum() const;

 private:
  int n_;
  double hop_;
  double vdd_;
  Boundary boundary_;
  ExternalPotential external_;
  TwoAtomOptions options_;
  std::vector<double> site_energy_;
  Eigen::MatrixXd dense_;
};

TwoAtomHamiltonian build(const ModelParams& model, const ExternalPotential& external,
                         const TwoAtomOptions& options = {});

struct DiatomBand {
  int first = 0;
  int count = 0;  // 0 when no state is split off
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return count > 0 ? upper - lower : 0.0; }
};

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // real, columns
  DiatomBand diatom_band;
  double pair_min = 0.0;         // lowest sum of two single-atom energies
  double pair_max = 0.0;
  double max_residual = 0.0;     // max ||H v - E v||
  double norm_bound = 0.0;
  bool complete = true;          // false when only the low end was computed
  int site_count = 0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  TwoAtomState state(int n) const;
};

/// Full dense spectrum for N <= dense_limit, lowest eigenpairs by Lanczos otherwise.
/// Residual contract ||Hv - Ev|| <= 1e-8 ||H||; NumericalError if violated.
SpectrumResult diagonalize(const TwoAtomHamiltonian& h);

/// States below (attractive) or above (repulsive) all pairwise sums of single-atom levels.
DiatomBand find_diatom_band(const Eigen::VectorXd& eigenvalues, double pair_min, double pair_max,
                            double vdd, bool complete);

TwoAtomState diatom_ground_state(const SpectrumResult& spectrum);

/// 2 V_hop^2 / V_dd
double diatom_hopping(double hop, double vdd);

/// hbar^2 |V_dd| / (4 V_hop^2 a^2)
double diatom_effective_mass(double hop, double vdd, double lattice_constant = 1.0);

/// |K| of a real eigenvector from <T>, T translating both atoms by one site (periodic only).
double total_quasimomentum(const TwoAtomState& state);

struct DiatomDispersion {
  std::vector<double> K;       // |K| per diatom-band state
  std::vector<double> energy;
};
DiatomDispersion diatom_dispersion(const SpectrumResult& spectrum);

struct ThermalWeights {
  std::vector<int> indices;
  std::vector<double> weights;  // normalised
};

enum class ThermalSubset { diatom_band, full };

/// Boltzmann weights exp(-E_n / kT) with kT in E_rec. kT = 0 puts all weight
/// on the lowest state of the subset (shared among exact degeneracies).
ThermalWeights thermal_state(const SpectrumResult& spectrum, double kT,
                             ThermalSubset subset = ThermalSubset::full);

/// sum_j |c_jj|^2
double diagonal_weight(const TwoAtomState& state);

/// Weight with |j - l| <= band (periodic distance when periodic is set).
double band_weight(const TwoAtomState& state, int band, bool periodic = false);

}  // namespace eprl
