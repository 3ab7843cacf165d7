#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace eprl {

// Single-atom lattice H = p^2/2m - (U0/2) cos(2 pi x / a) in natural units
// (E_rec, a, hbar = 1). Bloch states are expanded in plane waves
// exp(i (k + 2 pi n) x), n = -(M-1)/2 .. (M-1)/2.

struct BandOptions {
  int n_planewaves = 41;
  int n_k = 64;
  int kept_bands = 3;
  double convergence_tol = 1e-10;
};

/// Lowest-band Bloch data at a single quasimomentum, gauge fixed.
struct BlochPoint {
  double energy = 0.0;
  Eigen::VectorXd coefficients;  // plane-wave amplitudes, unit norm
};

/// Real symmetric tridiagonal plane-wave matrix at quasimomentum k.
Eigen::MatrixXd planewave_hamiltonian(double depth, double k, int n_planewaves);

/// Lowest `count` eigenvalues of the plane-wave matrix at k.
Eigen::VectorXd band_energies_at(double depth, double k, int n_planewaves, int count);

/// Lowest-band eigenpair at k with the real, positive-at-site-centre gauge.
BlochPoint lowest_band_at(double depth, double k, int n_planewaves);

struct BlochSpectrum {
  double depth = 0.0;
  int n_planewaves = 0;
  std::vector<double> quasimomenta;        // [-pi, pi), spacing 2 pi / n_k
  Eigen::MatrixXd band_energies;           // (kept bands) x (n_k)
  std::vector<Eigen::VectorXd> lowest_states;  // gauge-fixed lowest band, one per k
  double convergence_residual = 0.0;       // max change against the doubled basis

  int n_k() const { return static_cast<int>(quasimomenta.size()); }
  int band_count() const { return static_cast<int>(band_energies.rows()); }
  double lowest(int ik) const { return band_energies(0, ik); }
};

/// Diagonalise the quantum-pendulum Hamiltonian on an n_k mesh. Checks that
/// the lowest bands do not move (to options.convergence_tol) when the plane-wave
/// basis is doubled; throws NumericalError otherwise.
BlochSpectrum bloch_spectrum(double depth, const BandOptions& options = {});

struct HoppingResult {
  double hop = 0.0;            // nearest-neighbour Fourier coefficient of E(k)
  double next_nearest = 0.0;   // second Fourier coefficient
  double center_energy = 0.0;  // H0, band mean
  double bandwidth = 0.0;      // V_B = max - min of the lowest band
  double truncation_error = 0.0;  // |4|hop| - V_B| / V_B
  bool valid = false;          // truncation_error <= 5%
};

HoppingResult hopping_exact(const BlochSpectrum& spectrum);

/// |V_hop| ~ (1/4) exp(-0.26 U0), in E_rec. Returned as a magnitude.
double hopping_approx(double depth);

/// U0 at which the exact hopping has magnitude |hop|. Bisection in [0, 80].
double depth_for_hopping(double hop, const BandOptions& options = {});

/// m_eff = 2 hbar^2 / (a^2 V_B) in units of hbar^2/(E_rec a^2). Bare mass is kBareMass.
double effective_mass(double bandwidth, double lattice_constant = 1.0);

/// H0 + 2 V_hop cos(k a)
inline double tight_binding_dispersion(double center, double hop, double k) {
  return center + 2.0 * hop * std::cos(k);
}

/// Real-valued lowest-band Wannier function built from the spectrum's k mesh.
class WannierBasis {
 public:
  WannierBasis() = default;
  WannierBasis(const BlochSpectrum& spectrum, int site, int points_per_cell);

  double depth() const { return depth_; }
  int site() const { return site_; }
  int site_count() const { return site_count_; }
  int points_per_cell() const { return points_per_cell_; }
  double hop() const { return hop_; }
  double center_energy() const { return center_energy_; }

  /// Sample points covering site_count cells centred on the site.
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

  /// chi_site(x); zero beyond half the k-mesh period, where images would alias.
  double value(double x) const;

  /// chi_0 sampled at x0 + i*step, i = 0..count-1 (centred at site 0).
  std::vector<double> sample_centered(double x0, double step, int count) const;

  /// Fourier transform chi~(p) of the infinite-lattice site-0 function (hbar = a = 1).
  double momentum_amplitude(double p) const;

  /// sqrt(<x^2>) about the site centre.
  double width() const { return width_; }
  /// Largest |Im chi| met while summing the Bloch functions.
  double imaginary_residual() const { return imag_residual_; }

 private:
  double eval_centered(double x) const;

  double depth_ = 0.0;
  int n_planewaves_ = 0;
  int site_ = 0;
  int site_count_ = 0;
  int points_per_cell_ = 0;
  double hop_ = 0.0;
  double center_energy_ = 0.0;
  double width_ = 0.0;
  double imag_residual_ = 0.0;
  std::vector<double> wavenumbers_;  // k + 2 pi n, flattened
  std::vector<double> weights_;      // c_n(k) / n_k
  std::vector<double> grid_;
  std::vector<double> values_;
};

WannierBasis wannier(const BlochSpectrum& spectrum, int site = 0, int points_per_cell = 64);

struct GaussianApprox {
  double sigma = 0.0;     // sigma_G in units of a
  double fidelity = 0.0;  // |<psi_Gauss|chi_0>|^2
};

/// sigma_G^2 = (lambda_L^2 / 4 pi^2) sqrt(E_rec / 2 U0), i.e. sqrt(1/(2 U0)) / pi^2 in a^2.
double gaussian_sigma(double depth);

GaussianApprox gaussian_approx(const WannierBasis& wannier);
GaussianApprox gaussian_approx(double depth, const BandOptions& options = {});

/// <psi^Gauss_0 | H_lat | psi^Gauss_1>, closed form for the Gaussian ansatz.
double gaussian_hopping(double depth);

}  // namespace eprl
