#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "eprlattice/band_structure.hpp"
#include "eprlattice/parameters.hpp"
#include "eprlattice/two_atom.hpp"

namespace eprl {

// Joint, marginal and conditional distributions of the two atoms. Positions in
// units of a, momenta in hbar/a.

struct Axis {
  double start = 0.0;
  double step = 1.0;
  int count = 0;

  double at(int i) const { return start + step * i; }
  double back() const { return at(count - 1); }
  /// Nearest grid index, or -1 when v lies more than half a step outside.
  int nearest(double v) const;
};

enum class DistKind { position, momentum };

struct JointDistribution {
  DistKind kind = DistKind::position;
  Axis axis1, axis2;
  Eigen::MatrixXd density;  // density(i1, i2)
  int site_first = 0;       // atom-1 lattice sites carried by the state
  int site_count = 0;

  double total() const;
};

/// Incoherent mixture of two-atom states.
struct MixedState {
  std::vector<TwoAtomState> states;
  std::vector<double> weights;
  Boundary boundary = Boundary::open;

  static MixedState pure(TwoAtomState s, Boundary b);
  static MixedState thermal(const SpectrumResult& spectrum, const ThermalWeights& w, Boundary b);
  void validate() const;
};

/// Amplitudes with atom 2 re-indexed so that periodic pairs are contiguous:
/// column m holds site m + first2, where m + first2 = j + wrap(l - j).
struct PairAmplitudes {
  Eigen::MatrixXcd c;  // rows: atom-1 sites, cols: atom-2 sites
  int first1 = 0;
  int first2 = 0;
};

PairAmplitudes unfold(const TwoAtomState& state, Boundary boundary);

struct JointOptions {
  int points_per_cell = 64;       // position grid; at least 16
  int margin_cells = 4;           // padding beyond the outermost sites
  int momentum_points_per_zone = 0;  // 0: 8 N
  double momentum_extent = 0.0;   // 0: multiple of pi covering >= 5 / sigma_W
};

JointDistribution position_joint(const MixedState& state, const WannierBasis& wannier,
                                 const JointOptions& options = {});
JointDistribution momentum_joint(const MixedState& state, const WannierBasis& wannier,
                                 const JointOptions& options = {});

struct Profile {
  Axis axis;
  std::vector<double> density;

  double total() const;
  double mean() const;
  double rms(double about) const;
  /// Half width at half maximum of the local peak reached by climbing from `near`.
  double hwhm(double near) const;
  /// sigma of a Gaussian fitted to the log-density above half maximum of that peak.
  double gaussian_sigma(double near) const;
  /// Positions of local maxima above rel_threshold * max.
  std::vector<double> peaks(double rel_threshold = 0.1) const;
};

/// Slice at the grid point nearest `value` of the given atom (1 or 2), renormalised.
Profile conditional(const JointDistribution& joint, double value, int measured_atom);
/// Same, integrated over a detector bin of the given width.
Profile conditional_binned(const JointDistribution& joint, double value, double bin_width,
                           int measured_atom);

Profile marginal(const JointDistribution& joint, int atom);
/// Distribution of x1 - x2 (or p1 - p2).
Profile difference_marginal(const JointDistribution& joint);
/// Distribution of x1 + x2 (or p1 + p2).
Profile sum_marginal(const JointDistribution& joint);
/// Density along the line coordinate2 = sign * coordinate1.
Profile line_profile(const JointDistribution& joint, int sign);

/// Pearson correlation of the two coordinates, restricted to |q1|, |q2| <= box.
double correlation(const JointDistribution& joint,
                   double box = std::numeric_limits<double>::infinity());

/// RMS of x2 - x_j with atom 1 found at a site centre x_j, averaged over sites
/// with the probability of that outcome.
double conditional_dx_minus(const JointDistribution& position);

struct EprMetrics {
  double dx_minus = 0.0;            // conditional RMS, see conditional_dx_minus
  double dp_plus = 0.0;             // HWHM of the central p1 + p2 ridge
  double s = 0.0;                   // 1 / (2 dx_minus dp_plus)
  double dx_minus_fit = 0.0;        // Gaussian-fit sigma of the central x1 - x2 peak
  double dp_plus_fit = 0.0;         // Gaussian-fit sigma of the central p1 + p2 ridge
  double dx_minus_marginal_hwhm = 0.0;  // HWHM of the central x1 - x2 peak
  double peak_spacing_x = 0.0;      // along x2 = x1
  double peak_spacing_p = 0.0;      // between p1 + p2 ridges
};

EprMetrics epr_metrics(const JointDistribution& position, const JointDistribution& momentum);

inline double s_parameter(double dx_minus, double dp_plus) { return 1.0 / (2.0 * dx_minus * dp_plus); }

/// 1 / (sqrt(2) sigma_E tanh(1 / (2 sigma_E^2 m kT))); natural units, kT in E_rec.
double thermal_dp_plus(double sigma_E, double kT, double mass = kBareMass);
/// Same in SI: sigma_E in m, T in K, mass in kg; returns kg m / s.
double thermal_dp_plus_si(double sigma_E, double temperature, double mass);
/// s ~ (sigma_E / (sqrt 2 sigma)) tanh[(a / sigma_E)^2 E_rec / (pi^2 kT)].
double s_estimate(double sigma_E, double sigma, double kT);

/// Gaussian two-particle state with relative width dx_minus and centre-of-mass width dx_plus.
struct GaussianEpr {
  double dx_minus = 0.0;
  double dx_plus = 0.0;

  double dp_minus() const { return 1.0 / dx_minus; }
  double dp_plus() const { return 1.0 / dx_plus; }
  double position_density(double x1, double x2) const;
  double momentum_density(double p1, double p2) const;
  double conditional_center(double x1) const;
  double conditional_width() const;
};

GaussianEpr gaussian_epr_reference(double dx_minus, double dx_plus);

}  // namespace eprl
