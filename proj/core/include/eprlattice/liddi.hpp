#pragma once

#include <vector>

namespace eprl {

// Laser-induced dipole-dipole interaction between two atoms with equal
// polarizabilities. Laser propagates along x, polarised along y. Everything in
// this header is SI.

/// alpha = 2 omega_A |mu|^2 / (hbar (omega_A^2 - omega^2)), in C m^2 / V.
double polarizability(double dipole, double omega_atom, double omega_laser);

/// V_C = alpha^2 k^3 I_C / (4 pi eps0^2 c), in J.
double coupling_strength(double alpha, double lambda_coupling, double intensity_coupling);

struct FTheta {
  double value = 0.0;
  bool valid = true;  // false when kR < 1e-4 and the 1/(kR)^3 asymptote is returned
};

/// Angular/radial factor of the interaction; V_dd = -V_C F_theta(kR).
FTheta f_theta(double kR, double theta);

struct VddNearest {
  double value = 0.0;  // J
  bool valid = true;   // l <= lambda_C / 10
};

/// -(V_C / 4 pi^3) (lambda_C / l)^3
VddNearest vdd_nearest(double coupling, double lambda_coupling, double shift);

struct LiddiField {
  double k = 0.0;         // 2 pi / lambda_C
  double coupling = 0.0;  // V_C, J

  static LiddiField from(double lambda_coupling, double coupling);
  /// Full interaction at separation R and angle theta to the laser axis.
  double potential(double R, double theta) const;
};

struct VddMap {
  std::vector<int> offsets;      // j = -range .. range
  std::vector<double> energies;  // J, one per offset
  double truncation_ratio = 0.0; // sum_{j != 0} |V(j)| / |V(0)|

  double at(int j) const;
};

/// Atom 1 at site 0, atom 2 at site j of the displaced lattice:
/// R = sqrt(l^2 + (j a)^2), cos theta = j a / R.
VddMap vdd_map(const LiddiField& field, double shift, double lattice_constant, int site_range);

}  // namespace eprl
