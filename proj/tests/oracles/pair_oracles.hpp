#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace oracle {

/// Explicit N^2 x N^2 two-atom matrix: (H1 (x) 1) + (1 (x) H1) + vdd on j == l.
Eigen::MatrixXd kron_pair_hamiltonian(const Eigen::MatrixXd& single, double vdd);

/// Open or periodic tight-binding chain with on-site energies.
Eigen::MatrixXd chain(int n, double hop, bool periodic, const std::vector<double>& onsite = {});

/// Lowest eigenvalue of the relative-coordinate Hamiltonian at total quasimomentum K
/// on an N-site ring (on-site interaction vdd at r = 0).
double pair_energy_at_K(int n, double hop, double vdd, double K);

}  // namespace oracle
