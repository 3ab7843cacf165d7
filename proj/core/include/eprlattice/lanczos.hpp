#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace eprl {

/// y = A x for a real symmetric operator of the given dimension.
using SymmetricOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosOptions {
  int n_eigs = 10;
  int max_krylov = 3000;
  double tol = 1e-10;       // relative to the operator norm estimate
  std::uint32_t seed = 7;   // start-vector generator, fixed for reproducibility
};

struct LanczosResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
  int iterations = 0;
  double max_residual = 0.0;  // max ||A v - lambda v||
  double norm_estimate = 0.0;
  bool converged = false;
};

/// Lowest eigenpairs by Lanczos with full reorthogonalisation. On breakdown the
/// Krylov space is extended with a fresh random vector, so repeated eigenvalues
/// are found with their multiplicity. Throws NumericalError if not converged.
LanczosResult lanczos_lowest(int dim, const SymmetricOperator& apply, const LanczosOptions& options);

}  // namespace eprl
