#include "eprlattice/lanczos.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "eprlattice/error.hpp"

namespace eprl {

namespace {

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& q, int cols) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    if (cols == 0) return;
    const Eigen::VectorXd h = q.leftCols(cols).transpose() * w;
    w.noalias() -= q.leftCols(cols) * h;
  }
}

}  // namespace

LanczosResult lanczos_lowest(int dim, const SymmetricOperator& apply, const LanczosOptions& options) {
  if (dim <= 0) throw DomainError("lanczos: dimension must be positive");
  const int want = std::clamp(options.n_eigs, 1, dim);
  const int max_k = std::min(dim, std::max(options.max_krylov, want + 1));

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_vector = [&] {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uni(rng);
    return v;
  };

  Eigen::MatrixXd q(dim, max_k);
  Eigen::VectorXd alpha(max_k), beta(max_k);
  Eigen::VectorXd v = random_vector();
  v.normalize();
  q.col(0) = v;

  LanczosResult r;
  Eigen::VectorXd w(dim);
  double norm_est = 0.0;
  int k = 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  bool done = false;

  while (!done) {
    apply(q.col(k), w);
    alpha(k) = q.col(k).dot(w);
    orthogonalize(w, q, k + 1);
    double b = w.norm();
    norm_est = std::max(norm_est, std::abs(alpha(k)) + b + (k > 0 ? beta(k - 1) : 0.0));
    ++k;

    const bool last = k == max_k;
    const bool check = k >= want && (k % 10 == 0 || last || b < 1e-12 * norm_est);
    if (check) {
      es.computeFromTridiagonal(alpha.head(k), beta.head(k - 1), Eigen::ComputeEigenvectors);
      double worst = 0.0;
      for (int i = 0; i < want; ++i) worst = std::max(worst, std::abs(b * es.eigenvectors()(k - 1, i)));
      if (worst <= options.tol * norm_est || k == dim) done = true;
      else if (last) {
        r.iterations = k;
        throw NumericalError("lanczos: " + std::to_string(want) + " eigenpairs not converged after " +
                                 std::to_string(k) + " iterations",
                             worst);
      }
    }
    if (done) break;

    if (b < 1e-12 * std::max(norm_est, 1.0)) {
      // Invariant subspace: continue in its orthogonal complement.
      w = random_vector();
      orthogonalize(w, q, k);
      b = w.norm();
      beta(k - 1) = 0.0;
    } else {
      beta(k - 1) = b;
    }
    q.col(k) = w / b;
  }

  r.iterations = k;
  r.norm_estimate = norm_est;
  r.values = es.eigenvalues().head(want);
  r.vectors = q.leftCols(k) * es.eigenvectors().leftCols(want);
  Eigen::VectorXd hv(dim);
  for (int i = 0; i < want; ++i) {
    r.vectors.col(i).normalize();
    apply(r.vectors.col(i), hv);
    r.max_residual = std::max(r.max_residual, (hv - r.values(i) * r.vectors.col(i)).norm());
  }
  r.converged = true;
  return r;
}

}  // namespace eprl
