#include "pair_oracles.hpp"

#include <cmath>

namespace oracle {

Eigen::MatrixXd kron_pair_hamiltonian(const Eigen::MatrixXd& single, double vdd) {
  const int n = static_cast<int>(single.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      h.block(a * n, b * n, n, n) += single(a, b) * id;
      h.block(a * n, b * n, n, n) += id(a, b) * single;
    }
  for (int j = 0; j < n; ++j) h(j * n + j, j * n + j) += vdd;
  return h;
}

Eigen::MatrixXd chain(int n, double hop, bool periodic, const std::vector<double>& onsite) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) h(j, j + 1) = h(j + 1, j) = hop;
  if (periodic) h(0, n - 1) = h(n - 1, 0) = hop;
  for (int j = 0; j < static_cast<int>(onsite.size()) && j < n; ++j) h(j, j) = onsite[j];
  return h;
}

double pair_energy_at_K(int n, double hop, double vdd, double K) {
  // psi(j, l) = e^{iK(j+l)/2} f(l - j); hopping of either atom shifts r by +-1
  // with amplitude hop (e^{iK/2} + e^{-iK/2}) on a ring of relative coordinates.
  // Periodicity of f under r -> r + N picks up e^{iKN/2}.
  using cd = std::complex<double>;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const cd t = hop * 2.0 * std::cos(K / 2.0);
  const cd twist = std::polar(1.0, K * n / 2.0);
  for (int r = 0; r < n; ++r) {
    const int up = (r + 1) % n;
    cd amp = t;
    if (r + 1 == n) amp *= twist;
    h(up, r) += amp;
    h(r, up) += std::conj(amp);
  }
  h(0, 0) += vdd;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace oracle
