#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "eprlattice/error.hpp"
#include "eprlattice/lanczos.hpp"
#include "eprlattice/two_atom.hpp"
#include "pair_oracles.hpp"

using namespace eprl;

namespace {

Eigen::VectorXd sorted_pair_sums(const Eigen::VectorXd& s) {
  std::vector<double> v;
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) v.push_back(s(a) + s(b));
  std::sort(v.begin(), v.end());
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SpectrumResult periodic_spectrum(int n, double hop, double vdd) {
  return diagonalize(TwoAtomHamiltonian(n, hop, vdd, Boundary::periodic, ExternalPotential::none()));
}

}  // namespace

TEST_CASE("three-site non-interacting spectrum is a tensor sum") {
  const TwoAtomHamiltonian h(3, -1.0, 0.0, Boundary::open, ExternalPotential::none());
  const SpectrumResult s = diagonalize(h);
  Eigen::VectorXd single(3);
  single << -std::sqrt(2.0), 0.0, std::sqrt(2.0);
  CHECK((s.eigenvalues - sorted_pair_sums(single)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.diatom_band.count == 0);
}

TEST_CASE("matrix is exactly symmetric and obeys the trace sum rule") {
  for (Boundary b : {Boundary::open, Boundary::periodic}) {
    const TwoAtomHamiltonian h(7, -0.09, -0.47, b, ExternalPotential::linear(0.04, 3.0));
    const Eigen::MatrixXd m = h.dense();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const SpectrumResult s = diagonalize(h);
    CHECK(s.eigenvalues.sum() == doctest::Approx(m.trace()).epsilon(1e-8));
    CHECK(s.max_residual <= 1e-8 * s.norm_bound);
  }
}

TEST_CASE("non-interacting spectrum factorises") {
  for (Boundary b : {Boundary::open, Boundary::periodic}) {
    const TwoAtomHamiltonian h(6, -0.07, 0.0, b, ExternalPotential::harmonic(2.0, 2.5));
    const SpectrumResult s = diagonalize(h);
    CHECK((s.eigenvalues - sorted_pair_sums(h.single_atom_spectrum())).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("four-site spectrum equals the explicitly enumerated matrix") {
  for (Boundary b : {Boundary::open, Boundary::periodic}) {
    const std::vector<double> onsite{0.0, 0.04, 0.08, 0.12};
    const Eigen::MatrixXd single = oracle::chain(4, -0.09, b == Boundary::periodic, onsite);
    const Eigen::MatrixXd brute = oracle::kron_pair_hamiltonian(single, -0.47);
    const TwoAtomHamiltonian h(4, -0.09, -0.47, b, ExternalPotential::linear(0.04));
    CHECK((h.dense() - brute).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(brute, Eigen::EigenvaluesOnly);
    CHECK((diagonalize(h).eigenvalues - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exchange symmetry of the spectrum and eigenvectors") {
  const TwoAtomHamiltonian h(6, -0.09, -0.3, Boundary::open, ExternalPotential::harmonic(3.0, 2.5));
  const SpectrumResult s = diagonalize(h);
  for (int n = 0; n < s.size(); ++n) {
    const bool degenerate = (n > 0 && std::abs(s.eigenvalues(n) - s.eigenvalues(n - 1)) < 1e-9) ||
                            (n + 1 < s.size() && std::abs(s.eigenvalues(n + 1) - s.eigenvalues(n)) < 1e-9);
    if (degenerate) continue;
    const TwoAtomState v = s.state(n);
    const std::complex<double> parity = (v.amplitudes.conjugate().cwiseProduct(v.swapped().amplitudes)).sum();
    CHECK(std::abs(std::abs(parity.real()) - 1.0) < 1e-8);
  }
}

TEST_CASE("lithium model binds a pair below -|V_dd|") {
  const SpectrumResult s = periodic_spectrum(25, -0.0879, -0.4703);
  CHECK(s.eigenvalues(0) < -0.4703);
  CHECK(s.diatom_band.count == 25);
}

TEST_CASE("split-off band separates further as |V_dd| grows") {
  double previous = -1.0;
  for (double v : {0.25, 0.5, 1.0, 1.5, 2.0, 2.5}) {
    const SpectrumResult s = periodic_spectrum(15, -0.0355, v);
    REQUIRE(s.diatom_band.count == 15);
    const double gap = s.diatom_band.lower - s.pair_max;
    CHECK(gap > previous);
    previous = gap;
  }
  CHECK(periodic_spectrum(15, -0.0355, 0.0).diatom_band.count == 0);
}

TEST_CASE("diatom bandwidth grows as V_hop squared") {
  std::vector<double> lx, ly;
  for (double t : {0.02, 0.04, 0.06, 0.08, 0.10}) {
    const SpectrumResult s = periodic_spectrum(15, -t, 2.16);
    lx.push_back(std::log(t));
    ly.push_back(std::log(s.diatom_band.width()));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("diatom ground state concentrates on the diagonal") {
  CHECK(diagonal_weight(diatom_ground_state(periodic_spectrum(9, 0.0, -1.0))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diagonal_weight(diatom_ground_state(periodic_spectrum(25, -0.0355, -1.0))) >= 0.99);
  CHECK(diagonal_weight(diatom_ground_state(periodic_spectrum(25, -0.0355, -0.10))) < 0.9);

  for (double ratio : {0.02, 0.05, 0.1}) {
    const int n = 21;
    const TwoAtomState g = diatom_ground_state(periodic_spectrum(n, -ratio, -1.0));
    std::complex<double> overlap = 0.0;
    for (int j = 0; j < n; ++j) overlap += g.amplitudes(j, j) / std::sqrt(static_cast<double>(n));
    CHECK(std::norm(overlap) >= 1.0 - 4.0 * ratio * ratio * 3.0);
  }
}

TEST_CASE("second-order diatom hopping and mass") {
  CHECK(diatom_hopping(-0.09, -0.5) == doctest::Approx(-0.0324).epsilon(1e-12));
  CHECK(diatom_hopping(0.0, -0.5) == 0.0);
  CHECK_THROWS_AS(diatom_hopping(-0.09, 0.0), DomainError);

  const double m1 = 1.0 / (2.0 * 0.09);
  CHECK(diatom_effective_mass(-0.09, -0.5) / m1 == doctest::Approx(0.09 / 0.0324).epsilon(1e-12));
  CHECK(diatom_effective_mass(-0.09, -1.0) == doctest::Approx(2 * diatom_effective_mass(-0.09, -0.5)).epsilon(1e-14));
}

TEST_CASE("diatom band width at the lithium point") {
  const SpectrumResult s = periodic_spectrum(25, -0.0879, -0.4703);
  const double predicted = 4.0 * std::abs(diatom_hopping(-0.0879, -0.4703));
  CHECK(std::abs(s.diatom_band.width() - predicted) / predicted < 0.20);
}

TEST_CASE("diatom dispersion matches the relative-coordinate oracle") {
  const int n = 12;
  const SpectrumResult s = periodic_spectrum(n, -0.0879, -0.4703);
  const DiatomDispersion d = diatom_dispersion(s);
  REQUIRE(d.K.size() == static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < d.K.size(); ++i)
    CHECK(d.energy[i] == doctest::Approx(oracle::pair_energy_at_K(n, -0.0879, -0.4703, d.K[i])).epsilon(1e-8));

}

// Band-bottom curvature mass of the bound pair from the relative-coordinate
// oracle on a long ring.
static double pair_curvature_mass(double hop, double vdd) {
  const int big = 400;
  const double dK = 1e-2;
  const double e0 = oracle::pair_energy_at_K(big, hop, vdd, 0.0);
  const double e1 = oracle::pair_energy_at_K(big, hop, vdd, dK);
  return dK * dK / (2.0 * (e1 - e0));
}

TEST_CASE("diatom mass against the band-bottom curvature") {
  // exact bound-state curvature: sqrt(V^2 + 16 J^2) / (4 J^2)
  for (auto [hop, vdd] : {std::pair{-0.0879, -0.4703}, std::pair{-0.0355, -1.0}}) {
    const double exact = std::sqrt(vdd * vdd + 16 * hop * hop) / (4 * hop * hop);
    CHECK(pair_curvature_mass(hop, vdd) == doctest::Approx(exact).epsilon(1e-3));
  }
  const double m = diatom_effective_mass(-0.0355, -1.0);
  CHECK(std::abs(pair_curvature_mass(-0.0355, -1.0) - m) / m < 0.20);
}

// With |V_hop / V_dd| = 0.19 the fourth-order correction is 25%.
TEST_CASE("diatom mass against the curvature at the lithium point" * doctest::should_fail()) {
  const double m = diatom_effective_mass(-0.0879, -0.4703);
  CHECK(std::abs(pair_curvature_mass(-0.0879, -0.4703) - m) / m < 0.20);
}

TEST_CASE("Boltzmann weights") {
  const SpectrumResult s = periodic_spectrum(9, -0.0879, -0.4703);
  const ThermalWeights cold = thermal_state(s, 0.0, ThermalSubset::full);
  CHECK(cold.weights[0] == doctest::Approx(1.0));
  const double width = s.diatom_band.width();
  const ThermalWeights w = thermal_state(s, width, ThermalSubset::diatom_band);
  CHECK(w.indices.size() == 9);
  CHECK(w.weights.back() / w.weights.front() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  double total = 0.0;
  for (double x : w.weights) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(thermal_state(s, -1.0), DomainError);
  CHECK_THROWS_AS(thermal_state(periodic_spectrum(5, -0.1, 0.0), 0.1, ThermalSubset::diatom_band), DomainError);
}

TEST_CASE("memory budget and the iterative path") {
  TwoAtomOptions small;
  small.memory_budget_mb = 50.0;
  CHECK_THROWS_AS(TwoAtomHamiltonian(60, -0.09, -0.47, Boundary::periodic, ExternalPotential::none(), small),
                  DomainError);

  TwoAtomOptions it;
  it.sparse = true;
  it.dense_limit = 5;
  it.lanczos_eigs = 20;
  const TwoAtomHamiltonian h(8, -0.09, -0.47, Boundary::periodic, ExternalPotential::none(), it);
  CHECK_FALSE(h.has_dense());
  const SpectrumResult s = diagonalize(h);
  CHECK_FALSE(s.complete);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(), Eigen::EigenvaluesOnly);
  CHECK((s.eigenvalues - es.eigenvalues().head(20)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(s.max_residual <= 1e-8 * s.norm_bound);
  CHECK(s.diatom_band.count == 8);
}

TEST_CASE("Lanczos on a diagonal operator with repeated values") {
  const int d = 50;
  Eigen::VectorXd diag(d);
  for (int i = 0; i < d; ++i) diag(i) = std::floor(i / 2.0);
  LanczosOptions o;
  o.n_eigs = 6;
  const LanczosResult r = lanczos_lowest(d, [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = diag.cwiseProduct(x); }, o);
  Eigen::VectorXd expect(6);
  expect << 0, 0, 1, 1, 2, 2;
  CHECK((r.values - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("two-atom state layout") {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 3);
  c(0, 2) = 1.0;
  const TwoAtomState s(c);
  CHECK(s.flat()(2) == std::complex<double>(1.0, 0.0));
  CHECK(TwoAtomState::from_flat(s.flat(), 3).amplitudes == c);
  CHECK(s.swapped().amplitudes(2, 0) == std::complex<double>(1.0, 0.0));
  CHECK(band_weight(s, 1) == 0.0);
  CHECK(band_weight(s, 1, true) == 1.0);
}
