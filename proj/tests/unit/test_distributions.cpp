#include <doctest.h>

#include <cmath>
#include <random>

#include "eprlattice/distributions.hpp"
#include "eprlattice/error.hpp"

using namespace eprl;

namespace {

const WannierBasis& wannier_393() {
  static const WannierBasis w = wannier(bloch_spectrum(3.93));
  return w;
}

TwoAtomState single_site(int n, int j, int l) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  c(j, l) = 1.0;
  return TwoAtomState(c);
}

TwoAtomState uniform_diagonal(int n) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) c(j, j) = 1.0 / std::sqrt(static_cast<double>(n));
  return TwoAtomState(c);
}

JointOptions coarse() {
  JointOptions o;
  o.points_per_cell = 32;
  return o;
}

}  // namespace

TEST_CASE("single-site product state") {
  const WannierBasis& w = wannier_393();
  const JointDistribution p = position_joint(MixedState::pure(single_site(5, 2, 2), Boundary::open), w, coarse());
  CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(p.density.minCoeff() >= 0.0);
  const Profile c = conditional(p, 2.0, 1);
  CHECK(c.peaks(0.5).size() == 1);
  CHECK(c.mean() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(marginal(p, 2).gaussian_sigma(2.0) == doctest::Approx(gaussian_sigma(3.93)).epsilon(0.10));
  // slices at the neighbouring site centres carry chi(j - 2)^2 of the mass
  // and sit (j - 2) away from atom 2
  double mass = 0.0, var = 0.0;
  for (int j = 0; j < 5; ++j) {
    const double c = w.value(j - 2.0);
    mass += c * c;
    var += c * c * (w.width() * w.width() + (j - 2.0) * (j - 2.0));
  }
  CHECK(conditional_dx_minus(p) == doctest::Approx(std::sqrt(var / mass)).epsilon(1e-4));
}

TEST_CASE("uniform diagonal state has a chain of peaks along x2 = x1") {
  const int n = 9;
  const JointDistribution p =
      position_joint(MixedState::pure(uniform_diagonal(n), Boundary::periodic), wannier_393(), coarse());
  CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-8));
  const std::vector<double> peaks = line_profile(p, +1).peaks(0.5);
  REQUIRE(peaks.size() == static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i] - peaks[i - 1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(correlation(p) > 0.9);
}

TEST_CASE("momentum ridges of the uniform diagonal state") {
  const int n = 15;
  const JointDistribution m = momentum_joint(MixedState::pure(uniform_diagonal(n), Boundary::periodic), wannier_393());
  CHECK(m.total() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(m.density.minCoeff() >= 0.0);
  const Profile sum = sum_marginal(m);
  CHECK(sum.hwhm(0.0) == doctest::Approx(kPi / n).epsilon(0.20));
  const std::vector<double> ridges = sum.peaks(0.2);
  REQUIRE(ridges.size() >= 3);
  for (std::size_t i = 1; i < ridges.size(); ++i) CHECK(ridges[i] - ridges[i - 1] == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(correlation(m, kPi) < -0.85);
  // envelope: single-atom momentum spread about 1 / (2 sigma)
  CHECK(marginal(m, 1).rms(0.0) == doctest::Approx(1.0 / (2.0 * wannier_393().width())).epsilon(0.15));
}

TEST_CASE("momentum marginals are Fourier transforms of the reduced amplitudes") {
  const int n = 7;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd a(n), b(n);
  for (int j = 0; j < n; ++j) {
    a(j) = {u(rng), u(rng)};
    b(j) = {u(rng), u(rng)};
  }
  a.normalize();
  b.normalize();
  const TwoAtomState s(a * b.transpose());
  const WannierBasis& w = wannier_393();
  const JointDistribution m = momentum_joint(MixedState::pure(s, Boundary::open), w);
  const Profile m1 = marginal(m, 1);

  // phi_1(x) = sum_j a_j chi(x - j) on a fine grid, transformed by quadrature
  const double h = 1.0 / 64;
  for (int i = 0; i < m1.axis.count; i += 37) {
    const double p = m1.axis.at(i);
    std::complex<double> ft = 0.0;
    for (double x = -8.0; x <= n + 8.0; x += h) {
      std::complex<double> phi = 0.0;
      for (int j = 0; j < n; ++j) phi += a(j) * w.value(x - j);
      ft += phi * std::polar(1.0, -p * x) * h;
    }
    CHECK(std::abs(std::norm(ft) / (2 * kPi) - m1.density[static_cast<std::size_t>(i)]) < 1e-6);
  }
}

TEST_CASE("conditional distributions") {
  const int n = 7;
  const SpectrumResult s = diagonalize(TwoAtomHamiltonian(n, -0.0355, -0.1, Boundary::open, ExternalPotential::none()));
  const JointDistribution p = position_joint(MixedState::pure(diatom_ground_state(s), Boundary::open), wannier_393(), coarse());
  const Profile c1 = conditional(p, 3.0, 1);
  const Profile c2 = conditional(p, 3.0, 2);
  REQUIRE(c1.axis.count == c2.axis.count);
  for (int i = 0; i < c1.axis.count; ++i)
    CHECK(c1.density[static_cast<std::size_t>(i)] == doctest::Approx(c2.density[static_cast<std::size_t>(i)]).epsilon(1e-9));
  CHECK(c1.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c1.peaks(0.5).size() == 1);
  const Profile binned = conditional_binned(p, 3.0, 0.5, 1);
  CHECK(binned.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binned.rms(3.0) >= c1.rms(3.0) * 0.99);
  CHECK_THROWS_AS(conditional(p, 100.0, 1), DomainError);
  CHECK_THROWS_AS(conditional(p, 3.0, 3), DomainError);

  JointOptions bad;
  bad.points_per_cell = 8;
  CHECK_THROWS_AS(position_joint(MixedState::pure(diatom_ground_state(s), Boundary::open), wannier_393(), bad), DomainError);
}

TEST_CASE("widths are stable under grid refinement") {
  const int n = 9;
  const SpectrumResult s = diagonalize(TwoAtomHamiltonian(n, -0.0355, -0.3, Boundary::periodic, ExternalPotential::none()));
  const MixedState g = MixedState::pure(diatom_ground_state(s), Boundary::periodic);
  JointOptions lo = coarse();
  JointOptions hi = coarse();
  hi.points_per_cell = 64;
  hi.momentum_points_per_zone = 16 * n;
  const EprMetrics a = epr_metrics(position_joint(g, wannier_393(), lo), momentum_joint(g, wannier_393(), lo));
  const EprMetrics b = epr_metrics(position_joint(g, wannier_393(), hi), momentum_joint(g, wannier_393(), hi));
  CHECK(std::abs(a.dx_minus - b.dx_minus) / b.dx_minus < 0.02);
  CHECK(std::abs(a.dp_plus - b.dp_plus) / b.dp_plus < 0.02);
  CHECK(b.s == doctest::Approx(1.0 / (2.0 * b.dx_minus * b.dp_plus)).epsilon(1e-14));
}

TEST_CASE("thermal broadening of the momentum ridge") {
  const int n = 25;
  const SpectrumResult s = diagonalize(TwoAtomHamiltonian(n, -0.0879, -0.4703, Boundary::periodic, ExternalPotential::none()));
  const double kelvin = 1.380649e-23 / 1.80609e-28;
  auto dp = [&](double t) {
    const MixedState m = MixedState::thermal(s, thermal_state(s, t * kelvin, ThermalSubset::diatom_band), Boundary::periodic);
    return sum_marginal(momentum_joint(m, wannier_393())).hwhm(0.0);
  };
  CHECK(dp(100e-9) > 1.2 * dp(10e-9));
}

TEST_CASE("thermal sum-momentum width") {
  CHECK(thermal_dp_plus(6.0, 0.0) == doctest::Approx(1.0 / (std::sqrt(2.0) * 6.0)).epsilon(1e-14));
  CHECK(thermal_dp_plus(6.0, 1e-9) == doctest::Approx(1.0 / (std::sqrt(2.0) * 6.0)).epsilon(1e-12));
  CHECK(thermal_dp_plus(6.0, 1.0) > thermal_dp_plus(6.0, 0.01));
  CHECK_THROWS_AS(thermal_dp_plus(0.0, 0.1), DomainError);

  // SI and natural-unit forms agree
  const double mass = 1.16503e-26, a = 161.5e-9;
  const double erec = 2 * kPi * kPi * 1.054571817e-34 * 1.054571817e-34 / (mass * 4 * a * a);
  const double kT = 1.380649e-23 * 50e-9 / erec;
  const double p_si = thermal_dp_plus_si(6.0 * a, 50e-9, mass);
  CHECK(p_si * a / 1.054571817e-34 == doctest::Approx(thermal_dp_plus(6.0, kT)).epsilon(1e-10));
}

TEST_CASE("Gaussian EPR reference state") {
  const GaussianEpr g = gaussian_epr_reference(0.2, 5.0);
  double total = 0.0, ptotal = 0.0;
  const double h = 0.02;
  for (double x1 = -25; x1 <= 25; x1 += h)
    for (double x2 = x1 - 2.0; x2 <= x1 + 2.0; x2 += h) total += g.position_density(x1, x2) * h * h;
  for (double p1 = -25; p1 <= 25; p1 += h)
    for (double p2 = -p1 - 2.0; p2 <= -p1 + 2.0; p2 += h) ptotal += g.momentum_density(p1, p2) * h * h;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(ptotal == doctest::Approx(1.0).epsilon(1e-4));

  // conditional centre and width from the density itself
  const double x1 = 1.7;
  double w = 0, m = 0, v = 0;
  for (double x2 = -5; x2 <= 8; x2 += 1e-3) {
    const double d = g.position_density(x1, x2);
    w += d;
    m += d * x2;
    v += d * x2 * x2;
  }
  m /= w;
  CHECK(g.conditional_center(x1) == doctest::Approx(m).epsilon(1e-8));
  CHECK(g.conditional_width() == doctest::Approx(std::sqrt(v / w - m * m)).epsilon(1e-6));

  const GaussianEpr sharp = gaussian_epr_reference(1e-4, 10.0);
  CHECK(sharp.conditional_center(2.0) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(sharp.conditional_width() == doctest::Approx(1e-4).epsilon(1e-7));
  const GaussianEpr product = gaussian_epr_reference(1.0, 1.0);
  CHECK(product.conditional_center(2.0) == 0.0);
  CHECK_THROWS_AS(gaussian_epr_reference(0.0, 1.0), DomainError);
}
