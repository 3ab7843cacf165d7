#include <doctest.h>

#include <cmath>

#include "eprlattice/error.hpp"
#include "eprlattice/liddi.hpp"
#include "eprlattice/parameters.hpp"

using namespace eprl;

namespace {

const double kLambdaC = 670.8e-9;
const double kOmegaA = 2 * kPi * si::speed_of_light / kLambdaC;
const double kOmega = kOmegaA - 100 * 3.7e7;

double coupling_reference() {
  const double alpha = polarizability(2.7e-29, kOmegaA, kOmega);
  return coupling_strength(alpha, kLambdaC, 230.0);
}

}  // namespace

TEST_CASE("dynamic polarizability") {
  const double a = polarizability(2.7e-29, kOmegaA, kOmega);
  const double direct = 2 * kOmegaA * 2.7e-29 * 2.7e-29 / (si::hbar * (kOmegaA * kOmegaA - kOmega * kOmega));
  CHECK(a == doctest::Approx(direct).epsilon(1e-12));
  CHECK(a == doctest::Approx(1.9e-33).epsilon(0.03));
  CHECK(polarizability(2.7e-29, kOmegaA, 0.0) ==
        doctest::Approx(2 * 2.7e-29 * 2.7e-29 / (si::hbar * kOmegaA)).epsilon(1e-14));
  CHECK(polarizability(2.7e-29, kOmegaA, 1.01 * kOmegaA) < 0.0);
  CHECK_THROWS_AS(polarizability(2.7e-29, kOmegaA, kOmegaA), DomainError);
}

TEST_CASE("angular factor") {
  const FTheta small = f_theta(1e-3, kPi / 2);
  CHECK(small.valid);
  CHECK(small.value * 1e-9 / 2.0 == doctest::Approx(1.0).epsilon(1e-5));
  const FTheta tiny = f_theta(1e-5, kPi / 2);
  CHECK_FALSE(tiny.valid);
  CHECK(tiny.value == doctest::Approx(2e15).epsilon(1e-12));

  CHECK(f_theta(kPi, kPi / 2).value == doctest::Approx(-2.0 / (kPi * kPi * kPi)).epsilon(1e-12));
  CHECK(f_theta(kPi, kPi / 2).value == doctest::Approx(-0.0645).epsilon(0.001));
  // cos(pi) * [-(cos pi / pi^3 + sin pi / pi^2) + cos pi / pi]
  const double direct = -1.0 * (-(-1.0 / (kPi * kPi * kPi)) + -1.0 / kPi);
  CHECK(f_theta(kPi, 0.0).value == doctest::Approx(direct).epsilon(1e-12));
  CHECK(std::abs(f_theta(kPi, 0.0).value) == doctest::Approx(0.286).epsilon(0.002));
  CHECK_THROWS_AS(f_theta(0.0, 0.0), DomainError);
}

TEST_CASE("angular factor is finite on the scan grid") {
  for (double kr = 0.1; kr <= 50.0; kr += 0.05)
    for (double th = 0.0; th <= kPi; th += kPi / 60) {
      const FTheta f = f_theta(kr, th);
      CHECK(std::isfinite(f.value));
      CHECK(std::abs(f.value) <= 2.0 / (kr * kr * kr) + 2.0 / (kr * kr) + 1.0 / kr + 1e-12);
    }
}

TEST_CASE("nearest-site interaction for the lithium geometry") {
  const double erec = recoil_energy(7.0160034 * si::atomic_mass_unit, 323e-9);
  const VddNearest v = vdd_nearest(coupling_reference(), kLambdaC, 40e-9);
  CHECK(v.valid);
  CHECK(v.value / erec == doctest::Approx(-0.5).epsilon(0.15));
  CHECK(vdd_nearest(1.0, kLambdaC, 80e-9).value * 8.0 ==
        doctest::Approx(vdd_nearest(1.0, kLambdaC, 40e-9).value).epsilon(1e-14));
  CHECK_FALSE(vdd_nearest(1.0, kLambdaC, kLambdaC / 5).valid);
  CHECK_THROWS_AS(vdd_nearest(1.0, kLambdaC, 0.0), DomainError);
}

TEST_CASE("nearest-site formula is the small-kl limit of the full potential") {
  const double vc = coupling_reference();
  const double k = 2 * kPi / kLambdaC;
  for (double kl : {0.01, 0.05, 0.1}) {
    const double l = kl / k;
    const double full = -vc * f_theta(kl, kPi / 2).value;
    CHECK(std::abs(vdd_nearest(vc, kLambdaC, l).value - full) / std::abs(full) < 0.01);
  }
}

TEST_CASE("interaction map over neighbouring sites") {
  const LiddiField f = LiddiField::from(kLambdaC, coupling_reference());
  const VddMap m = vdd_map(f, 40e-9, 161.5e-9, 40);
  CHECK(std::abs(m.at(0)) / std::abs(m.at(1)) > 10.0);
  for (int j = 1; j <= 40; ++j) CHECK(m.at(j) == doctest::Approx(m.at(-j)).epsilon(1e-12));
  CHECK(m.truncation_ratio < 0.10);
  CHECK(m.at(0) < 0.0);
  CHECK(m.at(0) == doctest::Approx(f.potential(40e-9, kPi / 2)).epsilon(1e-14));

  const VddMap far = vdd_map(f, 200e-9, 161.5e-9, 5);
  CHECK(m.at(0) / far.at(0) > 50.0);
  CHECK_THROWS_AS(m.at(41), DomainError);
}
