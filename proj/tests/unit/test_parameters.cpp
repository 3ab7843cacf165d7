#include <doctest.h>

#include <cmath>

#include "eprlattice/error.hpp"
#include "eprlattice/liddi.hpp"
#include "eprlattice/parameters.hpp"

using namespace eprl;

TEST_CASE("recoil energy of lithium at 323 nm") {
  const double e = recoil_energy(1.1624e-26, 323e-9);
  CHECK(e == doctest::Approx(1.81e-28).epsilon(0.005));
  // published 1.85e-28 J; the mass is not stated, the gap stays below 3%
  CHECK(std::abs(e - 1.85e-28) / 1.85e-28 < 0.03);
}

TEST_CASE("recoil energy scales as 1/(m lambda^2)") {
  const double e = recoil_energy(1e-26, 300e-9);
  CHECK(recoil_energy(2e-26, 300e-9) == doctest::Approx(e / 2.0).epsilon(1e-14));
  CHECK(recoil_energy(1e-26, 600e-9) == doctest::Approx(e / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(recoil_energy(0.0, 300e-9), DomainError);
  CHECK_THROWS_AS(recoil_energy(1e-26, -1.0), DomainError);
}

TEST_CASE("lattice depth from the lattice laser") {
  const double u = lattice_depth(1860.0, 1.26e-30, 6.0e7);
  CHECK(u == doctest::Approx(7.0e-28).epsilon(0.02));
  CHECK(u / recoil_energy(1.1624e-26, 323e-9) == doctest::Approx(3.93).epsilon(0.05));
  CHECK(lattice_depth(0.0, 1.26e-30, 6.0e7) == 0.0);
  CHECK(lattice_depth(3720.0, 1.26e-30, 6.0e7) == doctest::Approx(2.0 * u).epsilon(1e-14));
  CHECK_THROWS_AS(lattice_depth(1860.0, 1.26e-30, 0.0), DomainError);
}

TEST_CASE("lithium reference set maps to the published model") {
  const ModelParams m = to_model(PhysicalParams::lithium_reference(), 25, Boundary::periodic);
  CHECK(m.lattice_depth == doctest::Approx(3.93).epsilon(0.05));
  CHECK(m.hop == doctest::Approx(-0.09).epsilon(0.10));
  CHECK(m.vdd == doctest::Approx(-0.5).epsilon(0.15));
  CHECK(m.hop < 0.0);
  CHECK(m.vdd < 0.0);
  CHECK(m.hop_valid);
  CHECK(m.vdd_valid);
  CHECK(m.lattice_constant == doctest::Approx(161.5e-9));
}

TEST_CASE("no lattice light gives an out-of-validity free-particle hopping") {
  PhysicalParams p = PhysicalParams::lithium_reference();
  p.intensity_lattice = 0.0;
  const ModelParams m = to_model(p, 25, Boundary::periodic);
  CHECK(m.lattice_depth == 0.0);
  CHECK_FALSE(m.hop_valid);
  CHECK(std::abs(m.hop) > 0.2);
}

TEST_CASE("doubling the lattice shift divides V_dd by eight") {
  PhysicalParams p = PhysicalParams::lithium_reference();
  const double v40 = to_model(p, 25, Boundary::periodic).vdd;
  p.lattice_shift = 80e-9;
  const double v80 = to_model(p, 25, Boundary::periodic).vdd;
  // Oracle: the nearest-site formula evaluated directly at both shifts.
  const double ratio = std::pow(80.0 / 40.0, 3);
  CHECK(v40 / v80 == doctest::Approx(ratio).epsilon(1e-12));
}

TEST_CASE("unit conversions round-trip") {
  const ModelParams m = to_model(PhysicalParams::lithium_reference(), 25, Boundary::open);
  for (double e : {-0.47, 1e-3, 3.93, 250.0}) {
    CHECK(m.joule_to_energy(m.energy_to_joule(e)) == doctest::Approx(e).epsilon(1e-12));
    CHECK(m.kelvin_to_energy(m.energy_to_kelvin(e)) == doctest::Approx(e).epsilon(1e-12));
    CHECK(m.seconds_to_time(m.time_to_seconds(e)) == doctest::Approx(e).epsilon(1e-12));
  }
  // bare mass in model units is the atomic mass
  CHECK(m.mass_to_kg(kBareMass) == doctest::Approx(PhysicalParams::lithium_reference().atom_mass).epsilon(1e-12));
}

TEST_CASE("to_model is deterministic") {
  const PhysicalParams p = PhysicalParams::lithium_reference();
  const ModelParams a = to_model(p, 25, Boundary::periodic);
  const ModelParams b = to_model(p, 25, Boundary::periodic);
  CHECK(a == b);
}

TEST_CASE("parameter validation") {
  PhysicalParams p = PhysicalParams::lithium_reference();
  p.detuning_lattice = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = PhysicalParams::lithium_reference();
  p.lattice_shift = 200e-9;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = PhysicalParams::lithium_reference();
  p.atom_mass = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(to_model(PhysicalParams::lithium_reference(), 2, Boundary::open), DomainError);
  CHECK(boundary_from_string("open") == Boundary::open);
  CHECK(to_string(Boundary::periodic) == "periodic");
  CHECK_THROWS_AS(boundary_from_string("twisted"), DomainError);
}
