#include "eprlattice/liddi.hpp"

#include <cmath>
#include <cstdlib>

#include "eprlattice/error.hpp"
#include "eprlattice/parameters.hpp"

namespace eprl {

double polarizability(double dipole, double omega_atom, double omega_laser) {
  const double denom = omega_atom * omega_atom - omega_laser * omega_laser;
  if (denom == 0.0 || !std::isfinite(denom))
    throw DomainError("polarizability: laser frequency on resonance");
  return 2.0 * omega_atom * dipole * dipole / (si::hbar * denom);
}

double coupling_strength(double alpha, double lambda_coupling, double intensity_coupling) {
  if (lambda_coupling <= 0.0) throw DomainError("coupling wavelength must be positive");
  const double k = 2.0 * kPi / lambda_coupling;
  return alpha * alpha * k * k * k * intensity_coupling /
         (4.0 * kPi * si::epsilon0 * si::epsilon0 * si::speed_of_light);
}

FTheta f_theta(double kR, double theta) {
  if (!(kR > 0.0) || !std::isfinite(kR)) throw DomainError("f_theta: kR must be positive");
  const double c = std::cos(theta);
  const double c2 = c * c;
  if (kR < 1e-4) {
    // Leading 1/(kR)^3 term; cos(kR cos theta) and cos kR are 1 to O(1e-8).
    return {(2.0 - 3.0 * c2) / (kR * kR * kR), false};
  }
  const double ckr = std::cos(kR);
  const double skr = std::sin(kR);
  const double radial = ckr / (kR * kR * kR) + skr / (kR * kR);
  const double value = std::cos(kR * c) * ((2.0 - 3.0 * c2) * radial + c2 * ckr / kR);
  return {value, true};
}

VddNearest vdd_nearest(double coupling, double lambda_coupling, double shift) {
  if (!(shift > 0.0)) throw DomainError("vdd_nearest: lattice shift must be positive");
  const double ratio = lambda_coupling / shift;
  return {-coupling / (4.0 * kPi * kPi * kPi) * ratio * ratio * ratio,
          shift <= lambda_coupling / 10.0};
}

LiddiField LiddiField::from(double lambda_coupling, double coupling) {
  if (!(lambda_coupling > 0.0)) throw DomainError("coupling wavelength must be positive");
  if (coupling < 0.0) throw DomainError("coupling strength must be non-negative");
  return {2.0 * kPi / lambda_coupling, coupling};
}

double LiddiField::potential(double R, double theta) const {
  return -coupling * f_theta(k * R, theta).value;
}

double VddMap::at(int j) const {
  const int range = static_cast<int>(offsets.size() / 2);
  if (std::abs(j) > range) throw DomainError("vdd_map: offset outside computed range");
  return energies[static_cast<std::size_t>(j + range)];
}

VddMap vdd_map(const LiddiField& field, double shift, double lattice_constant, int site_range) {
  if (site_range < 0) throw DomainError("vdd_map: negative site range");
  if (!(shift > 0.0) || !(lattice_constant > 0.0))
    throw DomainError("vdd_map: shift and lattice constant must be positive");
  VddMap map;
  double off_sum = 0.0;
  for (int j = -site_range; j <= site_range; ++j) {
    const double x = j * lattice_constant;
    const double R = std::hypot(shift, x);
    const double theta = std::acos(x / R);
    const double v = field.potential(R, theta);
    map.offsets.push_back(j);
    map.energies.push_back(v);
    if (j != 0) off_sum += std::abs(v);
  }
  const double centre = std::abs(map.at(0));
  map.truncation_ratio = centre > 0.0 ? off_sum / centre : 0.0;
  return map;
}

}  // namespace eprl
