#include "eprlattice/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "eprlattice/error.hpp"

namespace eprl {

InitialState initial_state(double sigma_E, double j0, int site_count) {
  if (!(sigma_E > 0.0)) throw DomainError("initial_state: sigma_E must be positive");
  if (site_count < 3) throw DomainError("initial_state: need at least 3 sites");
  InitialState out;
  auto gauss = [&](double j) { return std::exp(-(j - j0) * (j - j0) / (4.0 * sigma_E * sigma_E)); };

  double inside = 0.0;
  out.envelope.resize(static_cast<std::size_t>(site_count));
  for (int j = 0; j < site_count; ++j) {
    const double a = gauss(j);
    out.envelope[static_cast<std::size_t>(j)] = a;
    inside += a * a;
  }
  // Mass of the untruncated envelope beyond the lattice ends.
  double outside = 0.0;
  const int reach = static_cast<int>(std::ceil(12.0 * sigma_E)) + 1;
  for (int j = -reach; j < 0; ++j) outside += gauss(j) * gauss(j);
  for (int j = site_count; j < site_count + reach; ++j) outside += gauss(j) * gauss(j);
  if (!(inside > 0.0)) throw DomainError("initial_state: envelope vanishes on the lattice");
  out.tail_mass = outside / (inside + outside);

  const double norm = std::sqrt(inside);
  for (double& a : out.envelope) a /= norm;
  Eigen::VectorXd alpha = Eigen::Map<Eigen::VectorXd>(out.envelope.data(), site_count);
  out.state = TwoAtomState(Eigen::MatrixXcd((alpha * alpha.transpose()).cast<std::complex<double>>()));

  if (out.tail_mass > 1e-4)
    out.warnings.push_back("envelope truncated by the lattice boundary (tail mass " +
                           std::to_string(out.tail_mass) + ")");
  if (sigma_E < 1.0)
    out.warnings.push_back("sigma_E below one lattice constant; the envelope is not smooth on the lattice");
  return out;
}

SeparationDiagnostics separation_diagnostics(const TwoAtomState& state, int band) {
  SeparationDiagnostics d;
  const int n = state.site_count();
  double dsum = 0.0, ssum = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const double p = std::norm(state.amplitudes(j, l));
      const double centre = 0.5 * (j + l);
      if (std::abs(j - l) <= band) {
        d.diatom_mass += p;
        dsum += p * centre;
      } else {
        d.single_mass += p;
        ssum += p * centre;
      }
    }
  d.diagonal_weight = diagonal_weight(state);
  if (d.diatom_mass > 1e-12) d.diatom_centroid = dsum / d.diatom_mass;
  if (d.single_mass > 1e-12) d.single_centroid = ssum / d.single_mass;
  return d;
}

std::optional<double> displacement_ratio(const SeparationDiagnostics& d, double origin) {
  if (!d.diatom_centroid || !d.single_centroid) return std::nullopt;
  const double dd = std::abs(*d.diatom_centroid - origin);
  if (dd < 1e-12) return std::nullopt;
  return std::abs(*d.single_centroid - origin) / dd;
}

Propagator::Propagator(const SpectrumResult& spectrum, const TwoAtomState& initial)
    : energies_(spectrum.eigenvalues), vectors_(spectrum.eigenvectors), site_count_(spectrum.site_count) {
  if (!spectrum.complete) throw DomainError("time evolution needs the complete spectrum");
  if (initial.site_count() != site_count_) throw DomainError("state and Hamiltonian sizes differ");
  const Eigen::VectorXcd psi = initial.flat();
  overlaps_ = vectors_.transpose().cast<std::complex<double>>() * psi;
}

TwoAtomState Propagator::at(double t) const {
  Eigen::VectorXcd a(overlaps_.size());
  for (Eigen::Index n = 0; n < a.size(); ++n) a(n) = overlaps_(n) * std::polar(1.0, -energies_(n) * t);
  const Eigen::VectorXcd psi = vectors_.cast<std::complex<double>>() * a;
  return TwoAtomState::from_flat(psi, site_count_);
}

double Propagator::energy() const {
  return (overlaps_.cwiseAbs2().array() * energies_.array()).sum();
}

ProtocolTrace evolve(const TwoAtomState& initial, const SpectrumResult& spectrum,
                     const std::vector<double>& times, int band) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] >= times[i - 1])) throw DomainError("evolve: snapshot times must be non-decreasing");
  const Propagator prop(spectrum, initial);
  ProtocolTrace tr;
  tr.times = times;
  const double e0 = prop.energy();
  const double scale = std::abs(e0) > 1e-12 ? std::abs(e0) : 1.0;
  for (double t : times) {
    TwoAtomState s = prop.at(t);
    tr.max_norm_error = std::max(tr.max_norm_error, std::abs(s.norm() - 1.0));
    const Eigen::VectorXcd psi = s.flat();
    const double e = (spectrum.eigenvectors.transpose().cast<std::complex<double>>() * psi)
                         .cwiseAbs2()
                         .dot(spectrum.eigenvalues);
    tr.energies.push_back(e);
    tr.max_energy_drift = std::max(tr.max_energy_drift, std::abs(e - e0) / scale);
    tr.diagnostics.push_back(separation_diagnostics(s, band));
    tr.states.push_back(std::move(s));
  }
  return tr;
}

ProtocolTrace evolve(const TwoAtomState& initial, const SpectrumResult& spectrum, double t_final,
                     int n_snapshots, int band) {
  if (n_snapshots < 1) throw DomainError("evolve: need at least one snapshot");
  std::vector<double> times;
  if (n_snapshots == 1) times.push_back(t_final);
  else
    for (int i = 0; i < n_snapshots; ++i) times.push_back(t_final * i / (n_snapshots - 1));
  if (t_final < 0.0) std::reverse(times.begin(), times.end());
  return evolve(initial, spectrum, times, band);
}

PostSelection postselect_diatoms(const TwoAtomState& state, const Region& region, int band) {
  const int n = state.site_count();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (std::abs(j - l) <= band && j >= region.lo && j <= region.hi && l >= region.lo && l <= region.hi)
        c(j, l) = state.amplitudes(j, l);
  PostSelection p;
  p.retained_mass = c.squaredNorm() / state.amplitudes.squaredNorm();
  if (p.retained_mass < 1e-10) throw NumericalError("post-selection keeps no amplitude", p.retained_mass);
  p.state = TwoAtomState(std::move(c));
  p.state.normalize();
  return p;
}

TwoAtomState ideal_diatom_state(const InitialState& initial) {
  const int n = static_cast<int>(initial.envelope.size());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double a = initial.envelope[static_cast<std::size_t>(j)];
    c(j, j) = a * a;
  }
  TwoAtomState s(std::move(c));
  s.normalize();
  return s;
}

double fidelity(const TwoAtomState& a, const TwoAtomState& b) {
  if (a.site_count() != b.site_count()) throw DomainError("fidelity: lattice sizes differ");
  const std::complex<double> o = (a.amplitudes.conjugate().cwiseProduct(b.amplitudes)).sum();
  return std::norm(o);
}

CoolingRequirements cooling_requirements(double sigma_E, double mass, double hop, double vdd,
                                         double recoil_energy) {
  if (!(sigma_E > 0.0) || !(mass > 0.0)) throw DomainError("cooling_requirements: sigma_E and mass must be positive");
  CoolingRequirements c;
  c.t_max_initial = si::hbar * si::hbar / (4.0 * mass * si::k_boltzmann * sigma_E * sigma_E);
  c.trap_frequency = si::hbar / (2.0 * mass * sigma_E * sigma_E) / (2.0 * kPi);
  c.t_max_band = vdd != 0.0 ? 4.0 * std::abs(diatom_hopping(hop, vdd)) * recoil_energy / si::k_boltzmann : 0.0;
  return c;
}

Eigen::MatrixXd thermal_envelope(double sigma_E, double kT, double j0, int site_count) {
  if (!(sigma_E > 0.0)) throw DomainError("thermal_envelope: sigma_E must be positive");
  if (!(kT >= 0.0)) throw DomainError("thermal_envelope: negative temperature");
  const double s2 = sigma_E * sigma_E;
  const double omega = harmonic_frequency(sigma_E);
  double th = 1.0, cth = 1.0;
  if (kT > 0.0) {
    const double half = 0.5 * omega / kT;
    th = std::tanh(half);
    cth = 1.0 / th;
  }
  Eigen::MatrixXd rho(site_count, site_count);
  for (int j = 0; j < site_count; ++j)
    for (int k = 0; k < site_count; ++k) {
      const double X = 0.5 * (j + k) - j0;
      const double xi = j - k;
      rho(j, k) = std::exp(-X * X * th / (2.0 * s2) - xi * xi * cth / (8.0 * s2));
    }
  return rho / rho.trace();
}

MixedState prepared_diatom_mixture(double sigma_E, double kT, double j0, int site_count) {
  const Eigen::MatrixXd rho = thermal_envelope(sigma_E, kT, j0, site_count);
  Eigen::MatrixXd rd = rho.cwiseAbs2();
  rd /= rd.trace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rd);
  if (es.info() != Eigen::Success) throw NumericalError("diatom density matrix diagonalisation failed");
  MixedState m;
  m.boundary = Boundary::open;
  const double wmax = es.eigenvalues().maxCoeff();
  double total = 0.0;
  for (int k = site_count - 1; k >= 0; --k) {
    const double w = es.eigenvalues()(k);
    if (w < 1e-12 * wmax) continue;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(site_count, site_count);
    for (int j = 0; j < site_count; ++j) c(j, j) = es.eigenvectors()(j, k);
    TwoAtomState s(std::move(c));
    s.normalize();
    m.states.push_back(std::move(s));
    m.weights.push_back(w);
    total += w;
  }
  for (double& w : m.weights) w /= total;
  return m;
}

}  // namespace eprl
