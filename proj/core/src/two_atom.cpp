#include "eprlattice/two_atom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "eprlattice/error.hpp"
#include "eprlattice/lanczos.hpp"

namespace eprl {

ExternalPotential ExternalPotential::harmonic(double sigma_E, double center) {
  ExternalPotential p;
  p.kind = Kind::harmonic;
  p.sigma_E = sigma_E;
  p.center = center;
  p.validate();
  return p;
}

ExternalPotential ExternalPotential::linear(double slope, double center) {
  ExternalPotential p;
  p.kind = Kind::linear;
  p.slope = slope;
  p.center = center;
  p.validate();
  return p;
}

double harmonic_frequency(double sigma_E) {
  if (!(sigma_E > 0.0)) throw DomainError("harmonic trap width must be positive");
  return 1.0 / (kPi * kPi * sigma_E * sigma_E);
}

double ExternalPotential::at(int j) const {
  const double x = j - center;
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::harmonic: {
      // (1/2) m w^2 x^2 with m = pi^2/2 and w = 1/(pi^2 sigma_E^2)
      const double s2 = sigma_E * sigma_E;
      return x * x / (4.0 * kPi * kPi * s2 * s2);
    }
    case Kind::linear:
      return slope * x;
  }
  return 0.0;
}

void ExternalPotential::validate() const {
  if (kind == Kind::harmonic && !(sigma_E > 0.0)) throw DomainError("harmonic trap needs sigma_E > 0");
  if (kind == Kind::linear && !std::isfinite(slope)) throw DomainError("linear slope must be finite");
  if (!std::isfinite(center)) throw DomainError("potential centre must be finite");
}

void TwoAtomState::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("cannot normalise a zero state");
  amplitudes /= n;
}

Eigen::VectorXcd TwoAtomState::flat() const {
  const int n = site_count();
  Eigen::VectorXcd v(n * n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) v(j * n + l) = amplitudes(j, l);
  return v;
}

TwoAtomState TwoAtomState::from_flat(const Eigen::VectorXcd& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) throw DomainError("state size is not N^2");
  Eigen::MatrixXcd c(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) c(j, l) = v(j * n + l);
  return TwoAtomState(std::move(c));
}

TwoAtomState TwoAtomState::from_flat(const Eigen::VectorXd& v, int n) {
  return from_flat(Eigen::VectorXcd(v.cast<std::complex<double>>()), n);
}

TwoAtomState TwoAtomState::swapped() const {
  return TwoAtomState(amplitudes.transpose());
}

TwoAtomHamiltonian::TwoAtomHamiltonian(int site_count, double hop, double vdd, Boundary boundary,
                                       ExternalPotential external, const TwoAtomOptions& options)
    : n_(site_count), hop_(hop), vdd_(vdd), boundary_(boundary), external_(external), options_(options) {
  if (n_ < 3) throw DomainError("two-atom Hamiltonian needs at least 3 sites");
  if (!std::isfinite(hop) || !std::isfinite(vdd)) throw DomainError("hop and vdd must be finite");
  external_.validate();
  site_energy_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) site_energy_[static_cast<std::size_t>(j)] = external_.at(j);

  if (!options_.sparse) {
    const double dim = static_cast<double>(dimension());
    const double mb = dim * dim * sizeof(double) / (1024.0 * 1024.0);
    if (mb > options_.memory_budget_mb)
      throw DomainError("dense two-atom matrix needs " + std::to_string(mb) + " MB (budget " +
                        std::to_string(options_.memory_budget_mb) +
                        " MB); enable sparse mode for this lattice size");
    const int d = dimension();
    dense_ = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd e(d), y(d);
    for (int i = 0; i < d; ++i) {
      e.setZero();
      e(i) = 1.0;
      apply(e, y);
      dense_.col(i) = y;
    }
  }
}

double TwoAtomHamiltonian::diagonal(int j, int l) const {
  double v = site_energy_[static_cast<std::size_t>(j)] + site_energy_[static_cast<std::size_t>(l)];
  int d = std::abs(j - l);
  if (boundary_ == Boundary::periodic) d = std::min(d, n_ - d);
  if (d == 0) v += vdd_;
  else if (d <= static_cast<int>(options_.offsite_vdd.size()))
    v += options_.offsite_vdd[static_cast<std::size_t>(d - 1)];
  return v;
}

void TwoAtomHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  const int n = n_;
  y.resize(dimension());
  const bool periodic = boundary_ == Boundary::periodic;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      double s = diagonal(j, l) * x(j * n + l);
      if (j > 0) s += hop_ * x((j - 1) * n + l);
      else if (periodic) s += hop_ * x((n - 1) * n + l);
      if (j < n - 1) s += hop_ * x((j + 1) * n + l);
      else if (periodic) s += hop_ * x(l);
      if (l > 0) s += hop_ * x(j * n + l - 1);
      else if (periodic) s += hop_ * x(j * n + n - 1);
      if (l < n - 1) s += hop_ * x(j * n + l + 1);
      else if (periodic) s += hop_ * x(j * n);
      y(j * n + l) = s;
    }
  }
}

Eigen::VectorXcd TwoAtomHamiltonian::apply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXd re(dimension()), im(dimension());
  apply(Eigen::VectorXd(x.real()), re);
  apply(Eigen::VectorXd(x.imag()), im);
  Eigen::VectorXcd y(dimension());
  y.real() = re;
  y.imag() = im;
  return y;
}

Eigen::MatrixXd TwoAtomHamiltonian::dense() const {
  if (has_dense()) return dense_;
  const int d = dimension();
  Eigen::MatrixXd m(d, d);
  Eigen::VectorXd e(d), y(d);
  for (int i = 0; i < d; ++i) {
    e.setZero();
    e(i) = 1.0;
    apply(e, y);
    m.col(i) = y;
  }
  return m;
}

double TwoAtomHamiltonian::norm_bound() const {
  double worst = 0.0;
  for (int j = 0; j < n_; ++j)
    for (int l = 0; l < n_; ++l) worst = std::max(worst, std::abs(diagonal(j, l)));
  return worst + 4.0 * std::abs(hop_);
}

Eigen::MatrixXd TwoAtomHamiltonian::single_atom_matrix() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, n_);
  for (int j = 0; j < n_; ++j) {
    h(j, j) = site_energy_[static_cast<std::size_t>(j)];
    if (j + 1 < n_) h(j, j + 1) = h(j + 1, j) = hop_;
  }
  if (boundary_ == Boundary::periodic) h(0, n_ - 1) = h(n_ - 1, 0) = hop_;
  return h;
}

Eigen::VectorXd TwoAtomHamiltonian::single_atom_spectrum() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(single_atom_matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

TwoAtomHamiltonian build(const ModelParams& model, const ExternalPotential& external,
                         const TwoAtomOptions& options) {
  model.validate();
  return TwoAtomHamiltonian(model.site_count, model.hop, model.vdd, model.boundary, external, options);
}

TwoAtomState SpectrumResult::state(int n) const {
  if (n < 0 || n >= size()) throw DomainError("eigenstate index out of range");
  return TwoAtomState::from_flat(Eigen::VectorXd(eigenvectors.col(n)), site_count);
}

DiatomBand find_diatom_band(const Eigen::VectorXd& eigenvalues, double pair_min, double pair_max,
                            double vdd, bool complete) {
  DiatomBand band;
  const int n = static_cast<int>(eigenvalues.size());
  if (vdd == 0.0 || n == 0) return band;
  if (vdd < 0.0) {
    const double edge = pair_min - 1e-9 * std::max(1.0, std::abs(pair_min));
    int count = 0;
    while (count < n && eigenvalues(count) < edge) ++count;
    band.first = 0;
    band.count = count;
  } else {
    if (!complete) return band;
    const double edge = pair_max + 1e-9 * std::max(1.0, std::abs(pair_max));
    int first = n;
    while (first > 0 && eigenvalues(first - 1) > edge) --first;
    band.first = first;
    band.count = n - first;
  }
  if (band.count > 0) {
    band.lower = eigenvalues(band.first);
    band.upper = eigenvalues(band.first + band.count - 1);
  }
  return band;
}

SpectrumResult diagonalize(const TwoAtomHamiltonian& h) {
  SpectrumResult r;
  r.site_count = h.site_count();
  r.norm_bound = h.norm_bound();
  const int d = h.dimension();

  if (h.site_count() <= h.options().dense_limit) {
    const Eigen::MatrixXd m = h.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    r.eigenvalues = es.eigenvalues();
    r.eigenvectors = es.eigenvectors();
    const Eigen::MatrixXd res = m * r.eigenvectors - r.eigenvectors * r.eigenvalues.asDiagonal();
    r.max_residual = res.colwise().norm().maxCoeff();
    r.complete = true;
  } else {
    LanczosOptions opt;
    opt.n_eigs = h.options().lanczos_eigs > 0 ? h.options().lanczos_eigs : 2 * h.site_count() + 10;
    opt.tol = 1e-11;
    const LanczosResult lr = lanczos_lowest(
        d, [&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) { h.apply(x, y); }, opt);
    r.eigenvalues = lr.values;
    r.eigenvectors = lr.vectors;
    r.max_residual = lr.max_residual;
    r.complete = lr.values.size() == d;
  }
  if (r.max_residual > 1e-8 * std::max(r.norm_bound, 1e-300))
    throw NumericalError("eigen-residual above 1e-8 ||H||", r.max_residual);

  const Eigen::VectorXd single = h.single_atom_spectrum();
  r.pair_min = 2.0 * single.minCoeff();
  r.pair_max = 2.0 * single.maxCoeff();
  r.diatom_band = find_diatom_band(r.eigenvalues, r.pair_min, r.pair_max, h.vdd(), r.complete);
  return r;
}

TwoAtomState diatom_ground_state(const SpectrumResult& spectrum) { return spectrum.state(0); }

double diatom_hopping(double hop, double vdd) {
  if (vdd == 0.0) throw DomainError("diatom_hopping: V_dd must be nonzero");
  return 2.0 * hop * hop / vdd;
}

double diatom_effective_mass(double hop, double vdd, double lattice_constant) {
  if (hop == 0.0) throw DomainError("diatom_effective_mass: V_hop must be nonzero");
  return std::abs(vdd) / (4.0 * hop * hop * lattice_constant * lattice_constant);
}

double total_quasimomentum(const TwoAtomState& state) {
  const int n = state.site_count();
  std::complex<double> t = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      t += std::conj(state.amplitudes(j, l)) * state.amplitudes((j + n - 1) % n, (l + n - 1) % n);
  return std::acos(std::clamp(t.real() / state.amplitudes.squaredNorm(), -1.0, 1.0));
}

DiatomDispersion diatom_dispersion(const SpectrumResult& spectrum) {
  DiatomDispersion d;
  const DiatomBand& b = spectrum.diatom_band;
  for (int i = b.first; i < b.first + b.count; ++i) {
    d.K.push_back(total_quasimomentum(spectrum.state(i)));
    d.energy.push_back(spectrum.eigenvalues(i));
  }
  return d;
}

ThermalWeights thermal_state(const SpectrumResult& spectrum, double kT, ThermalSubset subset) {
  if (!(kT >= 0.0) || !std::isfinite(kT)) throw DomainError("temperature must be non-negative");
  ThermalWeights w;
  if (subset == ThermalSubset::diatom_band) {
    if (spectrum.diatom_band.count == 0) throw DomainError("thermal_state: no diatom band");
    for (int i = 0; i < spectrum.diatom_band.count; ++i) w.indices.push_back(spectrum.diatom_band.first + i);
  } else {
    for (int i = 0; i < spectrum.size(); ++i) w.indices.push_back(i);
  }
  double emin = spectrum.eigenvalues(w.indices.front());
  for (int i : w.indices) emin = std::min(emin, spectrum.eigenvalues(i));
  const double scale = std::max(1.0, std::abs(emin));
  double total = 0.0;
  for (int i : w.indices) {
    const double de = spectrum.eigenvalues(i) - emin;
    double x;
    if (kT == 0.0) x = de <= 1e-10 * scale ? 1.0 : 0.0;
    else x = std::exp(-de / kT);
    w.weights.push_back(x);
    total += x;
  }
  for (double& x : w.weights) x /= total;
  return w;
}

double diagonal_weight(const TwoAtomState& state) {
  return state.amplitudes.diagonal().squaredNorm();
}

double band_weight(const TwoAtomState& state, int band, bool periodic) {
  const int n = state.site_count();
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      int d = std::abs(j - l);
      if (periodic) d = std::min(d, n - d);
      if (d <= band) s += std::norm(state.amplitudes(j, l));
    }
  return s;
}

}  // namespace eprl
