#include "eprlattice/band_structure.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "eprlattice/error.hpp"
#include "eprlattice/parameters.hpp"

namespace eprl {

namespace {

void check_basis(int n_planewaves) {
  if (n_planewaves < 3 || n_planewaves % 2 == 0)
    throw DomainError("n_planewaves must be odd and at least 3");
}

// Diagonal (k + 2 pi n)^2 / pi^2, off-diagonal -U0/4 from -(U0/2) cos(2 pi x).
void tridiagonal(double depth, double k, int m, Eigen::VectorXd& diag, Eigen::VectorXd& sub) {
  const int half = (m - 1) / 2;
  diag.resize(m);
  sub.resize(m - 1);
  for (int i = 0; i < m; ++i) {
    const double q = k + 2.0 * kPi * (i - half);
    diag(i) = q * q / (kPi * kPi);
  }
  sub.setConstant(-depth / 4.0);
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(double depth, double k, int m,
                                                     bool vectors) {
  Eigen::VectorXd diag, sub;
  tridiagonal(depth, k, m, diag, sub);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  const int opts = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  es.computeFromTridiagonal(diag, sub, opts);
  if (es.info() != Eigen::Success) {
    // The implicit QL sweep can stall when two diagonal entries differ only in
    // the last bit (k within an ulp of the zone edge). The dense path
    // re-tridiagonalises and does not hit the same split.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    h.diagonal() = diag;
    h.diagonal(1) = sub;
    h.diagonal(-1) = sub;
    es.compute(h, opts);
  }
  if (es.info() != Eigen::Success) throw NumericalError("plane-wave eigensolver failed at k = " + std::to_string(k));
  return es;
}

// Sign so that the periodic part u_k is positive at a reference point. The
// site centre x = 0 is tried first.
void fix_gauge(Eigen::VectorXd& c) {
  const int m = static_cast<int>(c.size());
  const int half = (m - 1) / 2;
  constexpr std::array<double, 4> refs{0.0, 0.25, 0.125, 0.375};
  for (double x : refs) {
    double u = 0.0;
    for (int i = 0; i < m; ++i) u += c(i) * std::cos(2.0 * kPi * (i - half) * x);
    if (std::abs(u) > 1e-8) {
      if (u < 0.0) c = -c;
      return;
    }
  }
  throw NumericalError("gauge fixing failed: Bloch function vanishes at every reference point");
}

}  // namespace

Eigen::MatrixXd planewave_hamiltonian(double depth, double k, int n_planewaves) {
  check_basis(n_planewaves);
  Eigen::VectorXd diag, sub;
  tridiagonal(depth, k, n_planewaves, diag, sub);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_planewaves, n_planewaves);
  h.diagonal() = diag;
  h.diagonal(1) = sub;
  h.diagonal(-1) = sub;
  return h;
}

Eigen::VectorXd band_energies_at(double depth, double k, int n_planewaves, int count) {
  check_basis(n_planewaves);
  count = std::min(count, n_planewaves);
  return solve(depth, k, n_planewaves, false).eigenvalues().head(count);
}

BlochPoint lowest_band_at(double depth, double k, int n_planewaves) {
  check_basis(n_planewaves);
  const auto es = solve(depth, k, n_planewaves, true);
  BlochPoint p;
  p.energy = es.eigenvalues()(0);
  p.coefficients = es.eigenvectors().col(0);
  fix_gauge(p.coefficients);
  return p;
}

BlochSpectrum bloch_spectrum(double depth, const BandOptions& options) {
  if (!std::isfinite(depth) || depth < 0.0) throw DomainError("lattice depth must be non-negative");
  if (options.n_planewaves < 21 || options.n_planewaves % 2 == 0)
    throw DomainError("n_planewaves must be odd and at least 21");
  if (options.n_k < 8) throw DomainError("n_k must be at least 8");
  const int bands = std::clamp(options.kept_bands, 1, options.n_planewaves);
  const int doubled = 2 * options.n_planewaves + 1;

  BlochSpectrum s;
  s.depth = depth;
  s.n_planewaves = options.n_planewaves;
  s.quasimomenta.resize(static_cast<std::size_t>(options.n_k));
  s.band_energies.resize(bands, options.n_k);
  s.lowest_states.resize(static_cast<std::size_t>(options.n_k));

  for (int ik = 0; ik < options.n_k; ++ik) {
    const double k = -kPi + 2.0 * kPi * ik / options.n_k;
    s.quasimomenta[static_cast<std::size_t>(ik)] = k;
    const auto es = solve(depth, k, options.n_planewaves, true);
    s.band_energies.col(ik) = es.eigenvalues().head(bands);
    Eigen::VectorXd c = es.eigenvectors().col(0);
    fix_gauge(c);
    s.lowest_states[static_cast<std::size_t>(ik)] = std::move(c);

    const Eigen::VectorXd ref = band_energies_at(depth, k, doubled, bands);
    const double diff = (ref - s.band_energies.col(ik)).cwiseAbs().maxCoeff();
    s.convergence_residual = std::max(s.convergence_residual, diff);
  }
  if (s.convergence_residual > options.convergence_tol)
    throw NumericalError("Bloch bands not converged in the plane-wave cutoff (max change " +
                             std::to_string(s.convergence_residual) + " E_rec)",
                         s.convergence_residual);
  return s;
}

HoppingResult hopping_exact(const BlochSpectrum& spectrum) {
  const int nk = spectrum.n_k();
  HoppingResult r;
  double lo = spectrum.lowest(0), hi = spectrum.lowest(0);
  for (int ik = 0; ik < nk; ++ik) {
    const double e = spectrum.lowest(ik);
    const double k = spectrum.quasimomenta[static_cast<std::size_t>(ik)];
    r.center_energy += e;
    r.hop += e * std::cos(k);
    r.next_nearest += e * std::cos(2.0 * k);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  r.center_energy /= nk;
  r.hop /= nk;
  r.next_nearest /= nk;
  r.bandwidth = hi - lo;
  r.truncation_error =
      r.bandwidth > 0.0 ? std::abs(4.0 * std::abs(r.hop) - r.bandwidth) / r.bandwidth : 0.0;
  r.valid = r.truncation_error <= 0.05;
  return r;
}

double hopping_approx(double depth) { return 0.25 * std::exp(-0.26 * depth); }

double depth_for_hopping(double hop, const BandOptions& options) {
  const double target = std::abs(hop);
  auto mag = [&](double u) { return std::abs(hopping_exact(bloch_spectrum(u, options)).hop); };
  double lo = 0.0, hi = 80.0;
  if (target >= mag(lo) || target <= mag(hi))
    throw DomainError("depth_for_hopping: |hop| outside the range reachable for U0 in [0, 80]");
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mag(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double effective_mass(double bandwidth, double lattice_constant) {
  if (!(bandwidth > 0.0)) throw DomainError("effective_mass: bandwidth must be positive");
  return 2.0 / (lattice_constant * lattice_constant * bandwidth);
}

WannierBasis::WannierBasis(const BlochSpectrum& spectrum, int site, int points_per_cell)
    : depth_(spectrum.depth),
      n_planewaves_(spectrum.n_planewaves),
      site_(site),
      site_count_(spectrum.n_k()),
      points_per_cell_(points_per_cell) {
  if (points_per_cell < 16) throw DomainError("wannier: need at least 16 points per cell");
  const HoppingResult h = hopping_exact(spectrum);
  hop_ = h.hop;
  center_energy_ = h.center_energy;

  const int nk = spectrum.n_k();
  const int m = spectrum.n_planewaves;
  const int half = (m - 1) / 2;

  std::vector<double> q_all, w_all;
  for (int ik = 0; ik < nk; ++ik) {
    const Eigen::VectorXd& c = spectrum.lowest_states[static_cast<std::size_t>(ik)];
    for (int i = 0; i < m; ++i) {
      q_all.push_back(spectrum.quasimomenta[static_cast<std::size_t>(ik)] + 2.0 * kPi * (i - half));
      w_all.push_back(c(i) / nk);
    }
  }

  // Pair +q with -q: the real part needs the even combination, the imaginary
  // part the odd one, which vanishes for an inversion-symmetric gauge.
  std::map<long long, std::array<double, 3>> folded;
  for (std::size_t t = 0; t < q_all.size(); ++t) {
    const long long key = std::llround(std::abs(q_all[t]) * 1e9);
    auto& slot = folded[key];
    slot[0] = std::abs(q_all[t]);
    slot[1] += w_all[t];
    slot[2] += q_all[t] < 0.0 ? -w_all[t] : w_all[t];
  }
  std::vector<double> odd_q, odd_w;
  for (const auto& [key, v] : folded) {
    if (std::abs(v[1]) >= 1e-18) {
      wavenumbers_.push_back(v[0]);
      weights_.push_back(v[1]);
    }
    if (std::abs(v[2]) >= 1e-18) {
      odd_q.push_back(v[0]);
      odd_w.push_back(v[2]);
    }
  }

  // Grid over one period of the k-mesh Wannier function, centred on the site.
  const int npts = nk * points_per_cell;
  const double step = 1.0 / points_per_cell;
  grid_.resize(static_cast<std::size_t>(npts));
  values_.resize(static_cast<std::size_t>(npts));
  for (int i = 0; i < npts; ++i) {
    const double x = -0.5 * nk + i * step;
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < wavenumbers_.size(); ++t) re += weights_[t] * std::cos(wavenumbers_[t] * x);
    for (std::size_t t = 0; t < odd_q.size(); ++t) im += odd_w[t] * std::sin(odd_q[t] * x);
    grid_[static_cast<std::size_t>(i)] = x + site;
    values_[static_cast<std::size_t>(i)] = re;
    imag_residual_ = std::max(imag_residual_, std::abs(im));
  }

  double x2 = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double x = grid_[static_cast<std::size_t>(i)] - site;
    const double v = values_[static_cast<std::size_t>(i)];
    x2 += x * x * v * v * step;
  }
  width_ = std::sqrt(x2);
}

double WannierBasis::eval_centered(double x) const {
  if (std::abs(x) >= 0.5 * site_count_) return 0.0;
  double s = 0.0;
  for (std::size_t t = 0; t < wavenumbers_.size(); ++t) s += weights_[t] * std::cos(wavenumbers_[t] * x);
  return s;
}

double WannierBasis::value(double x) const { return eval_centered(x - site_); }

std::vector<double> WannierBasis::sample_centered(double x0, double step, int count) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = eval_centered(x0 + i * step);
  return out;
}

double WannierBasis::momentum_amplitude(double p) const {
  // p = k + 2 pi n with k in [-pi, pi); chi~(p) = c_n(k) / sqrt(2 pi).
  const double n_real = std::floor((p + kPi) / (2.0 * kPi));
  const double k = p - 2.0 * kPi * n_real;
  const int half = (n_planewaves_ - 1) / 2;
  const long long n = static_cast<long long>(n_real);
  if (n < -half || n > half) return 0.0;
  const BlochPoint b = lowest_band_at(depth_, k, n_planewaves_);
  return b.coefficients(static_cast<Eigen::Index>(n + half)) / std::sqrt(2.0 * kPi);
}

WannierBasis wannier(const BlochSpectrum& spectrum, int site, int points_per_cell) {
  return WannierBasis(spectrum, site, points_per_cell);
}

double gaussian_sigma(double depth) {
  if (!(depth > 0.0)) throw DomainError("gaussian_sigma: lattice depth must be positive");
  return std::sqrt(std::sqrt(1.0 / (2.0 * depth))) / kPi;
}

GaussianApprox gaussian_approx(const WannierBasis& w) {
  GaussianApprox g;
  g.sigma = gaussian_sigma(w.depth());
  const double norm = std::pow(2.0 * kPi * g.sigma * g.sigma, -0.25);
  const double step = 1.0 / w.points_per_cell();
  double overlap = 0.0;
  for (std::size_t i = 0; i < w.grid().size(); ++i) {
    const double x = w.grid()[i] - w.site();
    overlap += norm * std::exp(-x * x / (4.0 * g.sigma * g.sigma)) * w.values()[i] * step;
  }
  g.fidelity = overlap * overlap;
  return g;
}

GaussianApprox gaussian_approx(double depth, const BandOptions& options) {
  if (!(depth > 0.0)) throw DomainError("gaussian_approx: lattice depth must be positive");
  return gaussian_approx(wannier(bloch_spectrum(depth, options)));
}

double gaussian_hopping(double depth) {
  const double sigma = gaussian_sigma(depth);
  const double alpha = 1.0 / (4.0 * sigma * sigma);
  const double overlap = std::exp(-alpha / 2.0);
  const double kinetic = alpha * (1.0 - alpha) / (kPi * kPi);
  const double potential = 0.5 * depth * std::exp(-kPi * kPi / (2.0 * alpha));
  return overlap * (kinetic + potential);
}

}  // namespace eprl
