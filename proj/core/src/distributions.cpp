#include "eprlattice/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "eprlattice/error.hpp"

namespace eprl {

namespace {

// Peak index reached by climbing uphill from the grid point nearest `near`.
int climb(const std::vector<double>& d, int i) {
  const int n = static_cast<int>(d.size());
  for (;;) {
    if (i > 0 && d[i - 1] > d[i]) --i;
    else if (i + 1 < n && d[i + 1] > d[i]) ++i;
    else return i;
  }
}

int clamp_index(const Axis& a, double v) {
  const int i = static_cast<int>(std::lround((v - a.start) / a.step));
  return std::clamp(i, 0, a.count - 1);
}

}  // namespace

int Axis::nearest(double v) const {
  const double f = (v - start) / step;
  if (f < -0.5 || f > count - 0.5) return -1;
  return std::clamp(static_cast<int>(std::lround(f)), 0, count - 1);
}

double JointDistribution::total() const { return density.sum() * axis1.step * axis2.step; }

MixedState MixedState::pure(TwoAtomState s, Boundary b) {
  MixedState m;
  m.states.push_back(std::move(s));
  m.weights.push_back(1.0);
  m.boundary = b;
  return m;
}

MixedState MixedState::thermal(const SpectrumResult& spectrum, const ThermalWeights& w, Boundary b) {
  MixedState m;
  m.boundary = b;
  const double wmax = *std::max_element(w.weights.begin(), w.weights.end());
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    if (w.weights[i] < 1e-14 * wmax) continue;
    m.states.push_back(spectrum.state(w.indices[i]));
    m.weights.push_back(w.weights[i]);
  }
  double total = 0.0;
  for (double x : m.weights) total += x;
  for (double& x : m.weights) x /= total;
  return m;
}

void MixedState::validate() const {
  if (states.empty() || states.size() != weights.size())
    throw DomainError("mixed state needs one weight per component");
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw DomainError("mixed-state weights must be non-negative");
    if (states[i].site_count() != states.front().site_count())
      throw DomainError("mixed-state components differ in lattice size");
    if (std::abs(states[i].norm() - 1.0) > 1e-8) throw DomainError("mixed-state component not normalised");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("mixed-state weights must sum to 1");
}

PairAmplitudes unfold(const TwoAtomState& state, Boundary boundary) {
  const int n = state.site_count();
  PairAmplitudes p;
  if (boundary == Boundary::open) {
    p.c = state.amplitudes;
    return p;
  }
  const int h = n / 2;
  p.first2 = -h;
  p.c = Eigen::MatrixXcd::Zero(n, 2 * n - 1);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      int d = ((l - j) % n + n) % n;
      if (d > n - 1 - h) d -= n;
      p.c(j, j + d + h) = state.amplitudes(j, l);
    }
  return p;
}

namespace {

struct Layout {
  int first1, n1, first2, n2;
};

Layout layout_of(const MixedState& state) {
  state.validate();
  const PairAmplitudes p = unfold(state.states.front(), state.boundary);
  return {p.first1, static_cast<int>(p.c.rows()), p.first2, static_cast<int>(p.c.cols())};
}

}  // namespace

JointDistribution position_joint(const MixedState& state, const WannierBasis& wannier,
                                 const JointOptions& options) {
  const int r = options.points_per_cell;
  if (r < 16) throw DomainError("position grid needs at least 16 points per cell");
  if (options.margin_cells < 0) throw DomainError("margin must be non-negative");
  const Layout lay = layout_of(state);
  const int mg = options.margin_cells;

  JointDistribution out;
  out.kind = DistKind::position;
  out.site_first = lay.first1;
  out.site_count = lay.n1;
  out.axis1 = {static_cast<double>(lay.first1 - mg), 1.0 / r, (lay.n1 - 1 + 2 * mg) * r + 1};
  out.axis2 = {static_cast<double>(lay.first2 - mg), 1.0 / r, (lay.n2 - 1 + 2 * mg) * r + 1};

  // chi_0 tabulated at t / r, |t| <= reach * r; X(i, j) = chi_0(x_i - site_j).
  const int reach = std::max(lay.n1, lay.n2) + 2 * mg;
  const std::vector<double> table = wannier.sample_centered(-reach, 1.0 / r, 2 * reach * r + 1);
  auto basis = [&](int first, int n, const Axis& ax) {
    Eigen::MatrixXd x(ax.count, n);
    const int start = static_cast<int>(std::lround(ax.start * r));
    for (int i = 0; i < ax.count; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = table[static_cast<std::size_t>(start + i - (first + j) * r + reach * r)];
    return x;
  };
  const Eigen::MatrixXd x1 = basis(lay.first1, lay.n1, out.axis1);
  const Eigen::MatrixXd x2 = basis(lay.first2, lay.n2, out.axis2);

  out.density = Eigen::MatrixXd::Zero(out.axis1.count, out.axis2.count);
  for (std::size_t s = 0; s < state.states.size(); ++s) {
    const PairAmplitudes p = unfold(state.states[s], state.boundary);
    const double w = state.weights[s];
    if (p.c.imag().isZero(0.0)) {
      const Eigen::MatrixXd psi = (x1 * p.c.real()) * x2.transpose();
      out.density += w * psi.cwiseAbs2();
    } else {
      const Eigen::MatrixXd re = (x1 * p.c.real()) * x2.transpose();
      const Eigen::MatrixXd im = (x1 * p.c.imag()) * x2.transpose();
      out.density += w * (re.cwiseAbs2() + im.cwiseAbs2());
    }
  }
  return out;
}

JointDistribution momentum_joint(const MixedState& state, const WannierBasis& wannier,
                                 const JointOptions& options) {
  const Layout lay = layout_of(state);
  const int per_zone = options.momentum_points_per_zone > 0 ? options.momentum_points_per_zone
                                                            : 8 * state.states.front().site_count();
  double extent = options.momentum_extent;
  if (extent <= 0.0) {
    const double need = std::max(5.0 / wannier.width(), 2.0 * kPi);
    extent = kPi * std::ceil(need / kPi - 1e-12);
  }
  const double dp = 2.0 * kPi / per_zone;
  const int half = static_cast<int>(std::ceil(extent / dp - 1e-9));

  JointDistribution out;
  out.kind = DistKind::momentum;
  out.site_first = lay.first1;
  out.site_count = lay.n1;
  out.axis1 = {-half * dp, dp, 2 * half + 1};
  out.axis2 = out.axis1;

  std::vector<double> amp(static_cast<std::size_t>(out.axis1.count));
  for (int i = 0; i < out.axis1.count; ++i) amp[static_cast<std::size_t>(i)] = wannier.momentum_amplitude(out.axis1.at(i));

  auto phases = [&](int first, int n) {
    Eigen::MatrixXcd e(out.axis1.count, n);
    for (int i = 0; i < out.axis1.count; ++i)
      for (int j = 0; j < n; ++j)
        e(i, j) = amp[static_cast<std::size_t>(i)] * std::polar(1.0, -out.axis1.at(i) * (first + j));
    return e;
  };
  const Eigen::MatrixXcd e1 = phases(lay.first1, lay.n1);
  const Eigen::MatrixXcd e2 = phases(lay.first2, lay.n2);

  out.density = Eigen::MatrixXd::Zero(out.axis1.count, out.axis2.count);
  for (std::size_t s = 0; s < state.states.size(); ++s) {
    const PairAmplitudes p = unfold(state.states[s], state.boundary);
    const Eigen::MatrixXcd phi = (e1 * p.c) * e2.transpose();
    out.density += state.weights[s] * phi.cwiseAbs2();
  }
  return out;
}

double Profile::total() const {
  double s = 0.0;
  for (double d : density) s += d;
  return s * axis.step;
}

double Profile::mean() const {
  double s = 0.0, m = 0.0;
  for (int i = 0; i < axis.count; ++i) {
    s += density[static_cast<std::size_t>(i)];
    m += density[static_cast<std::size_t>(i)] * axis.at(i);
  }
  return m / s;
}

double Profile::rms(double about) const {
  double s = 0.0, v = 0.0;
  for (int i = 0; i < axis.count; ++i) {
    const double d = axis.at(i) - about;
    s += density[static_cast<std::size_t>(i)];
    v += density[static_cast<std::size_t>(i)] * d * d;
  }
  return std::sqrt(v / s);
}

double Profile::hwhm(double near) const {
  if (axis.count < 3) throw NumericalError("profile too short for a width");
  const int peak = climb(density, clamp_index(axis, near));
  const double top = density[static_cast<std::size_t>(peak)];
  if (!(top > 0.0)) throw NumericalError("no identifiable central peak");
  const double half = 0.5 * top;
  auto edge = [&](int dir) {
    int i = peak;
    while (i + dir >= 0 && i + dir < axis.count && density[static_cast<std::size_t>(i + dir)] > half) i += dir;
    if (i + dir < 0 || i + dir >= axis.count) throw NumericalError("peak runs off the grid");
    const double a = density[static_cast<std::size_t>(i)], b = density[static_cast<std::size_t>(i + dir)];
    return axis.at(i) + dir * axis.step * (a - half) / (a - b);
  };
  return 0.5 * (edge(+1) - edge(-1));
}

double Profile::gaussian_sigma(double near) const {
  const int peak = climb(density, clamp_index(axis, near));
  const double half = 0.5 * density[static_cast<std::size_t>(peak)];
  int lo = peak, hi = peak;
  while (lo > 0 && density[static_cast<std::size_t>(lo - 1)] > half) --lo;
  while (hi + 1 < axis.count && density[static_cast<std::size_t>(hi + 1)] > half) ++hi;
  if (hi - lo < 2) return hwhm(near) / std::sqrt(2.0 * std::log(2.0));
  // Least squares ln d = c0 + c1 x + c2 x^2 about the peak.
  Eigen::MatrixXd a(hi - lo + 1, 3);
  Eigen::VectorXd b(hi - lo + 1);
  const double x0 = axis.at(peak);
  for (int i = lo; i <= hi; ++i) {
    const double x = axis.at(i) - x0;
    a.row(i - lo) << 1.0, x, x * x;
    b(i - lo) = std::log(density[static_cast<std::size_t>(i)]);
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  if (!(c(2) < 0.0)) throw NumericalError("Gaussian fit failed: peak not concave");
  return std::sqrt(-0.5 / c(2));
}

std::vector<double> Profile::peaks(double rel_threshold) const {
  std::vector<double> out;
  const double top = *std::max_element(density.begin(), density.end());
  for (int i = 1; i + 1 < axis.count; ++i) {
    const double d = density[static_cast<std::size_t>(i)];
    if (d >= rel_threshold * top && d > density[static_cast<std::size_t>(i - 1)] &&
        d >= density[static_cast<std::size_t>(i + 1)])
      out.push_back(axis.at(i));
  }
  return out;
}

namespace {

Profile normalized(Profile p) {
  const double t = p.total();
  if (!(t > 1e-12)) throw NumericalError("conditional slice carries no probability");
  for (double& d : p.density) d /= t;
  return p;
}

}  // namespace

Profile conditional(const JointDistribution& joint, double value, int measured_atom) {
  if (measured_atom != 1 && measured_atom != 2) throw DomainError("measured atom must be 1 or 2");
  const Axis& ma = measured_atom == 1 ? joint.axis1 : joint.axis2;
  const int i = ma.nearest(value);
  if (i < 0) throw DomainError("measured value outside the grid");
  Profile p;
  if (measured_atom == 1) {
    p.axis = joint.axis2;
    p.density.resize(static_cast<std::size_t>(joint.axis2.count));
    for (int k = 0; k < joint.axis2.count; ++k) p.density[static_cast<std::size_t>(k)] = joint.density(i, k);
  } else {
    p.axis = joint.axis1;
    p.density.resize(static_cast<std::size_t>(joint.axis1.count));
    for (int k = 0; k < joint.axis1.count; ++k) p.density[static_cast<std::size_t>(k)] = joint.density(k, i);
  }
  return normalized(std::move(p));
}

Profile conditional_binned(const JointDistribution& joint, double value, double bin_width,
                           int measured_atom) {
  if (measured_atom != 1 && measured_atom != 2) throw DomainError("measured atom must be 1 or 2");
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  const Axis& ma = measured_atom == 1 ? joint.axis1 : joint.axis2;
  const Axis& oa = measured_atom == 1 ? joint.axis2 : joint.axis1;
  if (ma.nearest(value) < 0) throw DomainError("measured value outside the grid");
  Profile p;
  p.axis = oa;
  p.density.assign(static_cast<std::size_t>(oa.count), 0.0);
  for (int i = 0; i < ma.count; ++i) {
    if (std::abs(ma.at(i) - value) > 0.5 * bin_width) continue;
    for (int k = 0; k < oa.count; ++k)
      p.density[static_cast<std::size_t>(k)] +=
          (measured_atom == 1 ? joint.density(i, k) : joint.density(k, i)) * ma.step;
  }
  return normalized(std::move(p));
}

Profile marginal(const JointDistribution& joint, int atom) {
  if (atom != 1 && atom != 2) throw DomainError("atom must be 1 or 2");
  Profile p;
  if (atom == 1) {
    p.axis = joint.axis1;
    const Eigen::VectorXd m = joint.density.rowwise().sum() * joint.axis2.step;
    p.density.assign(m.data(), m.data() + m.size());
  } else {
    p.axis = joint.axis2;
    const Eigen::VectorXd m = joint.density.colwise().sum().transpose() * joint.axis1.step;
    p.density.assign(m.data(), m.data() + m.size());
  }
  return p;
}

namespace {

void require_shared_step(const JointDistribution& j) {
  if (std::abs(j.axis1.step - j.axis2.step) > 1e-12 * j.axis1.step)
    throw DomainError("diagonal marginals need equal grid steps");
  const double shift = (j.axis1.start - j.axis2.start) / j.axis1.step;
  if (std::abs(shift - std::round(shift)) > 1e-6) throw DomainError("grid origins are not commensurate");
}

}  // namespace

Profile difference_marginal(const JointDistribution& joint) {
  require_shared_step(joint);
  const double h = joint.axis1.step;
  const int n1 = joint.axis1.count, n2 = joint.axis2.count;
  Profile p;
  p.axis = {joint.axis1.start - joint.axis2.back(), h, n1 + n2 - 1};
  p.density.assign(static_cast<std::size_t>(p.axis.count), 0.0);
  // u = x1 - x2 has index i1 - i2 + (n2 - 1).
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1) p.density[static_cast<std::size_t>(i1 - i2 + n2 - 1)] += joint.density(i1, i2) * h;
  return p;
}

Profile sum_marginal(const JointDistribution& joint) {
  require_shared_step(joint);
  const double h = joint.axis1.step;
  const int n1 = joint.axis1.count, n2 = joint.axis2.count;
  Profile p;
  p.axis = {joint.axis1.start + joint.axis2.start, h, n1 + n2 - 1};
  p.density.assign(static_cast<std::size_t>(p.axis.count), 0.0);
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1) p.density[static_cast<std::size_t>(i1 + i2)] += joint.density(i1, i2) * h;
  return p;
}

Profile line_profile(const JointDistribution& joint, int sign) {
  require_shared_step(joint);
  if (sign != 1 && sign != -1) throw DomainError("line sign must be +1 or -1");
  Profile p;
  p.axis = joint.axis1;
  p.density.assign(static_cast<std::size_t>(joint.axis1.count), 0.0);
  for (int i = 0; i < joint.axis1.count; ++i) {
    const int k = joint.axis2.nearest(sign * joint.axis1.at(i));
    if (k >= 0) p.density[static_cast<std::size_t>(i)] = joint.density(i, k);
  }
  return p;
}

double correlation(const JointDistribution& joint, double box) {
  // Trapezoid weights: grid points on the box edge count half, so a box of one
  // Brillouin zone does not count the periodic edge twice.
  auto inside = [box](double q, double step) {
    const double gap = std::abs(q) - box;
    if (std::abs(gap) < 1e-9 * step) return 0.5;
    return gap < 0.0 ? 1.0 : 0.0;
  };
  double w = 0.0, m1 = 0.0, m2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
  for (int i = 0; i < joint.axis1.count; ++i) {
    const double a = joint.axis1.at(i);
    const double fa = inside(a, joint.axis1.step);
    if (fa == 0.0) continue;
    for (int k = 0; k < joint.axis2.count; ++k) {
      const double b = joint.axis2.at(k);
      const double fb = inside(b, joint.axis2.step);
      if (fb == 0.0) continue;
      const double d = joint.density(i, k) * fa * fb;
      w += d;
      m1 += d * a;
      m2 += d * b;
      s11 += d * a * a;
      s22 += d * b * b;
      s12 += d * a * b;
    }
  }
  if (!(w > 0.0)) throw NumericalError("correlation window carries no probability");
  m1 /= w;
  m2 /= w;
  const double c11 = s11 / w - m1 * m1, c22 = s22 / w - m2 * m2, c12 = s12 / w - m1 * m2;
  return c12 / std::sqrt(c11 * c22);
}

double conditional_dx_minus(const JointDistribution& position) {
  if (position.kind != DistKind::position) throw DomainError("conditional_dx_minus needs a position joint");
  double wsum = 0.0, vsum = 0.0;
  for (int j = position.site_first; j < position.site_first + position.site_count; ++j) {
    const int i = position.axis1.nearest(j);
    if (i < 0) continue;
    double w = 0.0, v = 0.0;
    for (int k = 0; k < position.axis2.count; ++k) {
      const double d = position.density(i, k);
      const double u = position.axis2.at(k) - j;
      w += d;
      v += d * u * u;
    }
    wsum += w;
    vsum += v;
  }
  if (!(wsum > 0.0)) throw NumericalError("no probability at the site centres");
  return std::sqrt(vsum / wsum);
}

EprMetrics epr_metrics(const JointDistribution& position, const JointDistribution& momentum) {
  if (position.kind != DistKind::position || momentum.kind != DistKind::momentum)
    throw DomainError("epr_metrics expects a position and a momentum joint");
  EprMetrics m;
  m.dx_minus = conditional_dx_minus(position);
  const Profile diff = difference_marginal(position);
  m.dx_minus_marginal_hwhm = diff.hwhm(0.0);
  m.dx_minus_fit = diff.gaussian_sigma(0.0);
  const Profile sum = sum_marginal(momentum);
  m.dp_plus = sum.hwhm(0.0);
  m.dp_plus_fit = sum.gaussian_sigma(0.0);
  m.s = s_parameter(m.dx_minus, m.dp_plus);

  auto spacing = [](const std::vector<double>& peaks) {
    return peaks.size() < 2 ? 0.0 : (peaks.back() - peaks.front()) / (peaks.size() - 1);
  };
  m.peak_spacing_x = spacing(line_profile(position, +1).peaks(0.1));
  m.peak_spacing_p = spacing(sum.peaks(0.1));
  return m;
}

double thermal_dp_plus(double sigma_E, double kT, double mass) {
  if (!(sigma_E > 0.0) || !(mass > 0.0)) throw DomainError("thermal_dp_plus: sigma_E and mass must be positive");
  if (kT < 0.0) throw DomainError("thermal_dp_plus: negative temperature");
  const double t = kT == 0.0 ? 1.0 : std::tanh(1.0 / (2.0 * sigma_E * sigma_E * mass * kT));
  return 1.0 / (std::sqrt(2.0) * sigma_E * t);
}

double thermal_dp_plus_si(double sigma_E, double temperature, double mass) {
  if (!(sigma_E > 0.0) || !(mass > 0.0)) throw DomainError("thermal_dp_plus: sigma_E and mass must be positive");
  if (temperature < 0.0) throw DomainError("thermal_dp_plus: negative temperature");
  const double t = temperature == 0.0
                       ? 1.0
                       : std::tanh(si::hbar * si::hbar /
                                   (2.0 * sigma_E * sigma_E * mass * si::k_boltzmann * temperature));
  return si::hbar / (std::sqrt(2.0) * sigma_E * t);
}

double s_estimate(double sigma_E, double sigma, double kT) {
  if (!(sigma_E > 0.0) || !(sigma > 0.0)) throw DomainError("s_estimate: widths must be positive");
  if (kT < 0.0) throw DomainError("s_estimate: negative temperature");
  const double t = kT == 0.0 ? 1.0 : std::tanh(1.0 / (sigma_E * sigma_E * kPi * kPi * kT));
  return sigma_E / (std::sqrt(2.0) * sigma) * t;
}

double GaussianEpr::position_density(double x1, double x2) const {
  const double u = x1 - x2, v = x1 + x2;
  return std::exp(-u * u / (2.0 * dx_minus * dx_minus) - v * v / (2.0 * dx_plus * dx_plus)) /
         (kPi * dx_minus * dx_plus);
}

double GaussianEpr::momentum_density(double p1, double p2) const {
  const double dm = dp_minus(), dpl = dp_plus();
  const double u = p1 - p2, v = p1 + p2;
  return std::exp(-u * u / (2.0 * dm * dm) - v * v / (2.0 * dpl * dpl)) / (kPi * dm * dpl);
}

double GaussianEpr::conditional_center(double x1) const {
  const double r2 = (dx_minus / dx_plus) * (dx_minus / dx_plus);
  return x1 * (1.0 - r2) / (1.0 + r2);
}

double GaussianEpr::conditional_width() const {
  const double r2 = (dx_minus / dx_plus) * (dx_minus / dx_plus);
  return dx_minus / std::sqrt(1.0 + r2);
}

GaussianEpr gaussian_epr_reference(double dx_minus, double dx_plus) {
  if (!(dx_minus > 0.0) || !(dx_plus > 0.0)) throw DomainError("Gaussian EPR widths must be positive");
  return {dx_minus, dx_plus};
}

}  // namespace eprl
