#include "eprlat/commands.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "eprlattice/band_structure.hpp"
#include "eprlattice/distributions.hpp"
#include "eprlattice/error.hpp"
#include "eprlattice/liddi.hpp"
#include "eprlattice/protocol.hpp"
#include "eprlattice/two_atom.hpp"

namespace eprlat {

namespace {

using json = nlohmann::ordered_json;

int resolution_of(const ExperimentConfig& c, const RunOptions& o) {
  return o.resolution ? *o.resolution : c.output.resolution;
}

eprl::ExternalPotential external_for(const ExperimentConfig& c, const Derived& d) {
  switch (c.model.external) {
    case ExternalKind::linear: return eprl::ExternalPotential::linear(c.protocol.slope, d.j0);
    case ExternalKind::harmonic: return eprl::ExternalPotential::harmonic(c.protocol.sigma_E, d.j0);
    case ExternalKind::none: break;
  }
  return eprl::ExternalPotential::none();
}

eprl::SpectrumResult spectrum_for(const ExperimentConfig& c, const Derived& d) {
  eprl::TwoAtomOptions opts;
  opts.dense_limit = c.model.dense_limit;
  return eprl::diagonalize(eprl::build(d.model, external_for(c, d), opts));
}

eprl::MixedState state_for(const ExperimentConfig& c, const Derived& d, const eprl::SpectrumResult& s) {
  switch (c.dist.state) {
    case DistState::ground:
      return eprl::MixedState::pure(eprl::diatom_ground_state(s), d.model.boundary);
    case DistState::thermal: {
      const auto subset = s.diatom_band.count > 0 ? eprl::ThermalSubset::diatom_band : eprl::ThermalSubset::full;
      return eprl::MixedState::thermal(s, eprl::thermal_state(s, d.kT, subset), d.model.boundary);
    }
    case DistState::prepared:
      return eprl::prepared_diatom_mixture(c.protocol.sigma_E, d.kT, d.j0, c.model.sites);
  }
  throw eprl::DomainError("unknown dist state");
}

eprl::JointOptions joint_options(const ExperimentConfig& c, int resolution) {
  eprl::JointOptions o;
  o.points_per_cell = resolution;
  o.momentum_points_per_zone =
      c.output.momentum_points_per_zone > 0 ? c.output.momentum_points_per_zone : 4 * c.model.sites;
  return o;
}

json band_json(const eprl::DiatomBand& b) {
  return {{"first", b.first}, {"count", b.count}, {"lower_E_rec", b.lower}, {"upper_E_rec", b.upper},
          {"width_E_rec", b.width()}};
}

}  // namespace

void cmd_params(const ExperimentConfig& c, const RunOptions&, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const eprl::ModelParams& m = d.model;
  const eprl::WannierBasis w = eprl::wannier(eprl::bloch_spectrum(m.lattice_depth, d.band));
  const eprl::GaussianApprox g = eprl::gaussian_approx(w);
  const double hop2 = m.vdd != 0.0 ? eprl::diatom_hopping(m.hop, m.vdd) : 0.0;
  const double time_unit = m.time_to_seconds(1.0);
  const eprl::CoolingRequirements cool = eprl::cooling_requirements(
      c.protocol.sigma_E * m.lattice_constant, d.physical.atom_mass, m.hop, m.vdd, m.recoil_energy);

  json r;
  r["units"] = {{"energy", "E_rec"}, {"length", "a = lambda_L / 2"}, {"time", "hbar / E_rec"}};
  r["recoil_energy_J"] = m.recoil_energy;
  r["recoil_energy_Hz"] = m.recoil_energy / (2.0 * eprl::kPi * eprl::si::hbar);
  r["lattice_constant_m"] = m.lattice_constant;
  r["time_unit_s"] = time_unit;
  r["U0_E_rec"] = m.lattice_depth;
  r["V_hop_E_rec"] = m.hop;
  r["V_hop_next_nearest_E_rec"] = m.hop_next_nearest;
  r["V_hop_approx_E_rec"] = -eprl::hopping_approx(m.lattice_depth);
  r["V_hop_valid"] = m.hop_valid;
  r["bandwidth_E_rec"] = m.bandwidth;
  r["V_dd_E_rec"] = m.vdd;
  r["V_dd_J"] = m.energy_to_joule(m.vdd);
  r["V_dd_valid"] = m.vdd_valid;
  r["V_hop2_E_rec"] = hop2;
  r["diatom_bandwidth_E_rec"] = 4.0 * std::abs(hop2);
  if (m.bandwidth > 0.0) r["effective_mass_over_bare"] = eprl::effective_mass(m.bandwidth) / eprl::kBareMass;
  if (hop2 != 0.0) r["diatom_mass_over_single"] = std::abs(m.hop / hop2);
  r["wannier_rms_a"] = w.width();
  r["gaussian_sigma_a"] = g.sigma;
  r["gaussian_fidelity"] = g.fidelity;
  if (c.protocol.slope != 0.0) r["bloch_period_s"] = 2.0 * eprl::kPi / std::abs(c.protocol.slope) * time_unit;
  r["cooling"] = {{"sigma_E_a", c.protocol.sigma_E},
                  {"T_max_initial_nK", cool.t_max_initial * 1e9},
                  {"T_max_band_nK", cool.t_max_band * 1e9},
                  {"trap_frequency_Hz", cool.trap_frequency}};
  out.write("params.json", r.dump(2) + "\n");

  log << fmt::format("U0 = {:.4g} E_rec, V_hop = {:.4g} E_rec, V_dd = {:.4g} E_rec, V_hop2 = {:.4g} E_rec\n",
                     m.lattice_depth, m.hop, m.vdd, hop2);
}

void cmd_bands(const ExperimentConfig& c, const RunOptions& o, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const double depth = d.model.lattice_depth;
  const eprl::BlochSpectrum s = eprl::bloch_spectrum(depth, d.band);

  std::string csv = "k_hbar_per_a";
  for (int b = 0; b < s.band_count(); ++b) csv += fmt::format(",E{}_E_rec", b);
  csv += "\n";
  for (int ik = 0; ik < s.n_k(); ++ik) {
    csv += num(s.quasimomenta[static_cast<std::size_t>(ik)]);
    for (int b = 0; b < s.band_count(); ++b) csv += "," + num(s.band_energies(b, ik));
    csv += "\n";
  }
  out.write("bands.csv", csv);

  const int res = resolution_of(c, o);
  const eprl::WannierBasis w = eprl::wannier(s, 0, res);
  std::string wcsv = "x_a,chi_per_sqrt_a\n";
  const int half = 4 * res;
  for (int i = -half; i <= half; ++i) {
    const double x = static_cast<double>(i) / res;
    wcsv += num(x) + "," + num(w.value(x)) + "\n";
  }
  out.write("wannier.csv", wcsv);

  std::string pcsv = "p_hbar_per_a,chi_tilde_sqrt_a\n";
  const double window = c.output.momentum_window * eprl::kPi;
  const double dp = 2.0 * eprl::kPi / (4.0 * res);
  for (double p = -window; p <= window + 1e-12; p += dp) pcsv += num(p) + "," + num(w.momentum_amplitude(p)) + "\n";
  out.write("wannier_momentum.csv", pcsv);

  const eprl::HoppingResult h = eprl::hopping_exact(s);
  const eprl::GaussianApprox g = eprl::gaussian_approx(w);
  json r;
  r["U0_E_rec"] = depth;
  r["n_planewaves"] = s.n_planewaves;
  r["convergence_residual_E_rec"] = s.convergence_residual;
  r["V_hop_E_rec"] = h.hop;
  r["V_hop_next_nearest_E_rec"] = h.next_nearest;
  r["center_energy_E_rec"] = h.center_energy;
  r["bandwidth_E_rec"] = h.bandwidth;
  r["truncation_error"] = h.truncation_error;
  r["valid"] = h.valid;
  r["V_hop_approx_E_rec"] = -eprl::hopping_approx(depth);
  r["V_hop_gaussian_E_rec"] = depth > 0.0 ? eprl::gaussian_hopping(depth) : 0.0;
  r["wannier_rms_a"] = w.width();
  r["gaussian_sigma_a"] = g.sigma;
  r["gaussian_fidelity"] = g.fidelity;
  out.write("hopping.json", r.dump(2) + "\n");
  log << fmt::format("U0 = {:.4g}: V_hop = {:.6g}, V_B = {:.6g} E_rec\n", depth, h.hop, h.bandwidth);
}

void cmd_liddi_scan(const ExperimentConfig& c, const RunOptions&, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const eprl::PhysicalParams& p = d.physical;
  const double omega = p.transition_freq_coupling - p.detuning_coupling;
  const double alpha = eprl::polarizability(p.dipole_coupling, p.transition_freq_coupling, omega);
  const double vc = eprl::coupling_strength(alpha, p.lambda_coupling, p.intensity_coupling);
  const eprl::LiddiField field = eprl::LiddiField::from(p.lambda_coupling, vc);
  const double erec = d.model.recoil_energy;

  std::string csv = "l_nm,kl,vdd_nearest_E_rec,vdd_full_E_rec,relative_difference,nearest_valid\n";
  const double lmax = p.lambda_lattice / 2.0;
  const int points = 40;
  for (int i = 1; i < points; ++i) {
    const double l = lmax * i / points;
    const eprl::VddNearest near = eprl::vdd_nearest(vc, p.lambda_coupling, l);
    const double full = field.potential(l, eprl::kPi / 2.0);
    csv += fmt::format("{},{},{},{},{},{}\n", num(l * 1e9), num(field.k * l), num(near.value / erec),
                       num(full / erec), num(std::abs(near.value - full) / std::abs(full)), near.valid ? 1 : 0);
  }
  out.write("liddi_scan.csv", csv);

  const int range = 6;
  const eprl::VddMap map = eprl::vdd_map(field, p.lattice_shift, d.model.lattice_constant, range);
  std::string mcsv = "offset_sites,R_nm,V_E_rec\n";
  for (std::size_t i = 0; i < map.offsets.size(); ++i) {
    const double ja = map.offsets[i] * d.model.lattice_constant;
    mcsv += fmt::format("{},{},{}\n", map.offsets[i], num(std::hypot(p.lattice_shift, ja) * 1e9),
                        num(map.energies[i] / erec));
  }
  out.write("vdd_map.csv", mcsv);

  json r;
  r["l_nm"] = p.lattice_shift * 1e9;
  r["coupling_strength_J"] = vc;
  r["V_dd_nearest_E_rec"] = eprl::vdd_nearest(vc, p.lambda_coupling, p.lattice_shift).value / erec;
  r["V_dd_full_E_rec"] = map.at(0) / erec;
  r["offsite_truncation_ratio"] = map.truncation_ratio;
  out.write("liddi.json", r.dump(2) + "\n");
  log << fmt::format("V_dd(l = {:.4g} nm) = {:.6g} E_rec, off-site sum / on-site = {:.3g}\n", p.lattice_shift * 1e9,
                     map.at(0) / erec, map.truncation_ratio);
}

void cmd_spectrum(const ExperimentConfig& c, const RunOptions&, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const eprl::SpectrumResult s = spectrum_for(c, d);
  const bool periodic = d.model.boundary == eprl::Boundary::periodic;

  std::string csv = "index,energy_E_rec,diagonal_weight,near_diagonal_weight,diatom_band\n";
  for (int n = 0; n < s.size(); ++n) {
    const eprl::TwoAtomState st = s.state(n);
    const bool in_band = s.diatom_band.count > 0 && n >= s.diatom_band.first &&
                         n < s.diatom_band.first + s.diatom_band.count;
    csv += fmt::format("{},{},{},{},{}\n", n, num(s.eigenvalues(n)), num(eprl::diagonal_weight(st)),
                       num(eprl::band_weight(st, 1, periodic)), in_band ? 1 : 0);
  }
  out.write("spectrum.csv", csv);

  if (periodic && s.diatom_band.count > 0 && s.complete) {
    const eprl::DiatomDispersion disp = eprl::diatom_dispersion(s);
    std::string dcsv = "K_hbar_per_a,energy_E_rec\n";
    for (std::size_t i = 0; i < disp.K.size(); ++i) dcsv += num(disp.K[i]) + "," + num(disp.energy[i]) + "\n";
    out.write("diatom_dispersion.csv", dcsv);
  }

  json r;
  r["sites"] = c.model.sites;
  r["boundary"] = std::string(eprl::to_string(d.model.boundary));
  r["external"] = std::string(to_string(c.model.external));
  r["V_hop_E_rec"] = d.model.hop;
  r["V_dd_E_rec"] = d.model.vdd;
  r["complete"] = s.complete;
  r["states"] = s.size();
  r["pair_min_E_rec"] = s.pair_min;
  r["pair_max_E_rec"] = s.pair_max;
  r["diatom_band"] = band_json(s.diatom_band);
  if (d.model.vdd != 0.0) r["diatom_width_predicted_E_rec"] = 4.0 * std::abs(eprl::diatom_hopping(d.model.hop, d.model.vdd));
  r["max_residual"] = s.max_residual;
  r["norm_bound"] = s.norm_bound;
  out.write("spectrum.json", r.dump(2) + "\n");
  log << fmt::format("{} states, diatom band: {} states in [{:.6g}, {:.6g}] E_rec\n", s.size(), s.diatom_band.count,
                     s.diatom_band.lower, s.diatom_band.upper);
}

void cmd_dist(const ExperimentConfig& c, const RunOptions& o, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const eprl::MixedState state = c.dist.state == DistState::prepared
                                     ? state_for(c, d, eprl::SpectrumResult{})
                                     : state_for(c, d, spectrum_for(c, d));
  const eprl::WannierBasis w = eprl::wannier(eprl::bloch_spectrum(c.model.measurement_depth, d.band));
  const eprl::JointOptions jo = joint_options(c, resolution_of(c, o));
  const eprl::JointDistribution px = eprl::position_joint(state, w, jo);
  const eprl::JointDistribution pp = eprl::momentum_joint(state, w, jo);
  const double window = c.output.momentum_window * eprl::kPi;

  out.write("joint_position.dat", joint_block(px, "x"));
  out.write("joint_momentum.dat", joint_block(pp, "p", window));

  const double site = c.dist.conditional_site ? *c.dist.conditional_site : d.j0;
  out.write("conditional_position.csv", profile_csv(eprl::conditional(px, std::round(site), 1), "x2_a", "density_per_a"));
  out.write("conditional_momentum.csv", profile_csv(eprl::conditional(pp, 0.0, 1), "p2_hbar_per_a", "density_a_per_hbar"));
  out.write("marginal_position.csv", profile_csv(eprl::marginal(px, 1), "x_a", "density_per_a"));
  out.write("marginal_momentum.csv", profile_csv(eprl::marginal(pp, 1), "p_hbar_per_a", "density_a_per_hbar"));
  out.write("difference_position.csv", profile_csv(eprl::difference_marginal(px), "x1_minus_x2_a", "density_per_a"));
  out.write("sum_momentum.csv", profile_csv(eprl::sum_marginal(pp), "p1_plus_p2_hbar_per_a", "density_a_per_hbar"));

  const eprl::EprMetrics m = eprl::epr_metrics(px, pp);
  json r;
  r["state"] = std::string(to_string(c.dist.state));
  r["components"] = state.states.size();
  r["temperature_nK"] = c.protocol.temperature_nK;
  r["measurement_depth_E_rec"] = c.model.measurement_depth;
  r["wannier_rms_a"] = w.width();
  r["dx_minus_a"] = m.dx_minus;
  r["dp_plus_hbar_per_a"] = m.dp_plus;
  r["s"] = m.s;
  r["dx_minus_fit_a"] = m.dx_minus_fit;
  r["dx_minus_marginal_hwhm_a"] = m.dx_minus_marginal_hwhm;
  r["dp_plus_fit_hbar_per_a"] = m.dp_plus_fit;
  r["peak_spacing_x_a"] = m.peak_spacing_x;
  r["peak_spacing_p_hbar_per_a"] = m.peak_spacing_p;
  r["correlation_x"] = eprl::correlation(px);
  r["correlation_p_zone"] = eprl::correlation(pp, eprl::kPi);
  r["total_position"] = px.total();
  r["total_momentum"] = pp.total();
  out.write("metrics.json", r.dump(2) + "\n");
  log << fmt::format("dx_minus = {:.6g} a, dp_plus = {:.6g} hbar/a, s = {:.6g}\n", m.dx_minus, m.dp_plus, m.s);
}

void cmd_protocol(const ExperimentConfig& c, const RunOptions&, OutputDir& out, std::ostream& log) {
  const Derived d = derive(c);
  const eprl::ModelParams& m = d.model;
  const int n = c.model.sites;
  if (n > c.model.dense_limit)
    throw eprl::DomainError(fmt::format("protocol needs the full spectrum: sites = {} exceeds dense_limit = {}", n,
                                        c.model.dense_limit));
  const eprl::TwoAtomHamiltonian h(n, m.hop, m.vdd, c.protocol.boundary,
                                   eprl::ExternalPotential::linear(c.protocol.slope, d.j0));
  const eprl::SpectrumResult s = eprl::diagonalize(h);
  const eprl::InitialState init = eprl::initial_state(c.protocol.sigma_E, d.j0, n);
  for (const std::string& warn : init.warnings) log << "warning: " << warn << "\n";

  std::vector<double> times;
  for (double t : c.protocol.times_s) times.push_back(m.seconds_to_time(t));
  const eprl::ProtocolTrace trace = eprl::evolve(init.state, s, times);

  std::string csv =
      "time_s,time_hbar_per_E_rec,diagonal_weight,diatom_mass,single_mass,diatom_centroid_site,"
      "single_centroid_site,displacement_ratio,energy_E_rec\n";
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const eprl::SeparationDiagnostics& g = trace.diagnostics[i];
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(c.protocol.times_s[i]), num(trace.times[i]),
                       num(g.diagonal_weight), num(g.diatom_mass), num(g.single_mass), opt(g.diatom_centroid),
                       opt(g.single_centroid), opt(eprl::displacement_ratio(g, d.j0)), num(trace.energies[i]));
    out.write(fmt::format("snapshot_{}.dat", i), site_block(trace.states[i]));
  }
  out.write("diagnostics.csv", csv);

  // Ejection line: twice the diatom Bloch amplitude downhill of j0.
  const double hop2 = m.vdd != 0.0 ? eprl::diatom_hopping(m.hop, m.vdd) : 0.0;
  const double reach = c.protocol.slope != 0.0 ? 4.0 * std::abs(hop2) / (2.0 * std::abs(c.protocol.slope)) : 0.0;
  const double downhill = c.protocol.slope >= 0.0 ? -1.0 : 1.0;
  const double line = c.protocol.ejection_line ? *c.protocol.ejection_line : d.j0 + downhill * 2.0 * reach;
  const eprl::Region keep = downhill < 0 ? eprl::Region{line, 1e300} : eprl::Region{-1e300, line};
  const eprl::SeparationDiagnostics& last = trace.diagnostics.back();
  const eprl::PostSelection post = eprl::postselect_diatoms(trace.states.back(), keep);

  json r;
  r["sites"] = n;
  r["boundary"] = std::string(eprl::to_string(c.protocol.boundary));
  r["sigma_E_a"] = c.protocol.sigma_E;
  r["j0"] = d.j0;
  r["slope_E_rec_per_site"] = c.protocol.slope;
  r["V_hop_E_rec"] = m.hop;
  r["V_dd_E_rec"] = m.vdd;
  r["initial_diagonal_weight"] = eprl::diagonal_weight(init.state);
  r["expected_pair_fraction"] = 1.0 / (2.0 * std::sqrt(eprl::kPi) * c.protocol.sigma_E);
  r["tail_mass"] = init.tail_mass;
  r["ejection_line_site"] = line;
  r["single_crossed_ejection_line"] =
      last.single_centroid.has_value() && (downhill < 0 ? *last.single_centroid < line : *last.single_centroid > line);
  r["retained_pair_mass"] = post.retained_mass;
  r["max_norm_error"] = trace.max_norm_error;
  r["max_energy_drift"] = trace.max_energy_drift;
  r["warnings"] = init.warnings;
  out.write("protocol.json", r.dump(2) + "\n");
  log << fmt::format("{} snapshots, final diagonal weight {:.4g}, retained pair mass {:.4g}\n", trace.times.size(),
                     last.diagonal_weight, post.retained_mass);
}

SweepRow sweep_point(const ExperimentConfig& config, const std::string& parameter, double value, int resolution) {
  SweepRow row;
  row.value = value;
  try {
    const ExperimentConfig c = with_parameter(config, parameter, value);
    const Derived d = derive(c);
    row.depth = d.model.lattice_depth;
    row.hop = d.model.hop;
    row.vdd = d.model.vdd;
    const eprl::SpectrumResult s = spectrum_for(c, d);
    row.diatom_count = s.diatom_band.count;
    row.diatom_lower = s.diatom_band.lower;
    row.diatom_upper = s.diatom_band.upper;
    row.pair_min = s.pair_min;
    row.pair_max = s.pair_max;
    row.energies.assign(s.eigenvalues.data(), s.eigenvalues.data() + s.size());
    row.has_spectrum = true;
    const eprl::MixedState state = state_for(c, d, s);
    const eprl::WannierBasis w = eprl::wannier(eprl::bloch_spectrum(c.model.measurement_depth, d.band));
    const eprl::JointOptions jo = joint_options(c, resolution);
    const eprl::EprMetrics m = eprl::epr_metrics(eprl::position_joint(state, w, jo), eprl::momentum_joint(state, w, jo));
    row.dx_minus = m.dx_minus;
    row.dp_plus = m.dp_plus;
    row.s = m.s;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, int resolution, int jobs) {
  const std::vector<double> grid = sweep_grid(config.sweep);
  std::vector<SweepRow> rows(grid.size());
  if (grid.empty()) return rows;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++)
      rows[i] = sweep_point(config, config.sweep.parameter, grid[i], resolution);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
  std::string csv = parameter +
                    ",status,error,U0_E_rec,V_hop_E_rec,V_dd_E_rec,diatom_count,diatom_lower_E_rec,diatom_upper_E_rec,"
                    "pair_min_E_rec,pair_max_E_rec,dx_minus_a,dp_plus_hbar_per_a,s\n";
  for (const SweepRow& r : rows) {
    const bool ok = r.error.empty();
    csv += fmt::format("{},{},{},", num(r.value), ok ? "ok" : "error", csv_field(r.error));
    if (r.has_spectrum)
      csv += fmt::format("{},{},{},{},{},{},{},{}", num(r.depth), num(r.hop), num(r.vdd), r.diatom_count,
                         num(r.diatom_lower), num(r.diatom_upper), num(r.pair_min), num(r.pair_max));
    else
      csv += ",,,,,,,";
    csv += ok ? fmt::format(",{},{},{}\n", num(r.dx_minus), num(r.dp_plus), num(r.s)) : ",,,\n";
  }
  return csv;
}

std::string sweep_spectrum_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
  std::string csv = parameter + ",index,energy_E_rec\n";
  for (const SweepRow& r : rows)
    for (std::size_t n = 0; n < r.energies.size(); ++n) csv += fmt::format("{},{},{}\n", num(r.value), n, num(r.energies[n]));
  return csv;
}

void cmd_sweep(const ExperimentConfig& c, const RunOptions& o, OutputDir& out, std::ostream& log) {
  const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::vector<SweepRow> rows = run_sweep(c, resolution_of(c, o), jobs);
  out.write("sweep.csv", sweep_csv(c.sweep.parameter, rows));
  out.write("sweep_spectrum.csv", sweep_spectrum_csv(c.sweep.parameter, rows));
  std::size_t failed = 0;
  for (const SweepRow& r : rows) failed += r.error.empty() ? 0 : 1;
  log << fmt::format("{} points ({} failed) over {}\n", rows.size(), failed, c.sweep.parameter);
}

}  // namespace eprlat
