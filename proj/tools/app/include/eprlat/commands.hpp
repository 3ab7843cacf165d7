#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "eprlat/config.hpp"
#include "eprlat/output.hpp"

namespace eprlat {

// Each subcommand writes its data files into `out`; the caller adds the manifest.
void cmd_params(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_bands(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_liddi_scan(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_spectrum(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_dist(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_protocol(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);
void cmd_sweep(const ExperimentConfig& config, const RunOptions& options, OutputDir& out, std::ostream& log);

struct SweepRow {
  double value = 0.0;
  std::string error;  // empty on success
  bool has_spectrum = false;  // spectrum columns valid even if a later stage failed
  double depth = 0.0, hop = 0.0, vdd = 0.0;
  int diatom_count = 0;
  double diatom_lower = 0.0, diatom_upper = 0.0;
  double pair_min = 0.0, pair_max = 0.0;
  double dx_minus = 0.0, dp_plus = 0.0, s = 0.0;
  std::vector<double> energies;  // two-atom eigenvalues, ascending
};

/// One grid point; failures are caught and stored in `error`.
SweepRow sweep_point(const ExperimentConfig& config, const std::string& parameter, double value, int resolution);
/// Evaluates the grid on `jobs` worker threads; rows come back in grid order.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, int resolution, int jobs);
std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows);
/// Long format: one (parameter, index, energy) line per eigenvalue.
std::string sweep_spectrum_csv(const std::string& parameter, const std::vector<SweepRow>& rows);

}  // namespace eprlat
