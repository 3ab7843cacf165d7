#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eprlat/config.hpp"
#include "eprlattice/distributions.hpp"
#include "eprlattice/two_atom.hpp"

namespace eprlat {

struct RunOptions {
  std::filesystem::path out;          // empty: config output.directory
  int jobs = 0;                       // 0: hardware concurrency
  std::optional<int> resolution;      // overrides output.resolution
  std::uint64_t seed = 0;             // reserved, recorded in the manifest
};

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Fixed-format number for data files: 12 significant digits.
std::string num(double v);

/// CSV field with quoting when needed.
std::string csv_field(const std::string& s);

/// Collects the files a subcommand writes so the manifest can list them.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  const std::filesystem::path& path() const { return dir_; }
  void write(const std::string& name, const std::string& content);
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

/// Gnuplot matrix block: one "x1 x2 value" line per grid point, blank line per x1.
std::string joint_block(const eprl::JointDistribution& joint, const std::string& x_label, double window = 1e300);

std::string profile_csv(const eprl::Profile& p, const std::string& x_label, const std::string& y_label);

/// Lattice-site joint |c_jl|^2 in the same block layout.
std::string site_block(const eprl::TwoAtomState& state);

void write_manifest(OutputDir& out, const std::string& subcommand, const ExperimentConfig& config,
                    const RunOptions& options, double wall_seconds);

}  // namespace eprlat
