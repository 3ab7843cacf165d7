#include "eprlat/output.hpp"

#include <fstream>
#include <stdexcept>

#include <Eigen/Core>
#include <fmt/format.h>
#include <openssl/evp.h>
#include <json.hpp>

#include "eprlattice/parameters.hpp"

namespace eprlat {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name, const std::string& content) {
  const std::filesystem::path p = dir_ / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  if (!f) throw std::runtime_error("cannot write " + p.string());
  files_.push_back(name);
}

std::string joint_block(const eprl::JointDistribution& joint, const std::string& x_label, double window) {
  const bool momentum = joint.kind == eprl::DistKind::momentum;
  const std::string unit = momentum ? "hbar/a" : "a";
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "# {}1 [{}]  {}2 [{}]  density [{}^-2]\n", x_label, unit, x_label, unit,
                 unit);
  for (int i = 0; i < joint.axis1.count; ++i) {
    const double a = joint.axis1.at(i);
    if (std::abs(a) > window) continue;
    for (int k = 0; k < joint.axis2.count; ++k) {
      const double b = joint.axis2.at(k);
      if (std::abs(b) > window) continue;
      fmt::format_to(std::back_inserter(buf), "{} {} {}\n", num(a), num(b), num(joint.density(i, k)));
    }
    buf.push_back('\n');
  }
  return fmt::to_string(buf);
}

std::string profile_csv(const eprl::Profile& p, const std::string& x_label, const std::string& y_label) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{},{}\n", x_label, y_label);
  for (int i = 0; i < p.axis.count; ++i)
    fmt::format_to(std::back_inserter(buf), "{},{}\n", num(p.axis.at(i)), num(p.density[static_cast<std::size_t>(i)]));
  return fmt::to_string(buf);
}

std::string site_block(const eprl::TwoAtomState& state) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "# j [site]  l [site]  probability\n");
  const int n = state.site_count();
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l)
      fmt::format_to(std::back_inserter(buf), "{} {} {}\n", j, l, num(std::norm(state.amplitudes(j, l))));
    buf.push_back('\n');
  }
  return fmt::to_string(buf);
}

void write_manifest(OutputDir& out, const std::string& subcommand, const ExperimentConfig& config,
                    const RunOptions& options, double wall_seconds) {
  const std::string text = to_text(config);
  nlohmann::ordered_json m;
  m["tool"] = "eprlat";
  m["subcommand"] = subcommand;
  m["config_sha256"] = sha256_hex(text);
  m["effective_config"] = text;
  m["versions"] = {{"eprlat", EPRLAT_VERSION},
                   {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
                   {"fmt", FMT_VERSION},
                   {"compiler", __VERSION__}};
  m["flags"] = {{"jobs", options.jobs},
                {"resolution", options.resolution ? *options.resolution : config.output.resolution},
                {"seed", options.seed}};
  m["files"] = out.files();
  m["wall_time_s"] = wall_seconds;
  out.write("manifest.json", m.dump(2) + "\n");
}

}  // namespace eprlat
