#include "eprlat/cli.hpp"

#include <chrono>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "eprlat/commands.hpp"
#include "eprlat/config.hpp"
#include "eprlat/output.hpp"
#include "eprlattice/error.hpp"

namespace eprlat {

namespace {

using Command = std::function<void(const ExperimentConfig&, const RunOptions&, OutputDir&, std::ostream&)>;

struct Args {
  std::string config;
  std::string out;
  int jobs = 0;
  int resolution = 0;
  std::uint64_t seed = 0;
  std::string sweep_parameter;
  std::string sweep_range;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "INI configuration file")->required();
  sub->add_option("--out", a.out, "output directory (default: output.directory)");
  sub->add_option("--jobs", a.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  sub->add_option("--resolution", a.resolution, "position points per lattice cell (>= 16)");
  sub->add_option("--seed", a.seed, "recorded in the manifest");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-atom lattice EPR simulations", "eprlat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EPRLAT_VERSION);

  Args args;
  const std::vector<std::pair<std::string, Command>> commands{
      {"params", cmd_params},     {"bands", cmd_bands}, {"liddi-scan", cmd_liddi_scan}, {"spectrum", cmd_spectrum},
      {"dist", cmd_dist},         {"protocol", cmd_protocol}, {"sweep", cmd_sweep},
  };
  const std::map<std::string, std::string> help{
      {"params", "derived model parameters"},
      {"bands", "Bloch bands, Wannier function and hopping"},
      {"liddi-scan", "induced dipole-dipole interaction against the lattice offset l"},
      {"spectrum", "two-atom spectrum and diatom band"},
      {"dist", "joint position and momentum distributions and EPR metrics"},
      {"protocol", "time evolution in a tilted lattice"},
      {"sweep", "EPR metrics over a parameter grid"},
  };
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, args);
    if (name == "sweep") {
      sub->add_option("parameter", args.sweep_parameter, "parameter to vary (overrides sweep.parameter)");
      sub->add_option("range", args.sweep_range, "start:stop:steps (overrides the sweep section)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig config = load_config(args.config);
    if (name == "sweep" && !args.sweep_parameter.empty()) {
      if (args.sweep_range.empty()) throw ConfigError("command line", 0, "sweep needs a range start:stop:steps");
      config.sweep = parse_range(args.sweep_parameter, args.sweep_range);
      validate(config, "command line");
    }
    RunOptions options;
    options.out = args.out.empty() ? std::filesystem::path(config.output.directory) : std::filesystem::path(args.out);
    options.jobs = args.jobs;
    options.seed = args.seed;
    if (args.resolution != 0) {
      if (args.resolution < 16) throw ConfigError("command line", 0, "--resolution must be at least 16");
      options.resolution = args.resolution;
    }

    OutputDir dir(options.out);
    for (const auto& [cmd, fn] : commands)
      if (cmd == name) fn(config, options, dir, out);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir, name, config, options, wall);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eprl::DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eprl::NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace eprlat
