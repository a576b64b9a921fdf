#include "dilatsim/commands.hpp"
#include "dilatsim/errors.hpp"
#include "dilatsim/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "Config file (sectioned key = value)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", opts.overrides,
                  "Override a config entry: section.key=value (repeatable)");
  cmd->add_option("-o,--output", opts.output_dir, "Output directory");
}

dilatsim::RunConfig build_config(const CommonOptions& opts) {
  dilatsim::RunConfig config = opts.config_path.empty()
                                   ? dilatsim::RunConfig()
                                   : dilatsim::RunConfig::from_file(opts.config_path);
  for (const std::string& ov : opts.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw dilatsim::ConfigError("override must look like section.key=value, got '" +
                                  ov + "'");
    config.set(ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (!opts.output_dir.empty()) config.set("output.directory", opts.output_dir);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dilatation-transform laboratory: electron gas vs ion-trap simulator"};
  app.set_version_flag("--version", dilatsim::kVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string species, mass_ratio, charge;

  CLI::App* map = app.add_subcommand("map", "Derive the dilatation map");
  add_common(map, opts);
  map->add_option("--species", species, "Ion species (e.g. Ca40+)");
  map->add_option("--mass-ratio", mass_ratio, "Ion/electron mass ratio");
  map->add_option("--charge", charge, "Ionization degree Q");

  CLI::App* evolve = app.add_subcommand("evolve", "Propagate and export the trajectory");
  add_common(evolve, opts);
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Record an observable and extract Bohr peaks");
  add_common(spectrum, opts);
  CLI::App* qpe = app.add_subcommand("qpe", "Phase-estimation readout on the simulator");
  add_common(qpe, opts);
  CLI::App* verify =
      app.add_subcommand("verify", "Run the mapping verification suite");
  add_common(verify, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return dilatsim::kExitConfigError;
  }

  try {
    if (!species.empty()) opts.overrides.push_back("mapping.species=" + species);
    if (!mass_ratio.empty()) opts.overrides.push_back("mapping.mass_ratio=" + mass_ratio);
    if (!charge.empty()) opts.overrides.push_back("mapping.charge=" + charge);
    const dilatsim::RunConfig config = build_config(opts);

    if (map->parsed()) return dilatsim::cmd_map(config, std::cout, std::cerr);
    if (evolve->parsed()) return dilatsim::cmd_evolve(config, std::cout, std::cerr);
    if (spectrum->parsed()) return dilatsim::cmd_spectrum(config, std::cout, std::cerr);
    if (qpe->parsed()) return dilatsim::cmd_qpe(config, std::cout, std::cerr);
    if (verify->parsed()) return dilatsim::cmd_verify(config, std::cout, std::cerr);
  } catch (const dilatsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dilatsim::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return dilatsim::kExitConfigError;
}
