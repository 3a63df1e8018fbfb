// Command-line front end: netpolicy <stage2|nash|sweep|check> [--key value ...]

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netpolicy/cli.hpp"
#include "netpolicy/config.hpp"
#include "netpolicy/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cournot duopoly policy game with network externalities and R&D"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  app.add_option("--config", config_file, "key = value configuration file");

  const auto& keys = netpolicy::config_keys();
  std::vector<std::string> values(keys.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    options.push_back(app.add_option("--" + keys[i], values[i], "override " + keys[i]));
  }

  app.add_subcommand("stage2", "stage-2 equilibrium at one policy point");
  app.add_subcommand("nash", "Nash policy equilibrium and laissez-faire comparison");
  app.add_subcommand("sweep", "b-grid sweep written to CSV (and SVG with emit_plots)");
  app.add_subcommand("check", "invariant and property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : netpolicy::kExitValidation;
  }

  std::map<std::string, std::string> flags;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (options[i]->count() > 0) flags[keys[i]] = values[i];
  }

  netpolicy::RunConfig config;
  try {
    config = netpolicy::resolve_config(config_file, flags);
  } catch (const netpolicy::ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return netpolicy::kExitValidation;
  }
  return netpolicy::run_command(config, app.get_subcommands().front()->get_name(), std::cout,
                                std::cerr);
}
