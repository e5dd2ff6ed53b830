#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tubedyn/cli/config.hpp"
#include "tubedyn/cli/run.hpp"

namespace {

std::string parameter_help() {
  std::string out = "\nParameters (set with --set name=value or in the config file):\n";
  for (const auto& name : tubedyn::cli::subcommands()) {
    out += name + ":\n" + tubedyn::cli::describe_parameters(name);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamo analysis of magnetic flux tubes and filaments"};
  app.footer(parameter_help());

  std::string subcommand;
  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> assignments;

  std::string choices;
  for (const auto& name : tubedyn::cli::subcommands()) choices += (choices.empty() ? "" : "|") + name;
  app.add_option("subcommand", subcommand, choices + " (overrides the config file)");
  app.add_option("-c,--config", config_path, "JSON config file");
  app.add_option("-o,--out", output_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--set", assignments, "parameter override name=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tubedyn::cli::kConfigFailure;
  }

  std::string raw;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "config error: cannot read " << config_path << "\n";
      return tubedyn::cli::kConfigFailure;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    raw = buffer.str();
  }

  tubedyn::cli::Overrides overrides;
  if (!subcommand.empty()) overrides.subcommand = subcommand;
  if (!output_dir.empty()) overrides.output_dir = output_dir;
  if (seed_opt->count() > 0) overrides.seed = seed;
  overrides.assignments = assignments;

  tubedyn::cli::RunConfig config;
  try {
    config = tubedyn::cli::validate_config(raw, overrides);
  } catch (const tubedyn::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return tubedyn::cli::kConfigFailure;
  }
  const int status = tubedyn::cli::run(config, std::cerr);
  if (status == tubedyn::cli::kSuccess) {
    std::cout << config.subcommand << ": wrote " << config.output_dir.string() << "\n";
  }
  return status;
}
