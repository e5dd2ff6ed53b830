#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tubedyn::cli {

// Parse or validation failure. `key_path` names the offending key
// ("parameters.eta", "parameters.cases[1].boundary", ...).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(message), key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

const std::vector<std::string>& subcommands();

struct RunConfig {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();  // every default materialized
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;

  // The manifest: feeding its dump back to validate_config reproduces this config.
  nlohmann::json to_json() const;
};

// Command-line values; they win over the config file.
struct Overrides {
  std::optional<std::string> subcommand;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  // name=value assignments into `parameters`; values are parsed as JSON,
  // falling back to a plain string.
  std::vector<std::string> assignments;
};

// Parses a JSON document of the form
//   {"subcommand": ..., "seed": ..., "output_dir": ..., "parameters": {...}}
// (all keys optional, empty text allowed), applies overrides, rejects unknown
// keys and out-of-range values, and materializes every default.
RunConfig validate_config(const std::string& raw, const Overrides& overrides = {});

// Parameter table of one subcommand, one line per key, for --help output.
std::string describe_parameters(const std::string& subcommand);

}  // namespace tubedyn::cli
