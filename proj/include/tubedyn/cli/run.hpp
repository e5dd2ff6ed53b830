#pragma once

#include <iosfwd>

#include "tubedyn/cli/config.hpp"

namespace tubedyn::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kConfigFailure = 2,
  kDomainFailure = 3,
  kIoFailure = 4,
};

// Runs the subcommand and writes its CSV/text outputs plus manifest.json into
// config.output_dir. Throws ConfigError, DomainError / std::invalid_argument
// (module errors) or io::IoError.
void execute(const RunConfig& config);

// execute() with errors mapped to exit statuses and reported on `diagnostics`.
int run(const RunConfig& config, std::ostream& diagnostics);

}  // namespace tubedyn::cli
