#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "g2/cli/config.hpp"

namespace g2::cli {

enum ExitCode : int { kExitOk = 0, kExitTolerance = 1, kExitConfig = 2 };

struct Outcome {
  int exit_code = kExitOk;
  std::string status;
  json summary;
  std::vector<std::string> artifacts;  ///< file names relative to the output directory
};

/// Library and toolchain versions recorded in every manifest.
json versions();

/// Executes a resolved config: writes the command's artifacts and
/// manifest.json into the output directory and prints the summary JSON to
/// `out`. Library failures at run time are reported in the manifest with
/// status "error" and exit code 1; configuration problems surface earlier, from
/// parse_config.
Outcome run(const RunConfig& config, std::ostream& out);

/// Re-executes the config echoed by a manifest, optionally into another
/// directory.
Outcome rerun_from_manifest(const std::string& manifest_path, const std::optional<std::string>& output_dir,
                            std::ostream& out);

}  // namespace g2::cli
