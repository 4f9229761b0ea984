#pragma once

#include <yaml-cpp/yaml.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "config.hpp"
#include "io.hpp"

namespace solgas::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kVerificationFailed = 2 };

struct RunOutput {
  int exit_code = kOk;
  YAML::Node report;
  std::optional<Table> table;
};

// Validates, then computes. Library errors propagate.
RunOutput run(const RunConfig& config);

// run() plus output files, stdout report and JSON diagnostics on stderr; returns the exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string diagnostic_json(std::string_view error_name, std::string_view message, int exit_code);

}  // namespace solgas::cli
