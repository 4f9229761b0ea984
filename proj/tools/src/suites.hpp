#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "solgas/enumeration.hpp"
#include "solgas/hierarchy.hpp"

namespace solgas::cli {

struct SuiteRow {
  std::string suite;
  std::string label;
  ResidualReport report;
  std::string metric;  // quantity compared against the threshold
  double value = 0.0;
  bool at_most = true;  // pass when value <= threshold, otherwise value >= threshold
  double threshold = 0.0;

  bool pass() const { return at_most ? value <= threshold : value >= threshold; }
};

// Expands "all" into every suite.
std::vector<SuiteRow> run_suite(const RunConfig& config, const EnumerationOptions& options);

}  // namespace solgas::cli
