#pragma once

#include <yaml-cpp/yaml.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace solgas::cli {

// Shortest text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  void add_row(std::vector<std::string> row);
};

// A "#schema_version,N" line, the header, then the rows.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(const std::string& path);
Table parse_csv(std::istream& in, const std::string& origin);

// Reports are YAML mappings whose first key is schema_version.
YAML::Node new_report(std::string_view command);
std::string emit_report(const YAML::Node& report);
YAML::Node read_report(const std::string& path);

void write_file(const std::string& path, std::string_view contents);
// Run metadata that is allowed to differ between identical runs.
std::string meta_json(std::string_view command, unsigned long long seed);

}  // namespace solgas::cli
