#include "io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "json.hpp"
#include "solgas/errors.hpp"

namespace solgas::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ValidationError("missing column '" + std::string(name) + "'");
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw ValidationError("row width does not match header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& table) {
  out << "#schema_version," << kSchemaVersion << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table parse_csv(std::istream& in, const std::string& origin) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      const auto cells = split(line.substr(1));
      if (cells.size() == 2 && cells[0] == "schema_version" && cells[1] != std::to_string(kSchemaVersion)) {
        throw ValidationError(origin + ": unsupported schema version " + cells[1]);
      }
      continue;
    }
    if (!have_header) {
      t.columns = split(line);
      have_header = true;
    } else {
      auto cells = split(line);
      if (cells.size() != t.columns.size()) {
        throw ValidationError(origin + ": row has " + std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(t.columns.size()));
      }
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw ValidationError(origin + ": no header row");
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return parse_csv(in, path);
}

YAML::Node new_report(std::string_view command) {
  YAML::Node r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = std::string(command);
  return r;
}

std::string emit_report(const YAML::Node& report) {
  YAML::Emitter out;
  out << report;
  return std::string(out.c_str()) + "\n";
}

YAML::Node read_report(const std::string& path) {
  YAML::Node r;
  try {
    r = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ValidationError("cannot read report '" + path + "': " + e.what());
  }
  if (!r["schema_version"] || r["schema_version"].as<int>() != kSchemaVersion) {
    throw ValidationError(path + ": missing or unsupported schema_version");
  }
  return r;
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << contents;
}

std::string meta_json(std::string_view command, unsigned long long seed) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["unix_time"] = secs;
  j["tool_version"] = "0.1.0";
  return j.dump(2) + "\n";
}

}  // namespace solgas::cli
