#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solgas/correspondence.hpp"
#include "solgas/geometry.hpp"
#include "solgas/soliton.hpp"

namespace solgas::cli {

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string> kCommands = {"tau",    "gas", "correspond", "limit-study",
                                                   "verify", "nmm", "observables"};
inline const std::vector<std::string> kSuites = {"toda-chain", "toda-u",   "kp",          "residue",
                                                 "boundary",   "oracles",  "reassembly",  "thermo",
                                                 "identity",   "all"};

struct RunConfig {
  std::string command;
  std::string hierarchy = "toda";
  std::string geometry;  // empty: the natural geometry of the hierarchy
  std::optional<std::size_t> n;
  std::vector<Complex> lattice;
  std::uint64_t seed = 0;
  std::optional<int> m;
  double beta = 2.0;
  double mu = 0.0;
  double radius = 0.5;
  int max_order = 3;
  double confining = 0.1;  // U(z) = confining * |z|^2
  std::optional<int> fixed_charge;
  std::vector<std::pair<std::string, Complex>> times;  // "t2" -> value, "tbar1" -> value
  double time_scale = 0.1;
  double step = 0.0;
  std::vector<double> radii = {1e-2, 1e-3, 1e-4};
  std::size_t points = 128;
  std::string suite = "all";
  std::size_t trials = 3;
  std::optional<double> tolerance;
  std::string density_path;
  std::string output;
  bool deterministic = false;
  unsigned workers = 0;
};

// "1.5", "-2i", "0.3-0.1i", "1e-3+2e-2i".
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

// Header row "x,y" then one site per row.
std::vector<Complex> read_lattice_csv(const std::string& path);
// Comma or whitespace separated complex numbers.
std::vector<Complex> parse_lattice_list(std::string_view text);

RunConfig load_config(const std::string& path);

// Rejects bad parameters before any computation; throws solgas errors.
void validate(const RunConfig& config);

BoundaryGeometry make_geometry(const RunConfig& config);
HierarchyKind hierarchy_of(const RunConfig& config);
std::string geometry_label(const RunConfig& config);
// Sites from the config or, failing that, `n` random ones drawn with the seed.
std::vector<Complex> resolve_lattice(const RunConfig& config);
TimesVector resolve_times(const RunConfig& config, HierarchyKind kind);
CorrespondenceSpec make_spec(const RunConfig& config);

}  // namespace solgas::cli
