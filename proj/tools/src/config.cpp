#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "io.hpp"
#include "solgas/errors.hpp"
#include "solgas/sampling.hpp"

namespace solgas::cli {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  if (s.empty()) throw ValidationError("malformed complex number '" + std::string(whole) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed complex number '" + std::string(whole) + "'");
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T scalar(const YAML::Node& node, const char* key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ValidationError(std::string("config key '") + key + "' has the wrong type");
  }
}

Complex complex_node(const YAML::Node& node) {
  if (node.IsSequence() && node.size() == 2) {
    return {scalar<double>(node[0], "complex"), scalar<double>(node[1], "complex")};
  }
  return parse_complex(scalar<std::string>(node, "complex"));
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ValidationError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  const std::string_view body(s.data(), s.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const std::string_view im = body;
    if (im.empty() || im == "+") return {0.0, 1.0};
    if (im == "-") return {0.0, -1.0};
    return {0.0, parse_real(im, text)};
  }
  const std::string_view re = body.substr(0, split), im = body.substr(split);
  const double imag = im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, text);
  return {parse_real(re, text), imag};
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  const std::string im = format_double(z.imag());
  if (im.front() != '-') out += '+';
  return out + im + "i";
}

std::vector<Complex> read_lattice_csv(const std::string& path) {
  const Table table = read_csv(path);
  const auto x = table.column("x"), y = table.column("y");
  std::vector<Complex> sites;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    sites.emplace_back(parse_double(table.rows[r][x]), parse_double(table.rows[r][y]));
  }
  return sites;
}

std::vector<Complex> parse_lattice_list(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<Complex> out;
  for (std::string tok; in >> tok;) out.push_back(parse_complex(tok));
  return out;
}

RunConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ValidationError("cannot read config '" + path + "': " + e.what());
  }
  if (!root.IsMap()) throw ValidationError("config root must be a mapping");
  RunConfig c;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "command") c.command = scalar<std::string>(v, "command");
    else if (key == "hierarchy") c.hierarchy = scalar<std::string>(v, "hierarchy");
    else if (key == "geometry") c.geometry = scalar<std::string>(v, "geometry");
    else if (key == "n") c.n = scalar<std::size_t>(v, "n");
    else if (key == "seed") c.seed = scalar<std::uint64_t>(v, "seed");
    else if (key == "m") c.m = scalar<int>(v, "m");
    else if (key == "beta") c.beta = scalar<double>(v, "beta");
    else if (key == "mu") c.mu = scalar<double>(v, "mu");
    else if (key == "radius") c.radius = scalar<double>(v, "radius");
    else if (key == "max_order") c.max_order = scalar<int>(v, "max_order");
    else if (key == "confining") c.confining = scalar<double>(v, "confining");
    else if (key == "fixed_charge") c.fixed_charge = scalar<int>(v, "fixed_charge");
    else if (key == "time_scale") c.time_scale = scalar<double>(v, "time_scale");
    else if (key == "step") c.step = scalar<double>(v, "step");
    else if (key == "points") c.points = scalar<std::size_t>(v, "points");
    else if (key == "suite") c.suite = scalar<std::string>(v, "suite");
    else if (key == "trials") c.trials = scalar<std::size_t>(v, "trials");
    else if (key == "tolerance") c.tolerance = scalar<double>(v, "tolerance");
    else if (key == "density") c.density_path = scalar<std::string>(v, "density");
    else if (key == "output") c.output = scalar<std::string>(v, "output");
    else if (key == "deterministic") c.deterministic = scalar<bool>(v, "deterministic");
    else if (key == "workers") c.workers = scalar<unsigned>(v, "workers");
    else if (key == "radii") {
      c.radii.clear();
      for (const auto& r : v) c.radii.push_back(scalar<double>(r, "radii"));
    } else if (key == "lattice") {
      // a CSV path, or an inline list of complex numbers
      if (v.IsScalar()) {
        c.lattice = read_lattice_csv(v.as<std::string>());
      } else {
        c.lattice.clear();
        for (const auto& z : v) c.lattice.push_back(complex_node(z));
      }
    } else if (key == "times") {
      if (!v.IsMap()) throw ValidationError("'times' must be a mapping such as {t1: 0.1+0.2i}");
      for (const auto& t : v) c.times.emplace_back(t.first.as<std::string>(), complex_node(t.second));
    } else {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  return c;
}

HierarchyKind hierarchy_of(const RunConfig& config) { return parse_hierarchy(config.hierarchy); }

std::string geometry_label(const RunConfig& config) {
  if (!config.geometry.empty()) return config.geometry;
  switch (hierarchy_of(config)) {
    case HierarchyKind::KP: return "half-plane";
    case HierarchyKind::BKP: return "quarter-plane";
    case HierarchyKind::Toda2D: return "disc";
  }
  return "free";
}

BoundaryGeometry make_geometry(const RunConfig& config) {
  const std::string g = geometry_label(config);
  if (g == "free") return BoundaryGeometry::free_plane();
  if (g == "half-plane") return BoundaryGeometry::half_plane();
  if (g == "quarter-plane") return BoundaryGeometry::quarter_plane();
  if (g == "disc") return BoundaryGeometry::disc_exterior(config.radius);
  if (g == "scale") return BoundaryGeometry::conformal_exterior(ConformalMap::scale(config.radius));
  if (g == "joukowski") return BoundaryGeometry::conformal_exterior(ConformalMap::joukowski_inverse());
  throw ValidationError("unknown geometry '" + g +
                        "' (free, half-plane, quarter-plane, disc, scale, joukowski)");
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw ValidationError("unknown command '" + c.command + "'");
  }
  if (std::find(kSuites.begin(), kSuites.end(), c.suite) == kSuites.end()) {
    throw ValidationError("unknown suite '" + c.suite + "'");
  }
  hierarchy_of(c);
  make_geometry(c);
  if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw RangeError("beta must be positive");
  if (!std::isfinite(c.mu)) throw RangeError("mu must be finite");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) throw RangeError("radius must be positive");
  if (c.max_order < 1 || c.max_order > kDefaultMaxOrder) {
    throw RangeError("max_order must lie in [1, " + std::to_string(kDefaultMaxOrder) + "]");
  }
  if (!(c.confining >= 0.0)) throw RangeError("confining coefficient must be nonnegative");
  if (!(c.time_scale >= 0.0)) throw RangeError("time_scale must be nonnegative");
  if (!(c.step >= 0.0)) throw RangeError("step must be nonnegative (0 selects the default)");
  if (c.points == 0 || !std::has_single_bit(c.points)) throw RangeError("points must be a power of two");
  if (c.trials == 0) throw RangeError("trials must be positive");
  if (c.tolerance && !(*c.tolerance >= 0.0)) throw RangeError("tolerance must be nonnegative");
  if (c.n && *c.n > kDefaultMaxSites) {
    throw SizeError("n = " + std::to_string(*c.n) + " exceeds " + std::to_string(kDefaultMaxSites));
  }
  if (c.lattice.size() > kDefaultMaxSites) throw SizeError("lattice exceeds enumeration bound");
  for (const double r : c.radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw RangeError("radii must be positive");
  }
  for (const auto& [name, value] : c.times) {
    const bool bar = name.rfind("tbar", 0) == 0;
    const std::string digits = name.substr(bar ? 4 : 1);
    int p = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (name.empty() || (name[0] != 't') || ec != std::errc() || ptr != digits.data() + digits.size() ||
        p < 1 || p > c.max_order) {
      throw ValidationError("time key '" + name + "' must be tP or tbarP with 1 <= P <= max_order");
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw RangeError("time '" + name + "' is not finite");
    }
  }
  const std::size_t sites = c.lattice.empty() ? c.n.value_or(6) : c.lattice.size();
  const bool sector_index = c.command == "limit-study" || c.command == "nmm" || c.command == "gas" ||
                            c.command == "observables";
  if (c.command == "nmm" && !c.density_path.empty()) {
    if (c.m && *c.m < 0) throw RangeError("m must be nonnegative");
  } else if (c.m && sector_index && (*c.m < 0 || static_cast<std::size_t>(*c.m) > sites)) {
    throw RangeError("m = " + std::to_string(*c.m) + " outside [0, N] with N = " + std::to_string(sites));
  }
  if (c.command == "limit-study") {
    if (c.radii.size() < 2) throw RangeError("limit-study needs at least two radii");
    if (hierarchy_of(c) != HierarchyKind::Toda2D) throw UnsupportedError("limit-study needs hierarchy toda");
  }
  if (c.command == "nmm" && c.density_path.empty() && c.lattice.empty() && !c.n) {
    throw ValidationError("nmm needs a density CSV, a lattice or n");
  }
}

std::vector<Complex> resolve_lattice(const RunConfig& config) {
  if (!config.lattice.empty()) return config.lattice;
  Rng rng(config.seed);
  return random_lattice(make_geometry(config), config.n.value_or(6), rng);
}

TimesVector resolve_times(const RunConfig& config, HierarchyKind kind) {
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  TimesVector t = config.time_scale > 0.0 ? random_times(kind, config.max_order, rng, config.time_scale)
                                          : TimesVector(config.max_order);
  for (const auto& [name, value] : config.times) {
    const bool bar = name.rfind("tbar", 0) == 0;
    const int p = std::stoi(name.substr(bar ? 4 : 1));
    if (bar) {
      t.set_tbar(p, value);
    } else {
      t.set_t(p, value);
    }
  }
  if (config.m) t.set_discrete_index(*config.m);
  return t;
}

CorrespondenceSpec make_spec(const RunConfig& config) {
  CorrespondenceSpec spec;
  spec.kind = hierarchy_of(config);
  const std::string g = geometry_label(config);
  const bool ok = (spec.kind == HierarchyKind::KP && g == "half-plane") ||
                  (spec.kind == HierarchyKind::BKP && g == "quarter-plane") ||
                  (spec.kind == HierarchyKind::Toda2D && (g == "disc" || g == "scale" || g == "joukowski"));
  if (!ok) {
    throw ValidationError("hierarchy " + config.hierarchy + " has no soliton correspondence on geometry " + g);
  }
  spec.lattice = resolve_lattice(config);
  spec.radius = config.radius;
  if (g == "scale") spec.map = ConformalMap::scale(config.radius);
  if (g == "joukowski") spec.map = ConformalMap::joukowski_inverse();
  spec.fixed_charge = config.fixed_charge;
  const double c = config.confining;
  spec.confining = [c](Complex z) { return c * std::norm(z); };
  spec.times = resolve_times(config, spec.kind);
  if (spec.kind != HierarchyKind::Toda2D) spec.mu = config.mu;
  validate_spec(spec);
  return spec;
}

}  // namespace solgas::cli
