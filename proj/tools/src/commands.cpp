#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "solgas/correspondence.hpp"
#include "solgas/errors.hpp"
#include "solgas/gas.hpp"
#include "solgas/matrix_model.hpp"
#include "suites.hpp"

namespace solgas::cli {

namespace {

std::string num(double v) { return format_double(v); }

YAML::Node tau_node(const TauValue& v) {
  YAML::Node n;
  n["zero"] = v.is_zero();
  if (v.is_zero()) return n;
  n["log_magnitude"] = num(v.log_magnitude());
  n["phase"] = format_complex(v.phase_factor());
  n["value"] = format_complex(v.value());
  return n;
}

YAML::Node residual_node(const ResidualReport& r) {
  YAML::Node n;
  n["method"] = r.method;
  n["residual"] = num(r.residual);
  n["scale"] = num(r.scale);
  n["relative"] = num(r.relative);
  YAML::Node params;
  for (const auto& [k, v] : r.parameters) params[k] = num(v);
  if (!r.parameters.empty()) n["parameters"] = params;
  return n;
}

EnumerationOptions enumeration(const RunConfig& c) {
  EnumerationOptions o;
  o.deterministic = c.deterministic;
  o.workers = c.deterministic ? 1 : c.workers;
  return o;
}

ConfiningPotential quadratic(double c) {
  return [c](Complex z) { return c * std::norm(z); };
}

void describe(YAML::Node& r, const RunConfig& c, std::size_t sites) {
  r["hierarchy"] = c.hierarchy;
  r["geometry"] = geometry_label(c);
  r["sites"] = sites;
  r["seed"] = c.seed;
  r["deterministic"] = c.deterministic;
}

Table sector_table(const std::vector<TauValue>& values) {
  Table t{{"n", "log_magnitude", "re", "im"}, {}};
  for (std::size_t k = 0; k < values.size(); ++k) {
    const TauValue& v = values[k];
    const Complex z = v.is_zero() ? Complex(0.0) : v.value();
    t.add_row({std::to_string(k), v.is_zero() ? "-inf" : num(v.log_magnitude()), num(z.real()), num(z.imag())});
  }
  return t;
}

RunOutput tau(const RunConfig& c) {
  const CorrespondenceSpec spec = make_spec(c);
  const SolitonSystem system = build_soliton_system(spec);
  RunOutput out{kOk, new_report("tau"), std::nullopt};
  describe(out.report, c, spec.lattice.size());
  out.report["m"] = spec.times.discrete_index();
  out.report["tau"] = tau_node(tau_hirota(system, spec.times, enumeration(c)));
  Table t{{"i", "x", "y", "a_re", "a_im", "b_re", "b_im"}, {}};
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& p = system.momenta()[i];
    t.add_row({std::to_string(i), num(spec.lattice[i].real()), num(spec.lattice[i].imag()), num(p.a.real()),
               num(p.a.imag()), num(p.b.real()), num(p.b.imag())});
  }
  out.table = std::move(t);
  return out;
}

LatticeGas plain_gas(const RunConfig& c) {
  // m counts particles here, so the times carry no discrete index
  TimesVector times = resolve_times(c, hierarchy_of(c));
  times.set_discrete_index(0);
  return LatticeGas(resolve_lattice(c), make_geometry(c), c.beta, c.mu, quadratic(c.confining), times);
}

RunOutput gas(const RunConfig& c) {
  const LatticeGas g = plain_gas(c);
  const auto opts = enumeration(c);
  RunOutput out{kOk, new_report("gas"), std::nullopt};
  describe(out.report, c, g.size());
  out.report["beta"] = num(c.beta);
  out.report["mu"] = num(c.mu);
  out.report["grand_partition"] = tau_node(grand_partition(g, opts));
  const auto sectors = sector_decomposition(g, opts);
  if (c.m) out.report["canonical_partition"] = tau_node(sectors.values[static_cast<std::size_t>(*c.m)]);
  out.table = sector_table(sectors.values);
  return out;
}

RunOutput correspond(const RunConfig& c) {
  const CorrespondenceSpec spec = make_spec(c);
  const auto opts = enumeration(c);
  const TauValue tau = tau_hirota(build_soliton_system(spec), spec.times, opts);
  const TauValue z = grand_partition(build_gas(spec), opts);
  const double rel = relative_difference(tau, z);
  const double tol = c.tolerance.value_or(1e-11);
  RunOutput out{rel <= tol ? kOk : kVerificationFailed, new_report("correspond"), std::nullopt};
  describe(out.report, c, spec.lattice.size());
  out.report["tau"] = tau_node(tau);
  out.report["grand_partition"] = tau_node(z);
  out.report["check"] = residual_node(make_report(std::abs(rel), 1.0, "relative-difference"));
  out.report["threshold"] = num(tol);
  out.report["pass"] = rel <= tol;
  return out;
}

RunOutput limit_study(const RunConfig& c) {
  CorrespondenceSpec spec = make_spec(c);
  if (!c.m) spec.times.set_discrete_index(1);
  const auto study = r_limit_study(spec, c.radii, enumeration(c));
  RunOutput out{kOk, new_report("limit-study"), std::nullopt};
  describe(out.report, c, spec.lattice.size());
  out.report["m"] = study.m;
  out.report["surviving_sector"] = study.surviving_sector;
  out.report["limit"] = tau_node(study.limit);
  out.report["fitted_order"] = num(study.fitted_order);
  Table t{{"radius", "deviation", "ratio", "normalized_re", "normalized_im"}, {}};
  for (std::size_t k = 0; k < study.rows.size(); ++k) {
    const auto& row = study.rows[k];
    const double ratio = k == 0 ? std::nan("") : row.deviation / study.rows[k - 1].deviation;
    const Complex v = row.normalized_tau.is_zero() ? Complex(0.0) : row.normalized_tau.value();
    t.add_row({num(row.radius), num(row.deviation), num(ratio), num(v.real()), num(v.imag())});
  }
  out.table = std::move(t);
  return out;
}

RunOutput verify(const RunConfig& c) {
  const auto rows = run_suite(c, enumeration(c));
  RunOutput out{kOk, new_report("verify"), std::nullopt};
  out.report["suite"] = c.suite;
  out.report["seed"] = c.seed;
  out.report["sites"] = c.n.value_or(6);
  Table t{{"suite", "case", "method", "residual", "scale", "relative", "metric", "value", "comparison", "threshold",
           "pass"},
          {}};
  std::size_t failures = 0;
  YAML::Node failing(YAML::NodeType::Sequence);
  for (const auto& row : rows) {
    t.add_row({row.suite, row.label, row.report.method, num(row.report.residual), num(row.report.scale),
               num(row.report.relative), row.metric, num(row.value), row.at_most ? "<=" : ">=", num(row.threshold),
               row.pass() ? "1" : "0"});
    if (!row.pass()) {
      ++failures;
      YAML::Node f = residual_node(row.report);
      f["suite"] = row.suite;
      f["case"] = row.label;
      f["metric"] = row.metric;
      f["value"] = num(row.value);
      f["threshold"] = num(row.threshold);
      failing.push_back(f);
    }
  }
  out.report["checks"] = rows.size();
  out.report["failures"] = failures;
  out.report["failing"] = failing;
  out.table = std::move(t);
  out.exit_code = failures == 0 ? kOk : kVerificationFailed;
  return out;
}

GriddedDensity density_from_csv(const std::string& path) {
  const Table t = read_csv(path);
  const auto cx = t.column("x"), cy = t.column("y"), cd = t.column("density");
  std::vector<double> xs, ys;
  std::vector<std::tuple<double, double, double>> cells;
  for (const auto& r : t.rows) {
    cells.emplace_back(parse_double(r[cx]), parse_double(r[cy]), parse_double(r[cd]));
    xs.push_back(std::get<0>(cells.back()));
    ys.push_back(std::get<1>(cells.back()));
  }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(xs);
  uniq(ys);
  if (xs.size() < 2 || ys.size() < 2 || xs.size() * ys.size() != cells.size()) {
    throw ValidationError(path + ": density must be a complete rectangular grid of cell centres");
  }
  GriddedDensity g;
  g.nx = xs.size();
  g.ny = ys.size();
  g.dx = (xs.back() - xs.front()) / static_cast<double>(g.nx - 1);
  g.dy = (ys.back() - ys.front()) / static_cast<double>(g.ny - 1);
  for (std::size_t k = 1; k < g.nx; ++k) {
    if (std::abs(xs[k] - xs[k - 1] - g.dx) > 1e-9 * std::max(1.0, g.dx)) throw ValidationError(path + ": uneven x spacing");
  }
  for (std::size_t k = 1; k < g.ny; ++k) {
    if (std::abs(ys[k] - ys[k - 1] - g.dy) > 1e-9 * std::max(1.0, g.dy)) throw ValidationError(path + ": uneven y spacing");
  }
  g.lower_left = Complex(xs.front() - g.dx / 2, ys.front() - g.dy / 2);
  g.values.assign(g.nx * g.ny, 0.0);
  for (const auto& [x, y, d] : cells) {
    const auto ix = static_cast<std::size_t>(std::lround((x - xs.front()) / g.dx));
    const auto iy = static_cast<std::size_t>(std::lround((y - ys.front()) / g.dy));
    g.values[iy * g.nx + ix] = d;
  }
  return g;
}

RunOutput nmm(const RunConfig& c) {
  const auto kind = hierarchy_of(c);
  TimesVector times = kind == HierarchyKind::Toda2D ? resolve_times(c, kind) : TimesVector(c.max_order);
  times.set_discrete_index(0);
  const auto u = quadratic(c.confining);
  RunOutput out{kOk, new_report("nmm"), std::nullopt};
  std::optional<Measure> measure;
  std::vector<Complex> sites;
  if (!c.density_path.empty()) {
    const GriddedDensity g = density_from_csv(c.density_path);
    measure = Measure::gridded(g, u, times);
    out.report["source"] = "density";
    out.report["grid"] = std::to_string(g.nx) + "x" + std::to_string(g.ny);
    out.report["mass"] = num(g.total_mass());
  } else {
    sites = resolve_lattice(c);
    measure = Measure::from_lattice(sites, u, times);
    out.report["source"] = "lattice";
    out.report["sites"] = sites.size();
  }
  out.report["seed"] = c.seed;
  const std::size_t top = c.m ? static_cast<std::size_t>(*c.m) : std::min<std::size_t>(measure->size(), 8);
  Table t{{"m", "log_magnitude", "re", "im", "rank_deficient"}, {}};
  for (std::size_t m = 0; m <= top; ++m) {
    const auto d = determinant_partition(*measure, m);
    const Complex z = d.value.is_zero() ? Complex(0.0) : d.value.value();
    t.add_row({std::to_string(m), d.value.is_zero() ? "-inf" : num(d.value.log_magnitude()), num(z.real()),
               num(z.imag()), d.rank_deficient ? "1" : "0"});
  }
  if (!sites.empty()) {
    // the subset-sum gas gives an independent value for the same measure
    const LatticeGas g(sites, BoundaryGeometry::free_plane(), kCoulombBeta, 0.0, u, times);
    const auto d = determinant_partition(*measure, top).value;
    const double rel = relative_difference(d, canonical_partition(g, top, enumeration(c)));
    out.report["determinant_vs_enumeration"] = residual_node(make_report(rel, 1.0, "relative-difference"));
  }
  out.report["m"] = top;
  out.table = std::move(t);
  return out;
}

RunOutput observables_cmd(const RunConfig& c) {
  const LatticeGas g = plain_gas(c);
  const auto opts = enumeration(c);
  const Observables obs = observables(g, opts);
  const double h = c.step > 0.0 ? c.step : 1e-3;
  auto log_z = [&](const LatticeGas& x) { return grand_partition(x, opts).log_magnitude(); };
  const double count_fd = (log_z(g.with_mu(c.mu + h)) - log_z(g.with_mu(c.mu - h))) / (2.0 * h * c.beta);
  const double energy_fd =
      -(log_z(g.with_beta(c.beta + h)) - log_z(g.with_beta(c.beta - h))) / (2.0 * h) + c.mu * obs.mean_count;
  RunOutput out{kOk, new_report("observables"), std::nullopt};
  describe(out.report, c, g.size());
  out.report["beta"] = num(c.beta);
  out.report["mu"] = num(c.mu);
  out.report["mean_count"] = num(obs.mean_count);
  out.report["mean_energy"] = num(obs.mean_energy);
  out.report["step"] = num(h);
  out.report["mean_count_fd"] = num(count_fd);
  out.report["mean_energy_fd"] = num(energy_fd);
  out.table = sector_table(sector_decomposition(g, opts).values);
  return out;
}

}  // namespace

RunOutput run(const RunConfig& config) {
  validate(config);
  if (config.command == "tau") return tau(config);
  if (config.command == "gas") return gas(config);
  if (config.command == "correspond") return correspond(config);
  if (config.command == "limit-study") return limit_study(config);
  if (config.command == "verify") return verify(config);
  if (config.command == "nmm") return nmm(config);
  return observables_cmd(config);
}

std::string diagnostic_json(std::string_view error_name, std::string_view message, int exit_code) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["status"] = "error";
  j["error_name"] = error_name;
  j["message"] = message;
  j["exit_code"] = exit_code;
  return j.dump();
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutput result;
  try {
    result = run(config);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::NonConvergence ? kVerificationFailed : kInvalid;
    err << diagnostic_json(error_name(e.code()), e.what(), code) << '\n';
    return code;
  } catch (const YAML::Exception& e) {
    err << diagnostic_json("ValidationError", e.what(), kInvalid) << '\n';
    return kInvalid;
  }
  result.report["exit_code"] = result.exit_code;
  try {
    if (config.output.empty()) {
      out << emit_report(result.report);
      if (result.table) {
        // block literal keeps the CSV readable and the document valid YAML
        std::ostringstream csv;
        write_csv(csv, *result.table);
        std::istringstream lines(csv.str());
        out << "table: |\n";
        for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
      }
    } else {
      if (result.table) {
        std::ostringstream csv;
        write_csv(csv, *result.table);
        write_file(config.output + ".csv", csv.str());
        result.report["table"] = std::filesystem::path(config.output + ".csv").filename().string();
      }
      write_file(config.output + ".yaml", emit_report(result.report));
      write_file(config.output + ".meta.json", meta_json(config.command, config.seed));
    }
  } catch (const Error& e) {
    err << diagnostic_json(error_name(e.code()), e.what(), kInvalid) << '\n';
    return kInvalid;
  }
  if (result.exit_code == kVerificationFailed) {
    err << diagnostic_json("VerificationFailure", "a residual exceeded its threshold; see the report",
                           result.exit_code)
        << '\n';
  }
  return result.exit_code;
}

}  // namespace solgas::cli
