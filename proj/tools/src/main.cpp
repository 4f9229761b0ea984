#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "solgas/errors.hpp"

using namespace solgas;
using namespace solgas::cli;

int main(int argc, char** argv) {
  CLI::App app{"Soliton tau functions and planar Coulomb gases"};
  app.set_help_flag("--help", "print usage");
  std::string command, config_path, hierarchy, geometry, suite, lattice, lattice_file, density, output, radii;
  std::size_t n = 0, points = 0, trials = 0;
  std::uint64_t seed = 0;
  int m = 0, max_order = 0, fixed_charge = 0;
  double beta = 0, mu = 0, radius = 0, confining = 0, step = 0, tolerance = 0, time_scale = 0;
  unsigned workers = 0;
  std::vector<std::string> times;
  bool deterministic = false;

  app.add_option("command", command, "tau | gas | correspond | limit-study | verify | nmm | observables")
      ->required();
  app.add_option("--config", config_path, "YAML config; flags override its keys");
  auto* o_hier = app.add_option("--hierarchy", hierarchy, "kp | bkp | toda");
  auto* o_geom = app.add_option("--geometry", geometry, "free | half-plane | quarter-plane | disc | scale | joukowski");
  auto* o_n = app.add_option("--n", n, "number of random sites");
  auto* o_seed = app.add_option("--seed", seed);
  auto* o_m = app.add_option("--m", m, "particle sector / discrete Toda index");
  auto* o_beta = app.add_option("--beta", beta);
  auto* o_mu = app.add_option("--mu", mu);
  auto* o_radius = app.add_option("--radius", radius, "disc or scale-map radius");
  auto* o_order = app.add_option("--max-order", max_order, "highest time index");
  auto* o_conf = app.add_option("--confining", confining, "c in U(z) = c |z|^2");
  auto* o_fixed = app.add_option("--fixed-charge", fixed_charge);
  auto* o_time = app.add_option("--time", times, "tP=re+imi or tbarP=re+imi, repeatable");
  auto* o_tscale = app.add_option("--time-scale", time_scale, "magnitude of random times (0: none)");
  auto* o_step = app.add_option("--h", step, "finite-difference step");
  auto* o_radii = app.add_option("--r", radii, "comma separated radii for limit-study");
  auto* o_points = app.add_option("--points", points, "contour quadrature points (M)");
  auto* o_suite = app.add_option("--suite", suite);
  auto* o_trials = app.add_option("--trials", trials);
  auto* o_tol = app.add_option("--tolerance", tolerance, "override the pass threshold");
  auto* o_lat = app.add_option("--lattice", lattice, "inline sites, e.g. \"1,0+1i,-1\"");
  auto* o_latf = app.add_option("--lattice-file", lattice_file, "CSV with columns x,y");
  auto* o_dens = app.add_option("--density", density, "CSV with columns x,y,density on a regular grid");
  auto* o_out = app.add_option("--output", output, "path prefix for .yaml, .csv and .meta.json");
  auto* o_workers = app.add_option("--workers", workers, "enumeration threads (default SOLGAS_WORKERS or all cores)");
  app.add_flag("--deterministic", deterministic, "single-threaded, byte-identical output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << diagnostic_json("ValidationError", e.what(), kInvalid) << '\n';
    return kInvalid;
  }

  RunConfig c;
  try {
    if (!config_path.empty()) c = load_config(config_path);
    c.command = command;
    if (*o_hier) c.hierarchy = hierarchy;
    if (*o_geom) c.geometry = geometry;
    if (*o_n) c.n = n;
    if (*o_seed) c.seed = seed;
    if (*o_m) c.m = m;
    if (*o_beta) c.beta = beta;
    if (*o_mu) c.mu = mu;
    if (*o_radius) c.radius = radius;
    if (*o_order) c.max_order = max_order;
    if (*o_conf) c.confining = confining;
    if (*o_fixed) c.fixed_charge = fixed_charge;
    if (*o_tscale) c.time_scale = time_scale;
    if (*o_step) c.step = step;
    if (*o_points) c.points = points;
    if (*o_suite) c.suite = suite;
    if (*o_trials) c.trials = trials;
    if (*o_tol) c.tolerance = tolerance;
    if (*o_dens) c.density_path = density;
    if (*o_out) c.output = output;
    if (*o_workers) c.workers = workers;
    if (deterministic) c.deterministic = true;
    if (*o_lat) c.lattice = parse_lattice_list(lattice);
    if (*o_latf) c.lattice = read_lattice_csv(lattice_file);
    if (*o_radii) {
      c.radii.clear();
      for (const Complex r : parse_lattice_list(radii)) c.radii.push_back(r.real());
    }
    if (*o_time) {
      for (const auto& kv : times) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValidationError("--time expects tP=value, got '" + kv + "'");
        c.times.emplace_back(kv.substr(0, eq), parse_complex(kv.substr(eq + 1)));
      }
    }
  } catch (const Error& e) {
    std::cerr << diagnostic_json(error_name(e.code()), e.what(), kInvalid) << '\n';
    return kInvalid;
  }
  return execute(c, std::cout, std::cerr);
}
