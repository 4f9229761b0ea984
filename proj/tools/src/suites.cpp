#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "solgas/correspondence.hpp"
#include "solgas/gas.hpp"
#include "solgas/geometry.hpp"
#include "solgas/matrix_model.hpp"
#include "solgas/numerics.hpp"
#include "solgas/sampling.hpp"

namespace solgas::cli {

namespace {

struct Context {
  const RunConfig& config;
  const EnumerationOptions& options;
  Rng rng;
  std::size_t n;
  std::vector<SuiteRow> rows;

  double tol(double fallback) const { return config.tolerance.value_or(fallback); }

  void add(const std::string& suite, const std::string& label, ResidualReport report, std::string metric,
           double value, bool at_most, double threshold) {
    rows.push_back({suite, label, std::move(report), std::move(metric), value, at_most, threshold});
  }
};

ConfiningPotential quadratic(double c) {
  return [c](Complex z) { return c * std::norm(z); };
}

std::string label(const char* what, std::size_t trial) { return std::string(what) + "#" + std::to_string(trial); }

void toda_chain(Context& c) {
  for (std::size_t trial = 0; trial < c.config.trials; ++trial) {
    CorrespondenceSpec spec;
    spec.kind = HierarchyKind::Toda2D;
    spec.lattice = random_lattice(BoundaryGeometry::disc_exterior(0.3), c.n, c.rng);
    spec.confining = quadratic(c.config.confining);
    spec.times = random_times(HierarchyKind::Toda2D, c.config.max_order, c.rng, c.config.time_scale);
    const auto chain = PartitionChain::from_spec(spec, c.options);
    for (int m = 0; m <= static_cast<int>(c.n); ++m) {
      auto r = toda_bilinear_residual(chain, m);
      const double rel = r.relative;
      c.add("toda-chain", label("lattice", trial) + "/m=" + std::to_string(m), std::move(r), "relative", rel,
            true, c.tol(1e-10));
    }
  }
}

void toda_u(Context& c) {
  CorrespondenceSpec spec;
  spec.kind = HierarchyKind::Toda2D;
  spec.lattice = random_lattice(BoundaryGeometry::disc_exterior(0.3), std::max<std::size_t>(c.n, 2), c.rng);
  spec.confining = quadratic(c.config.confining);
  spec.times = random_times(HierarchyKind::Toda2D, c.config.max_order, c.rng, c.config.time_scale);
  const auto chain = PartitionChain::from_spec(spec, c.options);
  for (int m = 1; m < static_cast<int>(spec.lattice.size()); ++m) {
    auto r = toda_u_equation_residual(chain, m, c.config.step);
    const double dev = std::abs(r.parameter("order") - 2.0);
    c.add("toda-u", "m=" + std::to_string(m), std::move(r), "|order-2|", dev, true, c.tol(0.2));
  }
}

void kp(Context& c) {
  const std::vector<std::vector<MomentumPair>> systems = {
      {{0.9, -0.4}},
      {{0.9, -0.4}, {0.6, -0.2}},
      {{1.0, -0.5}, {0.7, -0.1}, {0.4, 0.2}},
  };
  for (const auto& momenta : systems) {
    std::vector<Complex> phases;
    for (std::size_t i = 0; i < momenta.size(); ++i) phases.emplace_back(uniform(c.rng, -0.3, 0.3));
    const SolitonSystem system(HierarchyKind::KP, momenta, phases);
    auto r = kp_equation_residual(system, TimesVector(3), c.config.step > 0.0 ? c.config.step : 0.1, c.options);
    const double dev = std::abs(r.parameter("order") - 2.0);
    c.add("kp", "N=" + std::to_string(momenta.size()), std::move(r), "|order-2|", dev, true, c.tol(0.2));
  }
}

void residue(Context& c) {
  ContourOptions contour;
  contour.points = c.config.points;
  for (const auto kind : {HierarchyKind::KP, HierarchyKind::BKP, HierarchyKind::Toda2D}) {
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.n, 4); ++n) {
      for (std::size_t draw = 0; draw < c.config.trials; ++draw) {
        std::vector<MomentumPair> momenta;
        std::vector<Complex> phases;
        for (std::size_t i = 0; i < n; ++i) {
          momenta.push_back({std::polar(uniform(c.rng, 0.5, 1.0), uniform(c.rng, 0.0, 2 * std::numbers::pi)),
                             std::polar(uniform(c.rng, 0.5, 1.0), uniform(c.rng, 0.0, 2 * std::numbers::pi))});
          phases.emplace_back(uniform(c.rng, -0.3, 0.3));
        }
        const SolitonSystem system(kind, momenta, phases);
        TimesVector t(3), tp(3);
        for (int p = 1; p <= 3; ++p) {
          if (kind == HierarchyKind::BKP && p % 2 == 0) continue;
          const Complex base(uniform(c.rng, -0.1, 0.1), uniform(c.rng, -0.1, 0.1));
          t.set_t(p, base);
          tp.set_t(p, base + Complex(uniform(c.rng, -0.05, 0.05), uniform(c.rng, -0.05, 0.05)));
          if (kind == HierarchyKind::Toda2D) {
            const Complex nb(uniform(c.rng, -0.1, 0.1), uniform(c.rng, -0.1, 0.1));
            t.set_tbar(p, nb);
            tp.set_tbar(p, nb + Complex(uniform(c.rng, -0.05, 0.05), uniform(c.rng, -0.05, 0.05)));
          }
        }
        if (kind == HierarchyKind::Toda2D) {
          t.set_discrete_index(static_cast<int>(c.rng() % 4));
          tp.set_discrete_index(static_cast<int>(c.rng() % 4));
        }
        const auto r = residue_contour_check(system, t, tp, contour, c.options);
        const double worst = std::max({r.report.relative, r.radius_stability, r.points_stability});
        c.add("residue", std::string(hierarchy_name(kind)) + "/N=" + std::to_string(n) + "#" + std::to_string(draw),
              r.report, "max(relative, stability)", worst, true, c.tol(1e-9));
      }
    }
  }
}

void boundary(Context& c) {
  const std::vector<std::pair<std::string, BoundaryGeometry>> geometries = {
      {"half-plane", BoundaryGeometry::half_plane()},
      {"quarter-plane", BoundaryGeometry::quarter_plane()},
      {"disc", BoundaryGeometry::disc_exterior(c.config.radius)},
      {"scale", BoundaryGeometry::conformal_exterior(ConformalMap::scale(c.config.radius))},
      {"joukowski", BoundaryGeometry::conformal_exterior(ConformalMap::joukowski_inverse())}};
  for (const auto& [name, g] : geometries) {
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& w : wall_points(g, 100)) {
      if (!w.conductor) continue;
      const Complex zp = random_lattice(g, 1, c.rng)[0];
      worst = std::max({worst, std::abs(pair_potential(g, w.point, zp)), std::abs(pair_potential(g, zp, w.point))});
      ++count;
    }
    auto r = make_report(worst, 1.0, "wall-sampling");
    r.parameters = {{"points", static_cast<double>(count)}};
    c.add("boundary", name + "/conductor", std::move(r), "max |V|", worst, true, c.tol(1e-10));
  }
  const auto quarter = BoundaryGeometry::quarter_plane();
  const std::vector<double> steps = {0.04, 0.02, 0.01, 0.005};
  double worst_order = INFINITY;
  for (const auto& w : wall_points(quarter, 10)) {
    if (w.conductor) continue;
    const Complex zp = random_lattice(quarter, 1, c.rng)[0];
    std::vector<double> lh, ld;
    for (const double h : steps) {
      lh.push_back(std::log(h));
      ld.push_back(std::log(std::abs(wall_normal_derivative(quarter, w, zp, h))));
    }
    worst_order = std::min(worst_order, fit_slope(lh, ld));
  }
  auto r = make_report(0.0, 1.0, "one-sided-difference");
  r.parameters = {{"order", worst_order}};
  c.add("boundary", "quarter-plane/dielectric", std::move(r), "order", worst_order, false, 1.9);
}

void oracles(Context& c) {
  for (std::size_t trial = 0; trial < c.config.trials; ++trial) {
    const auto sites = random_lattice(BoundaryGeometry::disc_exterior(0.3), c.n, c.rng);
    const auto u = quadratic(c.config.confining);
    const TimesVector times = random_times(HierarchyKind::Toda2D, c.config.max_order, c.rng, c.config.time_scale);
    CorrespondenceSpec spec;
    spec.kind = HierarchyKind::Toda2D;
    spec.lattice = sites;
    spec.confining = u;
    spec.times = times;
    const LatticeGas gas(sites, BoundaryGeometry::free_plane(), kCoulombBeta, 0.0, u, times);
    const auto extracted = sector_extract(spec, c.options);
    const auto measure = Measure::from_lattice(sites, u, times);
    for (std::size_t m = 0; m <= sites.size(); ++m) {
      const TauValue a = canonical_partition(gas, m, c.options);
      const TauValue d = determinant_partition(measure, m).value;
      const double worst = std::max({relative_difference(a, extracted.values[m]), relative_difference(a, d),
                                     relative_difference(d, extracted.values[m])});
      c.add("oracles", label("lattice", trial) + "/m=" + std::to_string(m), make_report(worst, 1.0, "pairwise"),
            "max pairwise relative", worst, true, c.tol(1e-10));
    }
  }
}

void reassembly(Context& c) {
  for (std::size_t trial = 0; trial < c.config.trials; ++trial) {
    const auto g = BoundaryGeometry::quarter_plane();
    const LatticeGas gas(random_lattice(g, c.n, c.rng), g, c.config.beta, 0.0, quadratic(c.config.confining));
    SectorDecomposition sectors;
    for (std::size_t k = 0; k <= c.n; ++k) sectors.values.push_back(canonical_partition(gas, k, c.options));
    for (const double mu : {-2.0, -0.7, 0.0, 0.9, 2.5}) {
      const double rel =
          relative_difference(grand_partition(gas.with_mu(mu), c.options), sectors.reassemble(gas.beta(), mu));
      auto r = make_report(rel, 1.0, "sector-sum");
      r.parameters = {{"mu", mu}};
      c.add("reassembly", label("gas", trial), std::move(r), "relative", rel, true, c.tol(1e-11));
    }
  }
}

void thermo(Context& c) {
  for (std::size_t trial = 0; trial < c.config.trials; ++trial) {
    const auto g = BoundaryGeometry::half_plane();
    const LatticeGas gas(random_lattice(g, c.n, c.rng), g, c.config.beta, c.config.mu, quadratic(c.config.confining));
    const Observables obs = observables(gas, c.options);
    auto log_z = [&](const LatticeGas& x) { return grand_partition(x, c.options).log_magnitude(); };
    auto count_error = [&](double h) {
      const double d = (log_z(gas.with_mu(gas.mu() + h)) - log_z(gas.with_mu(gas.mu() - h))) / (2.0 * h);
      return std::abs(d / gas.beta() - obs.mean_count);
    };
    auto energy_error = [&](double h) {
      const double d = (log_z(gas.with_beta(gas.beta() + h)) - log_z(gas.with_beta(gas.beta() - h))) / (2.0 * h);
      return std::abs(-d + gas.mu() * obs.mean_count - obs.mean_energy);
    };
    const double h = c.config.step > 0.0 ? c.config.step : 1e-2;
    for (const auto& [name, err] : {std::pair<std::string, std::function<double(double)>>{"count", count_error},
                                    {"energy", energy_error}}) {
      const double order = observed_order(err(h), err(h / 2));
      auto r = make_report(err(h / 2), 1.0, "central-difference");
      r.parameters = {{"h", h}, {"order", order}};
      c.add("thermo", label("gas", trial) + "/" + name, std::move(r), "|order-2|", std::abs(order - 2.0), true,
            c.tol(0.2));
    }
  }
}

void identity(Context& c) {
  struct Case {
    const char* name;
    HierarchyKind kind;
    const char* geometry;
  };
  for (const Case& k : {Case{"kp/half-plane", HierarchyKind::KP, "half-plane"},
                        Case{"bkp/quarter-plane", HierarchyKind::BKP, "quarter-plane"},
                        Case{"toda/disc", HierarchyKind::Toda2D, "disc"},
                        Case{"toda/scale", HierarchyKind::Toda2D, "scale"},
                        Case{"toda/joukowski", HierarchyKind::Toda2D, "joukowski"}}) {
    for (std::size_t trial = 0; trial < c.config.trials; ++trial) {
      RunConfig sub = c.config;
      sub.hierarchy = std::string(hierarchy_name(k.kind));
      sub.geometry = k.geometry;
      sub.lattice.clear();
      sub.times.clear();
      sub.n = c.n;
      sub.m.reset();
      sub.seed = c.rng();
      const CorrespondenceSpec spec = make_spec(sub);
      const TauValue tau = tau_hirota(build_soliton_system(spec), spec.times, c.options);
      const TauValue z = grand_partition(build_gas(spec), c.options);
      const double rel = relative_difference(tau, z);
      c.add("identity", label(k.name, trial), make_report(rel, 1.0, "tau-vs-grand-partition"), "relative", rel,
            true, c.tol(1e-11));
    }
  }
}

const std::map<std::string, void (*)(Context&)>& registry() {
  static const std::map<std::string, void (*)(Context&)> suites = {
      {"toda-chain", toda_chain}, {"toda-u", toda_u},         {"kp", kp},         {"residue", residue},
      {"boundary", boundary},     {"oracles", oracles},       {"reassembly", reassembly},
      {"thermo", thermo},         {"identity", identity}};
  return suites;
}

}  // namespace

std::vector<SuiteRow> run_suite(const RunConfig& config, const EnumerationOptions& options) {
  Context c{config, options, Rng(config.seed), config.n.value_or(6), {}};
  if (config.suite == "all") {
    for (const auto& name : kSuites) {
      if (name != "all") registry().at(name)(c);
    }
  } else {
    registry().at(config.suite)(c);
  }
  return std::move(c.rows);
}

}  // namespace solgas::cli
