// Acceptance checks; one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "solgas/correspondence.hpp"
#include "solgas/gas.hpp"
#include "solgas/geometry.hpp"
#include "solgas/hierarchy.hpp"
#include "solgas/matrix_model.hpp"
#include "solgas/numerics.hpp"
#include "solgas/sampling.hpp"

using namespace solgas;

namespace {

constexpr double kIdentityTol = 1e-11;
constexpr double kWallTol = 1e-10;
constexpr double kWallOrderMin = 1.9;
constexpr double kLimitOrderMin = 0.9;
constexpr double kSlopeTol = 0.05;
constexpr double kChainTol = 1e-10;
constexpr double kKpOrderTol = 0.2;
constexpr double kResidueTol = 1e-9;
constexpr double kOracleTol = 1e-10;
constexpr double kThermoOrderTol = 0.2;
constexpr double kReassemblyTol = 1e-11;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ConfiningPotential quadratic(double c) {
  return [c](Complex z) { return c * std::norm(z); };
}

// 1. tau_hirota of the mapped system equals the beta = 2 grand partition function.
Outcome soliton_gas_identity() {
  Rng rng(101);
  double worst = 0.0;
  struct Case {
    const char* name;
    HierarchyKind kind;
    std::optional<ConformalMap> map;
    double radius;
  };
  const std::vector<Case> cases = {
      {"kp/half-plane", HierarchyKind::KP, std::nullopt, 1.0},
      {"bkp/quarter-plane", HierarchyKind::BKP, std::nullopt, 1.0},
      {"toda/disc", HierarchyKind::Toda2D, std::nullopt, 0.8},
      {"toda/scale-map", HierarchyKind::Toda2D, ConformalMap::scale(0.7), 1.0},
      {"toda/joukowski", HierarchyKind::Toda2D, ConformalMap::joukowski_inverse(), 1.0},
  };
  std::string per_case;
  for (const auto& c : cases) {
    double case_worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 3 + static_cast<std::size_t>(trial) % 10;
      CorrespondenceSpec spec;
      spec.kind = c.kind;
      spec.radius = c.radius;
      spec.map = c.map;
      BoundaryGeometry g = BoundaryGeometry::free_plane();
      switch (c.kind) {
        case HierarchyKind::KP: g = BoundaryGeometry::half_plane(); break;
        case HierarchyKind::BKP: g = BoundaryGeometry::quarter_plane(); break;
        case HierarchyKind::Toda2D:
          g = c.map ? BoundaryGeometry::conformal_exterior(*c.map)
                    : BoundaryGeometry::disc_exterior(c.radius);
          break;
      }
      spec.lattice = random_lattice(g, n, rng);
      spec.confining = quadratic(uniform(rng, 0.0, 0.3));
      spec.times = random_times(c.kind, 4, rng);
      if (c.kind == HierarchyKind::Toda2D) {
        spec.times.set_discrete_index(static_cast<int>(rng() % 5) - 2);
      } else {
        spec.mu = uniform(rng, -0.5, 0.5);
      }
      const TauValue soliton = tau_hirota(build_soliton_system(spec), spec.times);
      const TauValue gas = grand_partition(build_gas(spec));
      case_worst = std::max(case_worst, relative_difference(soliton, gas));
    }
    per_case += fmt(" %s=%.1e", c.name, case_worst);
    worst = std::max(worst, case_worst);
  }
  return {worst <= kIdentityTol, fmt("max rel %.2e (tol %.0e);", worst, kIdentityTol) + per_case};
}

// 2. Conductor walls are equipotential; the dielectric wall has a vanishing normal field.
Outcome boundary_conditions() {
  Rng rng(202);
  const std::vector<BoundaryGeometry> geometries = {
      BoundaryGeometry::half_plane(), BoundaryGeometry::quarter_plane(),
      BoundaryGeometry::disc_exterior(1.5), BoundaryGeometry::conformal_exterior(ConformalMap::scale(2.0)),
      BoundaryGeometry::conformal_exterior(ConformalMap::joukowski_inverse())};
  double worst_v = 0.0;
  std::size_t sampled = 0;
  for (const auto& g : geometries) {
    for (const auto& w : wall_points(g, 100)) {
      if (!w.conductor) continue;
      const Complex zp = random_lattice(g, 1, rng)[0];
      worst_v = std::max({worst_v, std::abs(pair_potential(g, w.point, zp)),
                          std::abs(pair_potential(g, zp, w.point))});
      ++sampled;
    }
  }
  const auto quarter = BoundaryGeometry::quarter_plane();
  const std::vector<double> steps = {0.04, 0.02, 0.01, 0.005};
  double worst_order = 1e300;
  for (const auto& w : wall_points(quarter, 10)) {
    if (w.conductor) continue;
    const Complex zp = random_lattice(quarter, 1, rng)[0];
    std::vector<double> lh, ld;
    for (const double h : steps) {
      lh.push_back(std::log(h));
      ld.push_back(std::log(std::abs(wall_normal_derivative(quarter, w, zp, h))));
    }
    worst_order = std::min(worst_order, fit_slope(lh, ld));
  }
  const bool ok = worst_v <= kWallTol && worst_order >= kWallOrderMin;
  return {ok, fmt("conductor max |V| %.2e over %zu points (tol %.0e); dielectric min order %.3f (min %.1f)",
                  worst_v, sampled, kWallTol, worst_order, kWallOrderMin)};
}

// 3. Normalized transformed Toda tau converges to Z_m as R -> 0 with the predicted sector powers.
Outcome r_limit() {
  Rng rng(303);
  CorrespondenceSpec spec;
  spec.kind = HierarchyKind::Toda2D;
  spec.lattice = random_lattice(BoundaryGeometry::disc_exterior(0.5), 6, rng);
  spec.confining = quadratic(0.1);
  spec.times = random_times(HierarchyKind::Toda2D, 3, rng);
  const std::vector<double> radii = {1e-2, 1e-3, 1e-4};
  double worst_order = 1e300, worst_slope = 0.0;
  for (int m = 1; m <= 6; ++m) {
    spec.times.set_discrete_index(m);
    worst_order = std::min(worst_order, r_limit_study(spec, radii).fitted_order);
    for (const auto& s : sector_slopes(spec, 1e-3, 1e-4)) {
      worst_slope = std::max(worst_slope, std::abs(s.slope - s.expected));
    }
  }
  const bool ok = worst_order >= kLimitOrderMin && worst_slope <= kSlopeTol;
  return {ok, fmt("min fitted order %.3f (min %.1f); max |slope - (m-n)^2| %.2e (tol %.2f)",
                  worst_order, kLimitOrderMin, worst_slope, kSlopeTol)};
}

// 4. Z_m solves the Toda bilinear equation for every m.
Outcome toda_chain() {
  Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
    CorrespondenceSpec spec;
    spec.kind = HierarchyKind::Toda2D;
    spec.lattice = random_lattice(BoundaryGeometry::disc_exterior(0.3), n, rng);
    spec.confining = quadratic(uniform(rng, 0.0, 0.3));
    spec.times = random_times(HierarchyKind::Toda2D, 3, rng);
    for (int p = 1; p <= 2; ++p) {
      const Complex t(uniform(rng, 0.02, 0.1), uniform(rng, 0.02, 0.1));
      spec.times.set_t(p, t);
      spec.times.set_tbar(p, std::conj(t));
    }
    const auto chain = PartitionChain::from_spec(spec);
    for (int m = 0; m <= static_cast<int>(n); ++m) {
      worst = std::max(worst, toda_bilinear_residual(chain, m).relative);
    }
  }
  return {worst <= kChainTol, fmt("max relative residual %.2e (tol %.0e)", worst, kChainTol)};
}

// 5. KP equation residual of 1-, 2- and 3-soliton solutions decays at second order.
Outcome kp_equation() {
  const std::vector<std::vector<MomentumPair>> systems = {
      {{0.9, -0.4}},
      {{0.9, -0.4}, {0.6, -0.2}},
      {{1.0, -0.5}, {0.7, -0.1}, {0.4, 0.2}},
  };
  double worst = 0.0;
  std::string orders;
  for (const auto& momenta : systems) {
    const SolitonSystem system(HierarchyKind::KP, momenta,
                               std::vector<Complex>(momenta.size(), Complex(0.0)));
    const double order = kp_equation_residual(system, TimesVector(3)).parameter("order");
    orders += fmt(" N=%zu:%.3f", momenta.size(), order);
    worst = std::max(worst, std::abs(order - 2.0));
  }
  return {worst <= kKpOrderTol, fmt("orders%s (2.0 +- %.1f)", orders.c_str(), kKpOrderTol)};
}

Complex random_momentum(Rng& rng) {
  return std::polar(uniform(rng, 0.5, 1.0), uniform(rng, 0.0, 6.283185307179586));
}

// 6. Contour form of the bilinear identities for KP and Toda systems.
Outcome residue_equations() {
  Rng rng(606);
  double worst = 0.0, worst_stability = 0.0;
  for (const auto kind : {HierarchyKind::KP, HierarchyKind::Toda2D}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int draw = 0; draw < 5; ++draw) {
        std::vector<MomentumPair> momenta;
        std::vector<Complex> phases;
        for (std::size_t i = 0; i < n; ++i) {
          momenta.push_back({random_momentum(rng), random_momentum(rng)});
          phases.emplace_back(uniform(rng, -0.3, 0.3));
        }
        const SolitonSystem system(kind, momenta, phases);
        TimesVector t(3), tp(3);
        for (int p = 1; p <= 3; ++p) {
          const Complex base(uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1));
          const Complex step(uniform(rng, -0.05, 0.05), uniform(rng, -0.05, 0.05));
          t.set_t(p, base);
          tp.set_t(p, base + step);
          if (kind == HierarchyKind::Toda2D) {
            const Complex nbase(uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1));
            const Complex nstep(uniform(rng, -0.05, 0.05), uniform(rng, -0.05, 0.05));
            t.set_tbar(p, nbase);
            tp.set_tbar(p, nbase + nstep);
          }
        }
        if (kind == HierarchyKind::Toda2D) {
          t.set_discrete_index(static_cast<int>(rng() % 4));
          tp.set_discrete_index(static_cast<int>(rng() % 4));
        }
        const auto r = residue_contour_check(system, t, tp);
        worst = std::max(worst, r.report.relative);
        worst_stability = std::max({worst_stability, r.radius_stability, r.points_stability});
      }
    }
  }
  const bool ok = worst <= kResidueTol && worst_stability <= kResidueTol;
  return {ok, fmt("max |residual|/scale %.2e, max stability %.2e (tol %.0e)", worst,
                  worst_stability, kResidueTol)};
}

// 7. Subset enumeration, the soliton R -> 0 route and the moment determinant agree.
Outcome triple_oracle() {
  Rng rng(707);
  double worst = 0.0;
  auto compare = [&](const std::vector<Complex>& sites, const ConfiningPotential& u,
                     const TimesVector& times) {
    CorrespondenceSpec spec;
    spec.kind = HierarchyKind::Toda2D;
    spec.lattice = sites;
    spec.confining = u;
    spec.times = times;
    const LatticeGas gas(sites, BoundaryGeometry::free_plane(), kCoulombBeta, 0.0, u, times);
    const auto extracted = sector_extract(spec);
    const auto measure = Measure::from_lattice(sites, u, times);
    std::vector<TauValue> canonical;
    for (std::size_t m = 0; m <= sites.size(); ++m) {
      const TauValue c = canonical_partition(gas, m);
      const TauValue d = determinant_partition(measure, m).value;
      worst = std::max({worst, relative_difference(c, extracted.values[m]),
                        relative_difference(c, d), relative_difference(d, extracted.values[m])});
      canonical.push_back(c);
    }
    return canonical;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 11;
    const auto sites = random_lattice(BoundaryGeometry::disc_exterior(0.3), n, rng);
    compare(sites, quadratic(uniform(rng, 0.0, 0.3)), random_times(HierarchyKind::Toda2D, 3, rng));
  }
  const auto worked = compare({1.0, Complex(0, 1), -1.0}, {}, TimesVector(2));
  const double e2 = std::abs(worked[2].value().real() - 8.0) / 8.0;
  const double e3 = std::abs(worked[3].value().real() - 16.0) / 16.0;
  const bool ok = worst <= kOracleTol && e2 <= kOracleTol && e3 <= kOracleTol;
  return {ok, fmt("max pairwise rel %.2e (tol %.0e); Z2=%.12g Z3=%.12g on {1,i,-1}", worst,
                  kOracleTol, worked[2].value().real(), worked[3].value().real())};
}

// 8. <n> and <E> against central differences of log Z in mu and beta.
Outcome thermodynamics() {
  Rng rng(808);
  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
    const auto g = BoundaryGeometry::half_plane();
    const LatticeGas gas(random_lattice(g, n, rng), g, uniform(rng, 1.0, 3.0),
                         uniform(rng, -1.0, 1.0), quadratic(uniform(rng, 0.0, 0.3)));
    const Observables obs = observables(gas);
    auto log_z_mu = [&](double mu) { return grand_partition(gas.with_mu(mu)).log_magnitude(); };
    auto log_z_beta = [&](double beta) {
      return grand_partition(gas.with_beta(beta)).log_magnitude();
    };
    auto count_error = [&](double h) {
      const double d = (log_z_mu(gas.mu() + h) - log_z_mu(gas.mu() - h)) / (2.0 * h);
      return std::abs(d / gas.beta() - obs.mean_count);
    };
    // -d log Z / d beta = <E> - mu <n>
    auto energy_error = [&](double h) {
      const double d = (log_z_beta(gas.beta() + h) - log_z_beta(gas.beta() - h)) / (2.0 * h);
      return std::abs(-d + gas.mu() * obs.mean_count - obs.mean_energy);
    };
    const double h = 1e-2;
    worst = std::max({worst, std::abs(observed_order(count_error(h), count_error(h / 2)) - 2.0),
                      std::abs(observed_order(energy_error(h), energy_error(h / 2)) - 2.0)});
  }
  return {worst <= kThermoOrderTol,
          fmt("max |order - 2| %.3f (tol %.1f)", worst, kThermoOrderTol)};
}

// 9. Grand partition function reassembled from canonical sectors.
Outcome reassembly() {
  Rng rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial) * 2;
    const auto g = BoundaryGeometry::quarter_plane();
    const LatticeGas gas(random_lattice(g, n, rng), g, uniform(rng, 0.5, 3.0), 0.0,
                         quadratic(uniform(rng, 0.0, 0.3)));
    SectorDecomposition sectors;
    for (std::size_t k = 0; k <= n; ++k) sectors.values.push_back(canonical_partition(gas, k));
    for (const double mu : {-2.0, -0.7, 0.0, 0.9, 2.5}) {
      worst = std::max(worst, relative_difference(grand_partition(gas.with_mu(mu)),
                                                  sectors.reassemble(gas.beta(), mu)));
    }
  }
  return {worst <= kReassemblyTol, fmt("max rel %.2e at 5 mu values (tol %.0e)", worst, kReassemblyTol)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double time_limit;  // seconds; 0 means unbounded
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "soliton-gas identity", soliton_gas_identity, 10.0},
      {2, "boundary conditions", boundary_conditions, 0.0},
      {3, "R->0 limit and sector powers", r_limit, 30.0},
      {4, "Toda chain bilinear residual", toda_chain, 20.0},
      {5, "KP equation convergence order", kp_equation, 10.0},
      {6, "Hirota residue contours", residue_equations, 10.0},
      {7, "triple oracle equivalence", triple_oracle, 20.0},
      {8, "thermodynamic consistency", thermodynamics, 0.0},
      {9, "grand/canonical reassembly", reassembly, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      out.pass = false;
      out.detail += fmt("; runtime over %.0f s", c.time_limit);
    }
    std::printf("[%s] %d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
