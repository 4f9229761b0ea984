#include "solgas/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "solgas/numerics.hpp"

namespace solgas {

namespace {

double confining_at(const CorrespondenceSpec& spec, Complex z) {
  return spec.confining ? spec.confining(z) : 0.0;
}

int fixed_charge(const CorrespondenceSpec& spec) { return spec.fixed_charge.value_or(0); }

// Radius entering the initial phases; 1 for maps other than a plain scaling.
double phase_radius(const CorrespondenceSpec& spec) {
  if (spec.map) return spec.map->kind() == ConformalMap::Kind::Scale ? spec.map->radius() : 1.0;
  return spec.radius;
}

BoundaryGeometry toda_geometry(const CorrespondenceSpec& spec) {
  return spec.map ? BoundaryGeometry::conformal_exterior(*spec.map)
                  : BoundaryGeometry::disc_exterior(spec.radius);
}

void require_plain_disc(const CorrespondenceSpec& spec, const char* what) {
  if (spec.kind != HierarchyKind::Toda2D) {
    throw UnsupportedError(std::string(what) + " applies to the Toda hierarchy only");
  }
  if (spec.map) throw UnsupportedError(std::string(what) + " needs the disc geometry");
}

double min_modulus(std::span<const Complex> sites) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : sites) r = std::min(r, std::abs(z));
  return r;
}

}  // namespace

void validate_spec(const CorrespondenceSpec& spec) {
  validate_real_mode(spec.kind, spec.times);
  for (std::size_t i = 0; i < spec.lattice.size(); ++i) {
    const Complex z = spec.lattice[i];
    const std::string where = "site " + std::to_string(i);
    switch (spec.kind) {
      case HierarchyKind::KP:
        if (!(z.imag() > 0.0)) throw DomainError(where + ": KP sites need Im > 0");
        break;
      case HierarchyKind::BKP:
        if (!(z.real() > 0.0)) throw DomainError(where + ": BKP sites need Re > 0");
        break;
      case HierarchyKind::Toda2D:
        if (spec.map) {
          if (!(std::abs((*spec.map)(z)) > 1.0)) throw DomainError(where + " is not exterior");
        } else if (!(std::abs(z) > spec.radius)) {
          throw DomainError(where + ": Toda sites need |z| > R");
        }
        break;
    }
  }
  if (spec.kind == HierarchyKind::Toda2D) {
    if (!(spec.radius > 0.0)) throw DomainError("disc radius must be positive");
    if (spec.mu != 0.0) throw ValidationError("the Toda correspondence is defined at mu = 0");
  } else if (spec.fixed_charge) {
    throw ValidationError("a fixed charge exists only in the Toda correspondence");
  }
}

std::vector<MomentumPair> map_lattice_to_momenta(const CorrespondenceSpec& spec) {
  validate_spec(spec);
  std::vector<MomentumPair> out;
  out.reserve(spec.lattice.size());
  for (const Complex z : spec.lattice) {
    switch (spec.kind) {
      case HierarchyKind::KP: out.push_back({z, -std::conj(z)}); break;
      case HierarchyKind::BKP: out.push_back({z, std::conj(z)}); break;
      case HierarchyKind::Toda2D:
        if (spec.map) {
          const Complex w = (*spec.map)(z);
          out.push_back({w, 1.0 / std::conj(w)});
        } else {
          out.push_back({z / spec.radius, spec.radius / std::conj(z)});
        }
        break;
    }
  }
  return out;
}

PhaseSet build_phases(const CorrespondenceSpec& spec) {
  const auto momenta = map_lattice_to_momenta(spec);
  PhaseSet out;
  for (std::size_t i = 0; i < spec.lattice.size(); ++i) {
    const Complex z = spec.lattice[i];
    const double u = confining_at(spec, z);
    double phi0 = 0.0;
    switch (spec.kind) {
      case HierarchyKind::KP:
        phi0 = -kCoulombBeta * (self_potential(BoundaryGeometry::half_plane(), z) + u - spec.mu);
        break;
      case HierarchyKind::BKP:
        phi0 = -kCoulombBeta * (self_potential(BoundaryGeometry::quarter_plane(), z) + u - spec.mu);
        break;
      case HierarchyKind::Toda2D:
        phi0 = -kCoulombBeta * u + (2.0 * fixed_charge(spec) - 1.0) * std::log(phase_radius(spec));
        break;
    }
    out.initial.emplace_back(phi0);
    out.full.push_back(soliton_phase(spec.kind, momenta[i], phi0, spec.times));
  }
  return out;
}

SolitonSystem build_soliton_system(const CorrespondenceSpec& spec) {
  return SolitonSystem(spec.kind, map_lattice_to_momenta(spec), build_phases(spec).initial);
}

LatticeGas build_gas(const CorrespondenceSpec& spec) {
  validate_spec(spec);
  switch (spec.kind) {
    case HierarchyKind::KP:
      return LatticeGas(spec.lattice, BoundaryGeometry::half_plane(), kCoulombBeta, spec.mu,
                        spec.confining, spec.times);
    case HierarchyKind::BKP:
      return LatticeGas(spec.lattice, BoundaryGeometry::quarter_plane(), kCoulombBeta, spec.mu,
                        spec.confining, spec.times);
    case HierarchyKind::Toda2D: {
      // The soliton phases carry -2U + (2 ell - 1) log R and no self energy; the gas adds the
      // image self energy, so the confining term absorbs the difference.
      const BoundaryGeometry geometry = toda_geometry(spec);
      const double offset = (2.0 * fixed_charge(spec) - 1.0) * 0.5 * std::log(phase_radius(spec));
      ConfiningPotential u = [confining = spec.confining, geometry, offset](Complex z) {
        const double base = confining ? confining(z) : 0.0;
        return base - self_potential(geometry, z) - offset;
      };
      return LatticeGas(spec.lattice, geometry, kCoulombBeta, 0.0, std::move(u), spec.times);
    }
  }
  throw UnsupportedError("unknown hierarchy kind");
}

TauValue gauge_transform_tau(const SolitonSystem& system, const TimesVector& times, double radius,
                             const EnumerationOptions& options) {
  if (system.kind() != HierarchyKind::Toda2D) {
    throw UnsupportedError("the gauge transformation is defined for the Toda hierarchy");
  }
  if (!(radius > 0.0)) throw DomainError("gauge radius must be positive");
  const int m = times.discrete_index();
  TimesVector shifted = times.scaled(radius);
  shifted.set_discrete_index(m - 1);
  return tau_hirota(system, shifted, options)
      .scaled_by_log(static_cast<double>(m) * m * std::log(radius));
}

int sector_exponent(int m, int n, int ell) { return (m - n) * (m - n) + 2 * ell * n; }

IsingModel stripped_model(const CorrespondenceSpec& spec, int m, double radius) {
  require_plain_disc(spec, "sector stripping");
  validate_real_mode(HierarchyKind::Toda2D, spec.times);
  if (radius < 0.0 || !(radius < min_modulus(spec.lattice))) {
    throw RangeError("stripping radius must lie in [0, min|site|)");
  }
  const std::size_t n = spec.lattice.size();
  const double r2 = radius * radius;
  // alpha = R a = site, gamma = b / R = 1 / conj(site)
  std::vector<Complex> alpha(n), gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = spec.lattice[i];
    gamma[i] = 1.0 / std::conj(spec.lattice[i]);
  }
  // Paired times make every factor real; only roundoff is dropped with the imaginary parts.
  IsingModel model(n);
  const TimesVector& t = spec.times;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex l = (alpha[i] - alpha[j]) * (gamma[i] - gamma[j]) /
                        ((alpha[i] - r2 * gamma[j]) * (r2 * gamma[i] - alpha[j]));
      model.set_coupling(i, j, LogFactor::of(l.real()));
    }
    const Complex ratio = alpha[i] / gamma[i];
    Complex exponent = -kCoulombBeta * confining_at(spec, spec.lattice[i]);
    exponent += static_cast<double>(m - 1) * Complex(std::log(std::abs(ratio)), std::arg(ratio));
    Complex ap = 1.0, gp = 1.0, r2p = 1.0;
    for (int p = 1; p <= t.max_order(); ++p) {
      ap *= alpha[i];
      gp *= gamma[i];
      r2p *= r2;
      exponent += (ap - r2p * gp) * t.t(p) + (1.0 / gp - r2p / ap) * t.tbar(p);
    }
    model.set_field(i, LogFactor::exp_of_real(exponent.real()));
  }
  return model;
}

SectorDecomposition sector_extract(const CorrespondenceSpec& spec,
                                   const EnumerationOptions& options) {
  require_plain_disc(spec, "sector extraction");
  const std::size_t n = spec.lattice.size();
  SectorDecomposition out;
  out.values.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const int m = static_cast<int>(k) + fixed_charge(spec);
    out.values.push_back(sum_by_count(stripped_model(spec, m, 0.0), options)[k]);
  }
  return out;
}

LimitStudy r_limit_study(const CorrespondenceSpec& spec, std::span<const double> radii,
                         const EnumerationOptions& options) {
  require_plain_disc(spec, "the R -> 0 study");
  const int m = spec.times.discrete_index();
  const int ell = fixed_charge(spec);
  const int surviving = m - ell;
  if (surviving < 0 || surviving > static_cast<int>(spec.lattice.size())) {
    throw RangeError("index m = " + std::to_string(m) + " has no surviving sector for N = " +
                     std::to_string(spec.lattice.size()));
  }
  const double rmin = min_modulus(spec.lattice);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !(radii[i] < rmin)) {
      throw RangeError("radii must lie in (0, min|site|)");
    }
    if (i > 0 && !(radii[i] < radii[i - 1])) throw RangeError("radii must be decreasing");
  }
  LimitStudy study;
  study.m = m;
  study.surviving_sector = surviving;
  study.limit = sum_by_count(stripped_model(spec, m, 0.0), options)[static_cast<std::size_t>(surviving)];
  const int lead = sector_exponent(m, surviving, ell);
  std::vector<double> lx, ly;
  for (const double r : radii) {
    CorrespondenceSpec at = spec;
    at.radius = r;
    const TauValue tau = gauge_transform_tau(build_soliton_system(at), spec.times, r, options);
    const TauValue normalized = tau.scaled_by_log(-lead * std::log(r));
    const double dev = std::abs((normalized / study.limit).value() - 1.0);
    study.rows.push_back({r, normalized, dev});
    if (dev > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(dev));
    }
  }
  study.fitted_order = fit_slope(lx, ly);
  return study;
}

std::vector<SectorSlope> sector_slopes(const CorrespondenceSpec& spec, double r1, double r2,
                                       const EnumerationOptions& options) {
  require_plain_disc(spec, "sector slopes");
  const int m = spec.times.discrete_index();
  auto log_sectors = [&](double r) {
    CorrespondenceSpec at = spec;
    at.radius = r;
    TimesVector t = spec.times.scaled(r);
    t.set_discrete_index(m - 1);
    const auto sectors = sum_by_count(hirota_model(build_soliton_system(at), t), options);
    std::vector<double> logs;
    for (const auto& s : sectors) {
      if (s.is_zero()) throw DegenerateError("vanishing sector in slope study");
      logs.push_back(s.log_magnitude() + static_cast<double>(m) * m * std::log(r));
    }
    return logs;
  };
  const auto l1 = log_sectors(r1);
  const auto l2 = log_sectors(r2);
  std::vector<SectorSlope> out;
  for (std::size_t n = 0; n < l1.size(); ++n) {
    const int k = static_cast<int>(n);
    out.push_back({k, (l1[n] - l2[n]) / (std::log(r1) - std::log(r2)),
                   sector_exponent(m, k, fixed_charge(spec))});
  }
  return out;
}

}  // namespace solgas
