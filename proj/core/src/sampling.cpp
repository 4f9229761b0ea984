#include "solgas/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace solgas {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

namespace {

Complex polar_in_annulus(Rng& rng, double r0, double r1) {
  return std::polar(uniform(rng, r0, r1), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

Complex candidate(const BoundaryGeometry& g, Rng& rng, const LatticeOptions& o) {
  using K = BoundaryGeometry::Kind;
  switch (g.kind()) {
    case K::FreePlane: return polar_in_annulus(rng, 0.0, o.extent);
    case K::HalfPlaneConductor:
      return {uniform(rng, -o.extent, o.extent), uniform(rng, o.margin, o.margin + o.extent)};
    case K::QuarterPlane:
      return {uniform(rng, o.margin, o.margin + o.extent), uniform(rng, o.margin, o.margin + o.extent)};
    case K::DiscExteriorConductor: {
      const double r0 = g.radius() * (1.0 + o.margin);
      return polar_in_annulus(rng, r0, r0 + o.extent * g.radius());
    }
    case K::ConformalExterior: {
      if (g.map().kind() == ConformalMap::Kind::Scale) {
        const double r0 = g.map().radius() * (1.0 + o.margin);
        return polar_in_annulus(rng, r0, r0 + o.extent * g.map().radius());
      }
      const double half = 2.0 + o.extent;
      return {uniform(rng, -half, half), uniform(rng, -half, half)};
    }
  }
  return 0.0;
}

bool clear_of_boundary(const BoundaryGeometry& g, Complex z, const LatticeOptions& o) {
  if (g.kind() != BoundaryGeometry::Kind::ConformalExterior) return g.in_interior(z);
  try {
    return std::abs(g.map()(z)) > 1.0 + o.margin;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace

std::vector<Complex> random_lattice(const BoundaryGeometry& geometry, std::size_t n, Rng& rng,
                                    const LatticeOptions& options) {
  std::vector<Complex> sites;
  sites.reserve(n);
  std::size_t attempts = 0;
  while (sites.size() < n) {
    if (++attempts > options.max_attempts) {
      throw RangeError("could not place " + std::to_string(n) + " separated sites");
    }
    const Complex z = candidate(geometry, rng, options);
    if (!clear_of_boundary(geometry, z, options)) continue;
    bool separated = true;
    for (const Complex s : sites) separated = separated && std::abs(s - z) >= options.min_separation;
    if (separated) sites.push_back(z);
  }
  return sites;
}

TimesVector random_times(HierarchyKind kind, int max_order, Rng& rng, double magnitude) {
  TimesVector times(max_order);
  for (int p = 1; p <= max_order; ++p) {
    const double bound = magnitude / p;
    switch (kind) {
      case HierarchyKind::KP: times.set_t(p, Complex(0.0, uniform(rng, -bound, bound))); break;
      case HierarchyKind::BKP:
        if (p % 2 == 1) times.set_t(p, uniform(rng, -bound, bound));
        break;
      case HierarchyKind::Toda2D: {
        const Complex t = std::polar(uniform(rng, 0.0, bound), uniform(rng, 0.0, 2.0 * std::numbers::pi));
        times.set_t(p, t);
        times.set_tbar(p, std::conj(t));
        break;
      }
    }
  }
  return times;
}

}  // namespace solgas
