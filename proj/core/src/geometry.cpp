#include "solgas/geometry.hpp"

#include <cmath>
#include <numbers>

namespace solgas {

namespace {

constexpr double kClosureSlack = 1e-12;
constexpr double kCoincidence = 1e-14;

double log_abs(Complex z) { return std::log(std::abs(z)); }

// -m log|w| - 1/2 sum_p ((w^p - conj(w)^{-p}) t_p + (conj(w)^p - w^{-p}) tbar_p)
double unit_disc_harmonic(Complex w, const TimesVector& times) {
  double out = -times.discrete_index() * log_abs(w);
  Complex wp = 1.0, wbp = 1.0;
  const Complex wb = std::conj(w);
  Complex acc = 0.0;
  for (int p = 1; p <= times.max_order(); ++p) {
    wp *= w;
    wbp *= wb;
    acc += (wp - 1.0 / wbp) * times.t(p) + (wbp - 1.0 / wp) * times.tbar(p);
  }
  return out - 0.5 * acc.real();
}

}  // namespace

ConformalMap::ConformalMap(Kind kind, double radius, std::function<Complex(Complex)> map,
                           std::string name)
    : kind_(kind), radius_(radius), map_(std::move(map)), name_(std::move(name)) {}

ConformalMap ConformalMap::scale(double radius) {
  if (!(radius > 0.0)) throw DomainError("scale map needs a positive radius");
  return {Kind::Scale, radius, [radius](Complex z) { return z / radius; }, "scale"};
}

ConformalMap ConformalMap::joukowski_inverse() {
  return {Kind::JoukowskiInverse, 1.0,
          [](Complex z) {
            const Complex root = std::sqrt(z * z / 4.0 - 1.0);
            const Complex w1 = z / 2.0 + root;
            const Complex w2 = z / 2.0 - root;
            return std::abs(w1) >= std::abs(w2) ? w1 : w2;
          },
          "joukowski-inverse"};
}

ConformalMap ConformalMap::sampled(std::function<Complex(Complex)> map, std::string name) {
  return {Kind::Sampled, 1.0, std::move(map), std::move(name)};
}

Complex ConformalMap::operator()(Complex z) const {
  const Complex w = map_(z);
  if (std::abs(w) < 1.0 - kClosureSlack) {
    throw DomainError("conformal map '" + name_ + "' sends a point inside the unit disc");
  }
  return w;
}

BoundaryGeometry::BoundaryGeometry(Kind kind, double radius,
                                   std::shared_ptr<const ConformalMap> map)
    : kind_(kind), radius_(radius), map_(std::move(map)) {}

BoundaryGeometry BoundaryGeometry::free_plane() { return BoundaryGeometry(Kind::FreePlane); }
BoundaryGeometry BoundaryGeometry::half_plane() { return BoundaryGeometry(Kind::HalfPlaneConductor); }
BoundaryGeometry BoundaryGeometry::quarter_plane() { return BoundaryGeometry(Kind::QuarterPlane); }

BoundaryGeometry BoundaryGeometry::disc_exterior(double radius) {
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  return BoundaryGeometry(Kind::DiscExteriorConductor, radius);
}

BoundaryGeometry BoundaryGeometry::conformal_exterior(ConformalMap map) {
  const double r = map.radius();
  return BoundaryGeometry(Kind::ConformalExterior, r,
                          std::make_shared<const ConformalMap>(std::move(map)));
}

const ConformalMap& BoundaryGeometry::map() const {
  if (!map_) throw UnsupportedError("geometry has no conformal map");
  return *map_;
}

HierarchyKind BoundaryGeometry::time_convention() const {
  switch (kind_) {
    case Kind::HalfPlaneConductor: return HierarchyKind::KP;
    case Kind::QuarterPlane: return HierarchyKind::BKP;
    default: return HierarchyKind::Toda2D;
  }
}

bool BoundaryGeometry::in_closure(Complex z) const {
  const double slack = kClosureSlack * (1.0 + std::abs(z));
  switch (kind_) {
    case Kind::FreePlane: return true;
    case Kind::HalfPlaneConductor: return z.imag() >= -slack;
    case Kind::QuarterPlane: return z.imag() >= -slack && z.real() >= -slack;
    case Kind::DiscExteriorConductor: return std::abs(z) >= radius_ * (1.0 - kClosureSlack);
    case Kind::ConformalExterior: return std::abs(map_->operator()(z)) >= 1.0 - kClosureSlack;
  }
  return false;
}

bool BoundaryGeometry::in_interior(Complex z) const {
  switch (kind_) {
    case Kind::FreePlane: return true;
    case Kind::HalfPlaneConductor: return z.imag() > 0.0;
    case Kind::QuarterPlane: return z.imag() > 0.0 && z.real() > 0.0;
    case Kind::DiscExteriorConductor: return std::abs(z) > radius_;
    case Kind::ConformalExterior: {
      try {
        return std::abs((*map_)(z)) > 1.0;
      } catch (const DomainError&) {
        return false;
      }
    }
  }
  return false;
}

std::string_view geometry_name(BoundaryGeometry::Kind kind) {
  using K = BoundaryGeometry::Kind;
  switch (kind) {
    case K::FreePlane: return "free";
    case K::HalfPlaneConductor: return "half-plane";
    case K::QuarterPlane: return "quarter-plane";
    case K::DiscExteriorConductor: return "disc";
    case K::ConformalExterior: return "conformal";
  }
  return "unknown";
}

double pair_potential(const BoundaryGeometry& g, Complex z, Complex zp) {
  if (!g.in_closure(z) || !g.in_closure(zp)) {
    throw DomainError("pair potential evaluated outside the admissible domain");
  }
  if (std::abs(z - zp) <= kCoincidence * (std::abs(z) + std::abs(zp)) || z == zp) {
    throw CoincidenceError("pair potential at coincident points");
  }
  using K = BoundaryGeometry::Kind;
  switch (g.kind()) {
    case K::FreePlane: return -log_abs(z - zp);
    case K::HalfPlaneConductor: return -log_abs(z - zp) + log_abs(std::conj(z) - zp);
    case K::QuarterPlane:
      return -log_abs(z - zp) - log_abs(std::conj(z) - zp) + log_abs(z + zp) +
             log_abs(std::conj(z) + zp);
    case K::DiscExteriorConductor: {
      const double r = g.radius();
      return -log_abs(z - zp) + log_abs(std::conj(z) * zp - r * r) - std::log(r);
    }
    case K::ConformalExterior: {
      const Complex w = g.map()(z), wp = g.map()(zp);
      return -log_abs(w - wp) + log_abs(std::conj(w) * wp - 1.0);
    }
  }
  throw UnsupportedError("unknown geometry");
}

double self_potential(const BoundaryGeometry& g, Complex z) {
  if (!g.in_interior(z)) throw DomainError("self energy diverges on or outside the boundary");
  using K = BoundaryGeometry::Kind;
  switch (g.kind()) {
    case K::FreePlane: return 0.0;
    case K::HalfPlaneConductor: return log_abs(std::conj(z) - z);
    case K::QuarterPlane:
      return log_abs(std::conj(z) - z) - log_abs(std::conj(z) + z) - log_abs(2.0 * z);
    case K::DiscExteriorConductor: {
      const double r = g.radius();
      return log_abs(z - r * r / std::conj(z));
    }
    case K::ConformalExterior: {
      const Complex w = g.map()(z);
      return log_abs(w - 1.0 / std::conj(w));
    }
  }
  throw UnsupportedError("unknown geometry");
}

double harmonic_potential(const BoundaryGeometry& g, Complex z, const TimesVector& times) {
  validate_real_mode(g.time_convention(), times);
  using K = BoundaryGeometry::Kind;
  switch (g.kind()) {
    case K::FreePlane: {
      if (times.discrete_index() != 0) {
        throw ModeError("the free-plane field carries no discrete-index term");
      }
      Complex acc = 0.0, zp = 1.0, zbp = 1.0;
      for (int p = 1; p <= times.max_order(); ++p) {
        zp *= z;
        zbp *= std::conj(z);
        acc += zp * times.t(p) + zbp * times.tbar(p);
      }
      return -0.5 * acc.real();
    }
    case K::HalfPlaneConductor: {
      Complex acc = 0.0, zp = 1.0, zbp = 1.0;
      for (int p = 1; p <= times.max_order(); ++p) {
        zp *= z;
        zbp *= std::conj(z);
        acc += (zp - zbp) * times.t(p);
      }
      return -0.5 * acc.real();
    }
    case K::QuarterPlane: {
      Complex acc = 0.0, zp = 1.0, zbp = 1.0;
      for (int p = 1; p <= times.max_order(); ++p) {
        zp *= z;
        zbp *= std::conj(z);
        if (p % 2 == 1) acc += (zp + zbp) * times.t(p);
      }
      return -0.5 * acc.real();
    }
    case K::DiscExteriorConductor: return unit_disc_harmonic(z / g.radius(), times);
    case K::ConformalExterior: return unit_disc_harmonic(g.map()(z), times);
  }
  throw UnsupportedError("unknown geometry");
}

double external_potential(const BoundaryGeometry& g, Complex z, double confining,
                          const TimesVector& times) {
  return confining + harmonic_potential(g, z, times);
}

}  // namespace solgas

namespace solgas {

std::vector<WallPoint> wall_points(const BoundaryGeometry& g, std::size_t per_wall, double extent) {
  std::vector<WallPoint> out;
  const auto n = static_cast<double>(per_wall);
  auto segment = [&](Complex from, Complex to, Complex normal, bool conductor) {
    for (std::size_t k = 0; k < per_wall; ++k) {
      const double s = (static_cast<double>(k) + 0.5) / n;
      out.push_back({from + s * (to - from), normal, conductor});
    }
  };
  auto circle = [&](double r) {
    for (std::size_t k = 0; k < per_wall; ++k) {
      const Complex u = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n);
      out.push_back({r * u, u, true});
    }
  };
  using K = BoundaryGeometry::Kind;
  switch (g.kind()) {
    case K::FreePlane: break;
    case K::HalfPlaneConductor: segment(-extent, extent, Complex(0, 1), true); break;
    case K::QuarterPlane:
      segment(Complex(0, 0), Complex(0, extent), 1.0, true);
      segment(0.0, extent, Complex(0, 1), false);
      break;
    case K::DiscExteriorConductor: circle(g.radius()); break;
    case K::ConformalExterior:
      if (g.map().kind() == ConformalMap::Kind::Scale) circle(g.map().radius());
      if (g.map().kind() == ConformalMap::Kind::JoukowskiInverse) {
        segment(-2.0, 2.0, Complex(0, 1), true);
      }
      break;
  }
  return out;
}

double wall_normal_derivative(const BoundaryGeometry& g, const WallPoint& wall, Complex zp,
                              double h) {
  const Complex z0 = wall.point, n = wall.inward_normal;
  return (-3.0 * pair_potential(g, z0, zp) + 4.0 * pair_potential(g, z0 + h * n, zp) -
          pair_potential(g, z0 + 2.0 * h * n, zp)) /
         (2.0 * h);
}

double potential_laplacian(const BoundaryGeometry& g, Complex z, Complex zp, double h) {
  const Complex dx(h, 0.0), dy(0.0, h);
  return (pair_potential(g, z + dx, zp) + pair_potential(g, z - dx, zp) + pair_potential(g, z + dy, zp) +
          pair_potential(g, z - dy, zp) - 4.0 * pair_potential(g, z, zp)) /
         (h * h);
}

}  // namespace solgas
