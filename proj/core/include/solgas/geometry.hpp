#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "solgas/soliton.hpp"
#include "solgas/tau_value.hpp"

namespace solgas {

// Map from an exterior domain onto the exterior of the unit disc.
class ConformalMap {
 public:
  enum class Kind { Scale, JoukowskiInverse, Sampled };

  static ConformalMap scale(double radius);
  // Inverse of w -> w + 1/w; sends the exterior of the segment [-2, 2] to |w| > 1.
  static ConformalMap joukowski_inverse();
  static ConformalMap sampled(std::function<Complex(Complex)> map, std::string name);

  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  const std::string& name() const { return name_; }
  // Image point; DomainError when the result falls inside the unit disc.
  Complex operator()(Complex z) const;

 private:
  ConformalMap(Kind kind, double radius, std::function<Complex(Complex)> map, std::string name);

  Kind kind_;
  double radius_ = 1.0;
  std::function<Complex(Complex)> map_;
  std::string name_;
};

class BoundaryGeometry {
 public:
  enum class Kind { FreePlane, HalfPlaneConductor, QuarterPlane, DiscExteriorConductor, ConformalExterior };

  static BoundaryGeometry free_plane();
  static BoundaryGeometry half_plane();
  static BoundaryGeometry quarter_plane();
  static BoundaryGeometry disc_exterior(double radius);
  static BoundaryGeometry conformal_exterior(ConformalMap map);

  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  const ConformalMap& map() const;
  // Hierarchy whose time pairing makes the harmonic field real in this geometry.
  HierarchyKind time_convention() const;

  bool in_closure(Complex z) const;
  bool in_interior(Complex z) const;

 private:
  explicit BoundaryGeometry(Kind kind, double radius = 1.0,
                            std::shared_ptr<const ConformalMap> map = nullptr);

  Kind kind_;
  double radius_;
  std::shared_ptr<const ConformalMap> map_;
};

std::string_view geometry_name(BoundaryGeometry::Kind kind);

// Interaction of unit charges at z and z' including their images.
double pair_potential(const BoundaryGeometry& geometry, Complex z, Complex zp);
// Interaction of a unit charge with its own images.
double self_potential(const BoundaryGeometry& geometry, Complex z);
// Harmonic part of the external field generated by the times (and the Toda index).
double harmonic_potential(const BoundaryGeometry& geometry, Complex z, const TimesVector& times);
double external_potential(const BoundaryGeometry& geometry, Complex z, double confining,
                          const TimesVector& times);

struct WallPoint {
  Complex point;
  Complex inward_normal;
  bool conductor;  // false for a dielectric (reflecting) wall
};

// `per_wall` evenly spaced points on each wall; straight walls are sampled on (0, extent] or
// [-extent, extent]. Sampled maps have no known wall and return nothing.
std::vector<WallPoint> wall_points(const BoundaryGeometry& geometry, std::size_t per_wall,
                                   double extent = 2.0);

// Normal derivative of V(., zp) at a wall point from the one-sided stencil
// (-3 V(0) + 4 V(h) - V(2h)) / 2h, which stays inside the domain.
double wall_normal_derivative(const BoundaryGeometry& geometry, const WallPoint& wall, Complex zp,
                              double h);

// Five-point Laplacian of V(., zp) at z with step h.
double potential_laplacian(const BoundaryGeometry& geometry, Complex z, Complex zp, double h);

}  // namespace solgas
