#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "solgas/gas.hpp"
#include "solgas/soliton.hpp"

namespace solgas {

// Cell-centred samples of a nonnegative density on an nx-by-ny grid, row-major in y.
struct GriddedDensity {
  Complex lower_left = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;

  double cell_area() const { return dx * dy; }
  double total_mass() const;
  // Rescales the density so that its midpoint-rule integral equals `mass`.
  void normalize_to(double mass);
  Complex center(std::size_t ix, std::size_t iy) const;
  static GriddedDensity sample(const std::function<double(Complex)>& density, Complex lower_left,
                               Complex upper_right, std::size_t nx, std::size_t ny);
};

// Positive point masses; the harmonic factor exp(-2 U_harm) is folded into the weights.
class Measure {
 public:
  static Measure discrete(std::vector<Complex> sites, std::vector<double> weights,
                          const TimesVector& times = TimesVector{});
  // Unit mass per site times exp(-2 U(site)).
  static Measure from_lattice(std::vector<Complex> sites, const ConfiningPotential& confining,
                              const TimesVector& times = TimesVector{});
  // Midpoint rule: each cell contributes density * area * exp(-2 U(center)).
  static Measure gridded(const GriddedDensity& density, const ConfiningPotential& confining,
                         const TimesVector& times = TimesVector{});

  std::span<const Complex> support() const { return support_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

 private:
  Measure(std::vector<Complex> support, std::vector<double> weights, const TimesVector& times);

  std::vector<Complex> support_;
  std::vector<double> weights_;
};

// M_jk = sum_i w_i z_i^j conj(z_i)^k for j, k < m.
Eigen::MatrixXcd moment_matrix(const Measure& measure, std::size_t m);

struct DeterminantResult {
  TauValue value;
  bool rank_deficient = false;
};

// det of the m-by-m moment matrix, computed as a Gram determinant in a Newton basis on
// Leja-ordered support points.
DeterminantResult determinant_partition(const Measure& measure, std::size_t m);

struct RefinementLevel {
  std::size_t resolution;
  TauValue value;
  double relative_change;  // against the previous level; NaN on the first
};

struct RefinementStudy {
  std::vector<RefinementLevel> levels;
  TauValue estimate;
  double estimated_error = 0.0;
};

TauValue continuous_partition(const GriddedDensity& density, std::size_t m,
                              const ConfiningPotential& confining = {},
                              const TimesVector& times = TimesVector{});

// Doubles the grid resolution `levels - 1` times starting from `base_resolution` cells per side.
RefinementStudy refine_continuous_partition(const std::function<double(Complex)>& density,
                                            Complex lower_left, Complex upper_right, std::size_t m,
                                            std::size_t base_resolution, std::size_t levels,
                                            double tolerance,
                                            const ConfiningPotential& confining = {},
                                            const TimesVector& times = TimesVector{});

}  // namespace solgas
