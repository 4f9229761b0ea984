#include "solgas/matrix_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace solgas {

namespace {

double harmonic_log_weight(Complex z, const TimesVector& times) {
  // -2 U_harm = Re sum_p (z^p t_p + conj(z)^p tbar_p)
  Complex acc = 0.0, zp = 1.0, zbp = 1.0;
  for (int p = 1; p <= times.max_order(); ++p) {
    zp *= z;
    zbp *= std::conj(z);
    acc += zp * times.t(p) + zbp * times.tbar(p);
  }
  return acc.real();
}

// Greedy Leja ordering: start from the largest modulus, then maximise the product of distances.
std::vector<std::size_t> leja_order(std::span<const Complex> points, std::size_t count) {
  const std::size_t n = points.size();
  std::vector<std::size_t> order;
  std::vector<double> log_dist(n, 0.0);
  std::vector<std::uint8_t> used(n, 0);
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(points[i]) > std::abs(points[first])) first = i;
  }
  order.push_back(first);
  used[first] = 1;
  while (order.size() < count) {
    const Complex last = points[order.back()];
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      log_dist[i] += std::log(std::abs(points[i] - last));
      if (best == n || log_dist[i] > log_dist[best]) best = i;
    }
    order.push_back(best);
    used[best] = 1;
  }
  return order;
}

}  // namespace

Complex GriddedDensity::center(std::size_t ix, std::size_t iy) const {
  return lower_left + Complex((static_cast<double>(ix) + 0.5) * dx, (static_cast<double>(iy) + 0.5) * dy);
}

double GriddedDensity::total_mass() const {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum * cell_area();
}

void GriddedDensity::normalize_to(double mass) {
  const double current = total_mass();
  if (!(current > 0.0) || !(mass > 0.0)) throw ValidationError("cannot normalize an empty density");
  for (double& v : values) v *= mass / current;
}

GriddedDensity GriddedDensity::sample(const std::function<double(Complex)>& density,
                                      Complex lower_left, Complex upper_right, std::size_t nx,
                                      std::size_t ny) {
  if (nx == 0 || ny == 0) throw RangeError("grid needs at least one cell per side");
  GriddedDensity g;
  g.lower_left = lower_left;
  g.dx = (upper_right.real() - lower_left.real()) / static_cast<double>(nx);
  g.dy = (upper_right.imag() - lower_left.imag()) / static_cast<double>(ny);
  if (!(g.dx > 0.0) || !(g.dy > 0.0)) throw RangeError("grid box has nonpositive extent");
  g.nx = nx;
  g.ny = ny;
  g.values.resize(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) g.values[iy * nx + ix] = density(g.center(ix, iy));
  }
  return g;
}

Measure::Measure(std::vector<Complex> support, std::vector<double> weights, const TimesVector& times)
    : support_(std::move(support)), weights_(std::move(weights)) {
  validate_real_mode(HierarchyKind::Toda2D, times);
  for (std::size_t i = 0; i < support_.size(); ++i) {
    weights_[i] *= std::exp(harmonic_log_weight(support_[i], times));
  }
}

Measure Measure::discrete(std::vector<Complex> sites, std::vector<double> weights,
                          const TimesVector& times) {
  if (sites.size() != weights.size()) throw ValidationError("sites and weights differ in length");
  for (const double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("discrete weights must be positive");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i] == sites[j]) throw CoincidenceError("discrete measure sites coincide");
    }
  }
  return Measure(std::move(sites), std::move(weights), times);
}

Measure Measure::from_lattice(std::vector<Complex> sites, const ConfiningPotential& confining,
                              const TimesVector& times) {
  std::vector<double> w;
  w.reserve(sites.size());
  for (const Complex z : sites) w.push_back(std::exp(-2.0 * (confining ? confining(z) : 0.0)));
  return discrete(std::move(sites), std::move(w), times);
}

Measure Measure::gridded(const GriddedDensity& density, const ConfiningPotential& confining,
                         const TimesVector& times) {
  if (density.values.size() != density.nx * density.ny) {
    throw ValidationError("grid values do not match the grid shape");
  }
  std::vector<Complex> support;
  std::vector<double> w;
  for (std::size_t iy = 0; iy < density.ny; ++iy) {
    for (std::size_t ix = 0; ix < density.nx; ++ix) {
      const double rho = density.values[iy * density.nx + ix];
      if (rho < 0.0 || !std::isfinite(rho)) throw ValidationError("grid density must be nonnegative");
      if (rho == 0.0) continue;
      const Complex c = density.center(ix, iy);
      support.push_back(c);
      w.push_back(rho * density.cell_area() * std::exp(-2.0 * (confining ? confining(c) : 0.0)));
    }
  }
  return Measure(std::move(support), std::move(w), times);
}

Eigen::MatrixXcd moment_matrix(const Measure& measure, std::size_t m) {
  if (m == 0) throw RangeError("moment matrix needs m >= 1");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::vector<Complex> powers(m);
  for (std::size_t i = 0; i < measure.size(); ++i) {
    const Complex z = measure.support()[i];
    powers[0] = 1.0;
    for (std::size_t j = 1; j < m; ++j) powers[j] = powers[j - 1] * z;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) +=
            measure.weights()[i] * powers[j] * std::conj(powers[k]);
      }
    }
  }
  return out;
}

DeterminantResult determinant_partition(const Measure& measure, std::size_t m) {
  if (m == 0) return {TauValue::one(), false};
  const std::size_t s = measure.size();
  if (m > s) return {TauValue::zero(), true};
  const auto support = measure.support();
  const auto nodes = leja_order(support, m);
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
  std::vector<Complex> basis(s, 1.0);
  double log_det = 0.0;
  double log_column_scale = 0.0;  // column j is p_j divided by exp(log_column_scale)
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) {
      const Complex node = support[nodes[j - 1]];
      for (std::size_t i = 0; i < s; ++i) basis[i] *= support[i] - node;
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < s; ++i) norm2 += measure.weights()[i] * std::norm(basis[i]);
    if (!(norm2 > 0.0)) return {TauValue::zero(), true};
    const double norm = std::sqrt(norm2);
    for (std::size_t i = 0; i < s; ++i) {
      // Keep the basis itself O(1) so products of many node distances cannot overflow.
      basis[i] /= norm;
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sqrt(measure.weights()[i]) * basis[i];
    }
    log_column_scale += std::log(norm);
    log_det += 2.0 * log_column_scale;
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(static_cast<Eigen::Index>(m)).triangularView<Eigen::Upper>();
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
    const double d = std::abs(r(j, j));
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
    if (d == 0.0) return {TauValue::zero(), true};
    log_det += 2.0 * std::log(d);
  }
  return {TauValue::from_log(log_det), rmin < 1e-13 * rmax};
}

TauValue continuous_partition(const GriddedDensity& density, std::size_t m,
                              const ConfiningPotential& confining, const TimesVector& times) {
  return determinant_partition(Measure::gridded(density, confining, times), m).value;
}

RefinementStudy refine_continuous_partition(const std::function<double(Complex)>& density,
                                            Complex lower_left, Complex upper_right, std::size_t m,
                                            std::size_t base_resolution, std::size_t levels,
                                            double tolerance, const ConfiningPotential& confining,
                                            const TimesVector& times) {
  if (levels < 2) throw RangeError("a refinement study needs at least two levels");
  RefinementStudy study;
  std::size_t n = base_resolution;
  for (std::size_t level = 0; level < levels; ++level, n *= 2) {
    const auto grid = GriddedDensity::sample(density, lower_left, upper_right, n, n);
    const TauValue v = continuous_partition(grid, m, confining, times);
    const double change = study.levels.empty()
                              ? std::numeric_limits<double>::quiet_NaN()
                              : relative_difference(v, study.levels.back().value);
    study.levels.push_back({n, v, change});
  }
  study.estimate = study.levels.back().value;
  study.estimated_error = study.levels.back().relative_change;
  if (!(study.estimated_error <= tolerance)) {
    throw NonConvergenceError("grid refinement changed the partition function by " +
                              std::to_string(study.estimated_error));
  }
  return study;
}

}  // namespace solgas
