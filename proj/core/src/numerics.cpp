#include "solgas/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "solgas/errors.hpp"

namespace solgas {

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("slope fit needs equal-length samples");
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double observed_order(double coarse_error, double fine_error, double ratio) {
  return std::log(coarse_error / fine_error) / std::log(ratio);
}

Complex central_difference(const std::function<Complex(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

ContourIntegral circle_integral(const std::function<Complex(Complex)>& f, double radius,
                                std::size_t points) {
  if (points == 0) throw RangeError("quadrature needs at least one point");
  Complex sum = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
    const Complex z = std::polar(radius, theta);
    const Complex fz = f(z) * z;
    sum += fz;
    norm += std::abs(fz);
  }
  const double m = static_cast<double>(points);
  return {sum / m, norm / m};
}

}  // namespace solgas
