#pragma once

#include <functional>
#include <span>

#include "solgas/tau_value.hpp"

namespace solgas {

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// Observed order from errors at steps h and h / ratio.
double observed_order(double coarse_error, double fine_error, double ratio = 2.0);

// Second-order central difference of f at x with step h.
Complex central_difference(const std::function<Complex(double)>& f, double x, double h);

// Trapezoidal rule on the circle |z| = r with M points of (1/(2 pi i)) \oint f(z) dz, together
// with the discrete L1 norm mean |f(z) z| used as the magnitude scale of the integral.
struct ContourIntegral {
  Complex value;
  double scale;
};
ContourIntegral circle_integral(const std::function<Complex(Complex)>& f, double radius,
                                std::size_t points);

}  // namespace solgas
