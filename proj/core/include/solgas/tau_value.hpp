#pragma once

#include <complex>
#include <limits>

namespace solgas {

using Complex = std::complex<double>;

// A value carried as phase * exp(log_magnitude), or an exact zero.
class TauValue {
 public:
  TauValue() = default;  // zero

  static TauValue zero() { return {}; }
  static TauValue one() { return from_log(0.0); }
  static TauValue from_log(double log_magnitude, Complex phase = 1.0);
  static TauValue from_complex(Complex v);
  static TauValue from_real(double v) { return from_complex(Complex(v, 0.0)); }

  bool is_zero() const { return zero_; }
  double log_magnitude() const;
  Complex phase_factor() const { return phase_; }

  // Decoded value; may overflow to infinity for large log magnitudes.
  Complex value() const;
  // value() * exp(-log_scale), computed without overflow of the intermediate.
  Complex scaled(double log_scale) const;
  // Principal complex log; requires nonzero.
  Complex log() const;

  TauValue& operator*=(const TauValue& other);
  TauValue& operator/=(const TauValue& other);
  TauValue& operator+=(const TauValue& other);
  TauValue& operator-=(const TauValue& other);
  TauValue negated() const;
  TauValue scaled_by_log(double log_factor) const;

  friend TauValue operator*(TauValue a, const TauValue& b) { return a *= b; }
  friend TauValue operator/(TauValue a, const TauValue& b) { return a /= b; }
  friend TauValue operator+(TauValue a, const TauValue& b) { return a += b; }
  friend TauValue operator-(TauValue a, const TauValue& b) { return a -= b; }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  Complex phase_ = 1.0;
  bool zero_ = true;
};

// |a - b| / max(|a|, |b|), evaluated in log space; 0 when both vanish.
double relative_difference(const TauValue& a, const TauValue& b);

// Phase-aware running sum with a moving log-scale and Neumaier compensation.
class ScaledSum {
 public:
  // Adds factor * exp(log_abs); factor is a phase or a modest moment weight.
  void add(double log_abs, Complex factor);
  void add_real(double log_abs) { add(log_abs, 1.0); }
  void merge(const ScaledSum& other);
  TauValue result() const;
  double log_scale() const { return log_scale_; }
  // Sum divided by exp(log_scale()).
  Complex scaled_value() const { return sum_ + comp_; }
  void rescale_to(double new_log_scale);

 private:
  double log_scale_ = -std::numeric_limits<double>::infinity();
  Complex sum_ = 0.0;
  Complex comp_ = 0.0;
};

}  // namespace solgas
