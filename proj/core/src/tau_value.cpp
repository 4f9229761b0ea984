#include "solgas/tau_value.hpp"

#include <algorithm>
#include <cmath>

namespace solgas {

namespace {

constexpr double kRescaleHeadroom = 30.0;

void neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

}  // namespace

TauValue TauValue::from_log(double log_magnitude, Complex phase) {
  TauValue out;
  const double mod = std::abs(phase);
  if (mod == 0.0 || (std::isinf(log_magnitude) && log_magnitude < 0)) return out;
  out.zero_ = false;
  out.log_mag_ = log_magnitude + std::log(mod);
  out.phase_ = phase / mod;
  return out;
}

TauValue TauValue::from_complex(Complex v) {
  if (v == Complex(0.0, 0.0)) return {};
  return from_log(0.0, v);
}

double TauValue::log_magnitude() const { return log_mag_; }

Complex TauValue::value() const {
  if (zero_) return 0.0;
  return phase_ * std::exp(log_mag_);
}

Complex TauValue::scaled(double log_scale) const {
  if (zero_) return 0.0;
  return phase_ * std::exp(log_mag_ - log_scale);
}

Complex TauValue::log() const { return {log_mag_, std::arg(phase_)}; }

TauValue& TauValue::operator*=(const TauValue& other) {
  if (zero_ || other.zero_) {
    *this = TauValue{};
    return *this;
  }
  log_mag_ += other.log_mag_;
  phase_ *= other.phase_;
  phase_ /= std::abs(phase_);
  return *this;
}

TauValue& TauValue::operator/=(const TauValue& other) {
  if (other.zero_) {
    // Division by an exact zero: represent as +inf magnitude.
    log_mag_ = std::numeric_limits<double>::infinity();
    zero_ = false;
    return *this;
  }
  if (zero_) return *this;
  log_mag_ -= other.log_mag_;
  phase_ /= other.phase_;
  phase_ /= std::abs(phase_);
  return *this;
}

TauValue& TauValue::operator+=(const TauValue& other) {
  if (other.zero_) return *this;
  if (zero_) {
    *this = other;
    return *this;
  }
  const double ref = std::max(log_mag_, other.log_mag_);
  *this = from_log(ref, scaled(ref) + other.scaled(ref));
  return *this;
}

TauValue& TauValue::operator-=(const TauValue& other) { return *this += other.negated(); }

TauValue TauValue::negated() const {
  TauValue out = *this;
  out.phase_ = -out.phase_;
  return out;
}

TauValue TauValue::scaled_by_log(double log_factor) const {
  TauValue out = *this;
  if (!zero_) out.log_mag_ += log_factor;
  return out;
}

double relative_difference(const TauValue& a, const TauValue& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return 1.0;
  const double ref = std::max(a.log_magnitude(), b.log_magnitude());
  return std::abs(a.scaled(ref) - b.scaled(ref));
}

void ScaledSum::rescale_to(double new_log_scale) {
  if (std::isinf(log_scale_)) {
    log_scale_ = new_log_scale;
    return;
  }
  const double f = std::exp(log_scale_ - new_log_scale);
  sum_ *= f;
  comp_ *= f;
  log_scale_ = new_log_scale;
}

void ScaledSum::add(double log_abs, Complex factor) {
  if (std::isinf(log_abs) && log_abs < 0) return;
  if (log_abs > log_scale_ + kRescaleHeadroom || std::isinf(log_scale_)) rescale_to(log_abs);
  const Complex x = factor * std::exp(log_abs - log_scale_);
  double re = sum_.real(), im = sum_.imag();
  double cre = comp_.real(), cim = comp_.imag();
  neumaier_add(re, cre, x.real());
  neumaier_add(im, cim, x.imag());
  sum_ = {re, im};
  comp_ = {cre, cim};
}

void ScaledSum::merge(const ScaledSum& other) {
  if (std::isinf(other.log_scale_)) return;
  if (std::isinf(log_scale_)) {
    *this = other;
    return;
  }
  const double target = std::max(log_scale_, other.log_scale_);
  rescale_to(target);
  const double f = std::exp(other.log_scale_ - target);
  const Complex parts[2] = {other.sum_ * f, other.comp_ * f};
  for (const Complex& x : parts) {
    double re = sum_.real(), im = sum_.imag();
    double cre = comp_.real(), cim = comp_.imag();
    neumaier_add(re, cre, x.real());
    neumaier_add(im, cim, x.imag());
    sum_ = {re, im};
    comp_ = {cre, cim};
  }
}

TauValue ScaledSum::result() const {
  const Complex v = sum_ + comp_;
  if (std::isinf(log_scale_) || v == Complex(0.0, 0.0)) return TauValue::zero();
  return TauValue::from_log(log_scale_, v);
}

}  // namespace solgas
