#include "solgas/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace solgas {

namespace {

constexpr double kPoleTolerance = 1e-13;

// x + y, rejecting near-cancellation relative to the operand scale.
Complex checked_sum(Complex x, Complex y, const char* what) {
  const Complex d = x + y;
  if (std::abs(d) <= kPoleTolerance * (std::abs(x) + std::abs(y))) {
    throw PoleError(std::string("vanishing denominator in ") + what);
  }
  return d;
}

Complex ipow(Complex base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  Complex out = 1.0;
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

void require_nonzero(const MomentumPair& p) {
  if (p.a == Complex(0.0) || p.b == Complex(0.0)) {
    throw DomainError("Toda momenta must be nonzero");
  }
}

}  // namespace

std::string_view hierarchy_name(HierarchyKind kind) {
  switch (kind) {
    case HierarchyKind::KP: return "kp";
    case HierarchyKind::BKP: return "bkp";
    case HierarchyKind::Toda2D: return "toda";
  }
  return "unknown";
}

HierarchyKind parse_hierarchy(std::string_view name) {
  if (name == "kp" || name == "KP") return HierarchyKind::KP;
  if (name == "bkp" || name == "BKP") return HierarchyKind::BKP;
  if (name == "toda" || name == "toda2d" || name == "TODA2D" || name == "2dtl") {
    return HierarchyKind::Toda2D;
  }
  throw ValidationError("unknown hierarchy kind '" + std::string(name) + "'");
}

TimesVector::TimesVector(int max_order) {
  if (max_order < 1) throw RangeError("truncation order must be positive");
  t_.assign(static_cast<std::size_t>(max_order), 0.0);
  tbar_.assign(static_cast<std::size_t>(max_order), 0.0);
}

void TimesVector::check_index(int p) const {
  if (p < 1) throw RangeError("time index must be positive, got " + std::to_string(p));
  if (p > max_order()) {
    throw TruncationError("time index " + std::to_string(p) + " exceeds truncation order " +
                          std::to_string(max_order()));
  }
}

Complex TimesVector::t(int p) const {
  check_index(p);
  return t_[static_cast<std::size_t>(p - 1)];
}

Complex TimesVector::tbar(int p) const {
  check_index(p);
  return tbar_[static_cast<std::size_t>(p - 1)];
}

void TimesVector::set_t(int p, Complex value) {
  check_index(p);
  t_[static_cast<std::size_t>(p - 1)] = value;
}

void TimesVector::set_tbar(int p, Complex value) {
  check_index(p);
  tbar_[static_cast<std::size_t>(p - 1)] = value;
}

bool TimesVector::any_tbar() const {
  for (const auto& v : tbar_) {
    if (v != Complex(0.0)) return true;
  }
  return false;
}

int TimesVector::highest_order() const {
  for (int p = max_order(); p >= 1; --p) {
    if (t(p) != Complex(0.0) || tbar(p) != Complex(0.0)) return p;
  }
  return 0;
}

TimesVector TimesVector::scaled(double factor) const {
  TimesVector out = *this;
  double f = 1.0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    f *= factor;
    out.t_[i] *= f;
    out.tbar_[i] *= f;
  }
  return out;
}

void validate_times(HierarchyKind kind, const TimesVector& times) {
  if (kind == HierarchyKind::Toda2D) return;
  if (times.any_tbar() || times.discrete_index() != 0) {
    throw ModeError("conjugate times and the discrete index exist only for the Toda hierarchy");
  }
  if (kind == HierarchyKind::BKP) {
    for (int p = 2; p <= times.max_order(); p += 2) {
      if (times.t(p) != Complex(0.0)) {
        throw ModeError("BKP uses odd times only; t_" + std::to_string(p) + " is nonzero");
      }
    }
  }
}

bool is_real_mode(HierarchyKind kind, const TimesVector& times, double tol) {
  for (int p = 1; p <= times.max_order(); ++p) {
    const Complex t = times.t(p);
    const double s = std::max(1.0, std::abs(t));
    switch (kind) {
      case HierarchyKind::KP:
        if (std::abs(t.real()) > tol * s) return false;
        break;
      case HierarchyKind::BKP:
        if (std::abs(t.imag()) > tol * s) return false;
        break;
      case HierarchyKind::Toda2D:
        if (std::abs(times.tbar(p) - std::conj(t)) > tol * s) return false;
        break;
    }
  }
  return true;
}

void validate_real_mode(HierarchyKind kind, const TimesVector& times, double tol) {
  validate_times(kind, times);
  if (!is_real_mode(kind, times, tol)) {
    switch (kind) {
      case HierarchyKind::KP: throw ModeError("real-potential mode needs purely imaginary KP times");
      case HierarchyKind::BKP: throw ModeError("real-potential mode needs real BKP times");
      case HierarchyKind::Toda2D:
        throw ModeError("real-potential mode needs tbar_p = conj(t_p)");
    }
  }
}

Complex interaction_factor(HierarchyKind kind, const MomentumPair& p1, const MomentumPair& p2) {
  const Complex a1 = p1.a, b1 = p1.b, a2 = p2.a, b2 = p2.b;
  switch (kind) {
    case HierarchyKind::KP:
      return (a1 - a2) * (b1 - b2) /
             (checked_sum(a1, b2, "KP phase shift") * checked_sum(b1, a2, "KP phase shift"));
    case HierarchyKind::BKP:
      return (a1 - a2) * (b1 - b2) * (a1 - b2) * (b1 - a2) /
             (checked_sum(a1, a2, "BKP phase shift") * checked_sum(b1, b2, "BKP phase shift") *
              checked_sum(a1, b2, "BKP phase shift") * checked_sum(b1, a2, "BKP phase shift"));
    case HierarchyKind::Toda2D:
      return (a1 - a2) * (b1 - b2) /
             (checked_sum(a1, -b2, "Toda phase shift") * checked_sum(b1, -a2, "Toda phase shift"));
  }
  throw UnsupportedError("unknown hierarchy kind");
}

PhaseShift phase_shift(HierarchyKind kind, const MomentumPair& p1, const MomentumPair& p2) {
  const Complex l = interaction_factor(kind, p1, p2);
  const Complex a = l == Complex(0.0)
                        ? Complex(-std::numeric_limits<double>::infinity(), 0.0)
                        : std::log(l);
  return {l, a};
}

Complex soliton_phase(HierarchyKind kind, const MomentumPair& p, Complex initial_phase,
                      const TimesVector& times) {
  validate_times(kind, times);
  Complex phi = initial_phase;
  const int order = times.max_order();
  switch (kind) {
    case HierarchyKind::KP: {
      Complex ap = 1.0, mbp = 1.0;
      for (int n = 1; n <= order; ++n) {
        ap *= p.a;
        mbp *= -p.b;
        phi += (ap - mbp) * times.t(n);
      }
      break;
    }
    case HierarchyKind::BKP: {
      Complex ap = 1.0, bp = 1.0;
      for (int k = 1; k <= order; ++k) {
        ap *= p.a;
        bp *= p.b;
        if (k % 2 == 1) phi += (ap + bp) * times.t(k);
      }
      break;
    }
    case HierarchyKind::Toda2D: {
      require_nonzero(p);
      const int m = times.discrete_index();
      phi += static_cast<double>(m) * (std::log(p.a) - std::log(p.b));
      Complex ap = 1.0, bp = 1.0, ai = 1.0, bi = 1.0;
      for (int k = 1; k <= order; ++k) {
        ap *= p.a;
        bp *= p.b;
        ai /= p.a;
        bi /= p.b;
        phi += (ap - bp) * times.t(k) - (ai - bi) * times.tbar(k);
      }
      break;
    }
  }
  return phi;
}

SolitonSystem::SolitonSystem(HierarchyKind kind, std::vector<MomentumPair> momenta,
                             std::vector<Complex> initial_phases)
    : kind_(kind), momenta_(std::move(momenta)), phases_(std::move(initial_phases)) {
  if (momenta_.size() != phases_.size()) {
    throw ValidationError("momenta and initial phases differ in length");
  }
  const std::size_t n = momenta_.size();
  if (kind_ == HierarchyKind::Toda2D) {
    for (const auto& p : momenta_) require_nonzero(p);
  }
  factors_.assign(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex l = interaction_factor(kind_, momenta_[i], momenta_[j]);
      if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
        throw PoleError("non-finite interaction factor for solitons " + std::to_string(i) +
                        ", " + std::to_string(j));
      }
      factors_[i * n + j] = l;
      factors_[j * n + i] = l;
    }
  }
}

Complex shift_factor(HierarchyKind kind, const MomentumPair& p, const TimeShift& shift) {
  if (shift.count == 0) return 1.0;
  const Complex z = shift.point;
  if (z == Complex(0.0)) throw PoleError("shift point must be nonzero");
  if (shift.side == ShiftSide::Negative && kind != HierarchyKind::Toda2D) {
    throw ModeError("negative-side shifts exist only for the Toda hierarchy");
  }
  switch (kind) {
    case HierarchyKind::KP:
      return ipow((z + p.b) / checked_sum(z, -p.a, "KP shift factor"), shift.count);
    case HierarchyKind::BKP: {
      if (shift.count % 2 != 0) throw ModeError("BKP shifts come in multiples of 2[1/z]");
      const Complex base = (z + p.a) / checked_sum(z, -p.a, "BKP shift factor") * (z + p.b) /
                           checked_sum(z, -p.b, "BKP shift factor");
      return ipow(base, shift.count / 2);
    }
    case HierarchyKind::Toda2D: {
      require_nonzero(p);
      if (shift.side == ShiftSide::Positive) {
        return ipow((z - p.b) / checked_sum(z, -p.a, "Toda shift factor"), shift.count);
      }
      return ipow(p.a * (p.b - z) / (p.b * checked_sum(p.a, -z, "Toda shift factor")),
                  shift.count);
    }
  }
  throw UnsupportedError("unknown hierarchy kind");
}

IsingModel hirota_model(const SolitonSystem& system, const TimesVector& times,
                        std::span<const TimeShift> shifts) {
  const std::size_t n = system.size();
  IsingModel model(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) model.set_coupling(i, j, LogFactor::of(system.factor(i, j)));
    const MomentumPair& p = system.momenta()[i];
    LogFactor f = LogFactor::exp_of(soliton_phase(system.kind(), p, system.initial_phases()[i], times));
    for (const auto& s : shifts) f *= LogFactor::of(shift_factor(system.kind(), p, s));
    model.set_field(i, f);
  }
  return model;
}

TauValue tau_hirota(const SolitonSystem& system, const TimesVector& times,
                    const EnumerationOptions& options) {
  return sum_all(hirota_model(system, times), options);
}

TauValue tau_shifted(const SolitonSystem& system, const TimesVector& times,
                     std::span<const TimeShift> shifts, const EnumerationOptions& options) {
  return sum_all(hirota_model(system, times, shifts), options);
}

Complex toda_vacuum_exponent(const TimesVector& times, std::span<const TimeShift> shifts) {
  bool positive = false, negative = false;
  for (const auto& s : shifts) {
    if (s.count == 0) continue;
    (s.side == ShiftSide::Positive ? positive : negative) = true;
  }
  if (positive && negative) {
    throw UnsupportedError("vacuum factor with shifts on both time sides is not finite-form");
  }
  Complex out = 0.0;
  for (int p = 1; p <= times.max_order(); ++p) {
    Complex tp = times.t(p);
    Complex sp = times.negative(p);
    for (const auto& s : shifts) {
      const Complex delta = static_cast<double>(s.count) * std::pow(s.point, s.side == ShiftSide::Positive ? -p : p) / static_cast<double>(p);
      (s.side == ShiftSide::Positive ? tp : sp) += delta;
    }
    out -= static_cast<double>(p) * tp * sp;
  }
  return out;
}

}  // namespace solgas
