#include "solgas/hierarchy.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "solgas/numerics.hpp"

namespace solgas {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct JetSink {
  const std::vector<Complex>* cx;
  const std::vector<Complex>* cy;
  ScaledSum s0, sx, sy, sxy;

  void visit(const Term& t) {
    Complex x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < t.occupation.size(); ++i) {
      if (!t.occupation[i]) continue;
      x += (*cx)[i];
      y += (*cy)[i];
    }
    const Complex ph = t.phase();
    s0.add(t.log_abs, ph);
    sx.add(t.log_abs, ph * x);
    sy.add(t.log_abs, ph * y);
    sxy.add(t.log_abs, ph * x * y);
  }
  void merge(const JetSink& o) {
    s0.merge(o.s0);
    sx.merge(o.sx);
    sy.merge(o.sy);
    sxy.merge(o.sxy);
  }
};

ChainJet to_jet(const JetSink& sink) {
  const std::array<const ScaledSum*, 4> sums = {&sink.s0, &sink.sx, &sink.sy, &sink.sxy};
  double ref = kNegInf;
  for (const auto* s : sums) ref = std::max(ref, s->log_scale());
  ChainJet jet;
  if (std::isinf(ref)) return jet;
  auto at = [ref](const ScaledSum& s) {
    return std::isinf(s.log_scale()) ? Complex(0.0) : s.scaled_value() * std::exp(s.log_scale() - ref);
  };
  jet.log_scale = ref;
  jet.value = at(sink.s0);
  jet.dx = at(sink.sx);
  jet.dy = at(sink.sy);
  jet.dxy = at(sink.sxy);
  return jet;
}

void check_variable(const TimesVector& times, int variable) {
  if (variable == 0) throw RangeError("time variable index 0 does not exist");
  (void)times.t(std::abs(variable));
}

Complex ipow(Complex z, int p) {
  Complex out = 1.0;
  for (int k = 0; k < std::abs(p); ++k) out *= z;
  return p < 0 ? 1.0 / out : out;
}

// log tau continued from a reference value, valid while tau/reference stays off the cut.
Complex relative_log(const TauValue& tau, const TauValue& reference) {
  if (tau.is_zero()) throw DegenerateError("tau vanishes inside a difference stencil");
  return reference.log() + (tau / reference).log();
}

TauValue exp_tau(Complex exponent) {
  return TauValue::from_log(exponent.real(), std::polar(1.0, exponent.imag()));
}

}  // namespace

Complex time_component(const TimesVector& times, int variable) {
  check_variable(times, variable);
  return variable > 0 ? times.t(variable) : times.negative(-variable);
}

TimesVector perturb_time(const TimesVector& times, int variable, Complex delta) {
  check_variable(times, variable);
  TimesVector out = times;
  if (variable > 0) {
    out.set_t(variable, times.t(variable) + delta);
  } else {
    out.set_negative(-variable, times.negative(-variable) + delta);
  }
  return out;
}

double ResidualReport::parameter(std::string_view key) const {
  for (const auto& [k, v] : parameters) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

ResidualReport make_report(double residual, double scale, std::string method) {
  ResidualReport r;
  r.residual = residual;
  r.scale = scale;
  if (scale > 0.0) {
    r.relative = residual / scale;
  } else {
    r.relative = residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  r.method = std::move(method);
  return r;
}

PartitionChain::PartitionChain(std::vector<Complex> sites, std::vector<double> confining,
                               TimesVector times, EnumerationOptions options)
    : TauChain(std::move(times)),
      sites_(std::move(sites)),
      confining_(std::move(confining)),
      options_(options) {
  if (confining_.empty()) confining_.assign(sites_.size(), 0.0);
  if (confining_.size() != sites_.size()) {
    throw ValidationError("confining values and sites differ in length");
  }
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    for (std::size_t j = i + 1; j < sites_.size(); ++j) {
      if (sites_[i] == sites_[j]) throw CoincidenceError("partition chain sites coincide");
    }
  }
}

PartitionChain PartitionChain::from_spec(const CorrespondenceSpec& spec, EnumerationOptions options) {
  std::vector<double> u;
  for (const Complex z : spec.lattice) u.push_back(spec.confining ? spec.confining(z) : 0.0);
  TimesVector t = spec.times;
  t.set_discrete_index(0);
  return PartitionChain(spec.lattice, std::move(u), std::move(t), options);
}

IsingModel PartitionChain::model(const TimesVector& times) const {
  const std::size_t n = sites_.size();
  IsingModel m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.set_coupling(i, j, LogFactor::exp_of_real(2.0 * std::log(std::abs(sites_[i] - sites_[j]))));
    }
    Complex exponent = -2.0 * confining_[i];
    Complex zp = 1.0, zbp = 1.0;
    for (int p = 1; p <= times.max_order(); ++p) {
      zp *= sites_[i];
      zbp *= std::conj(sites_[i]);
      exponent += zp * times.t(p) + zbp * times.tbar(p);
    }
    m.set_field(i, LogFactor::exp_of(exponent));
  }
  return m;
}

std::vector<Complex> PartitionChain::coefficients(int variable) const {
  std::vector<Complex> c;
  c.reserve(sites_.size());
  for (const Complex z : sites_) {
    c.push_back(variable > 0 ? ipow(z, variable) : -ipow(std::conj(z), -variable));
  }
  return c;
}

TauValue PartitionChain::value(int m, const TimesVector& times) const {
  if (m < 0 || m > static_cast<int>(sites_.size())) return TauValue::zero();
  return sum_fixed_count(model(times), static_cast<std::size_t>(m), options_);
}

ChainJet PartitionChain::jet(int m, int x, int y, const TimesVector& times) const {
  check_variable(times, x);
  check_variable(times, y);
  if (m < 0 || m > static_cast<int>(sites_.size())) return {};
  const auto cx = coefficients(x);
  const auto cy = coefficients(y);
  return to_jet(enumerate_fixed_count(model(times), static_cast<std::size_t>(m),
                                      JetSink{&cx, &cy, {}, {}, {}, {}}, options_));
}

SolitonChain::SolitonChain(SolitonSystem system, TimesVector times,
                           std::optional<double> gauge_radius, bool vacuum,
                           EnumerationOptions options)
    : TauChain(std::move(times)),
      system_(std::move(system)),
      gauge_(gauge_radius),
      vacuum_(vacuum),
      options_(options) {
  if (system_.kind() != HierarchyKind::Toda2D) {
    throw UnsupportedError("tau chains are built from Toda systems");
  }
  if (gauge_ && !(*gauge_ > 0.0)) throw DomainError("gauge radius must be positive");
}

TauValue SolitonChain::value(int m, const TimesVector& times) const {
  TimesVector at = gauge_ ? times.scaled(*gauge_) : times;
  at.set_discrete_index(gauge_ ? m - 1 : m);
  TauValue tau = tau_hirota(system_, at, options_);
  if (vacuum_) tau *= exp_tau(toda_vacuum_exponent(at));
  if (gauge_) tau = tau.scaled_by_log(static_cast<double>(m) * m * std::log(*gauge_));
  return tau;
}

ChainJet SolitonChain::jet(int m, int x, int y, const TimesVector& times) const {
  check_variable(times, x);
  check_variable(times, y);
  const double r = gauge_.value_or(1.0);
  TimesVector at = gauge_ ? times.scaled(r) : times;
  at.set_discrete_index(gauge_ ? m - 1 : m);
  const double fx = std::pow(r, std::abs(x));
  const double fy = std::pow(r, std::abs(y));
  auto coefficients = [&](int v, double f) {
    std::vector<Complex> c;
    for (const auto& p : system_.momenta()) c.push_back(f * (ipow(p.a, v) - ipow(p.b, v)));
    return c;
  };
  const auto cx = coefficients(x, fx);
  const auto cy = coefficients(y, fy);
  ChainJet h = to_jet(enumerate(hirota_model(system_, at), JetSink{&cx, &cy, {}, {}, {}, {}}, options_));
  ChainJet out = h;
  if (vacuum_) {
    auto first = [&](int v) {
      const int p = std::abs(v);
      return -static_cast<double>(p) * (v > 0 ? at.negative(p) : at.t(p));
    };
    const Complex vx = fx * first(x);
    const Complex vy = fy * first(y);
    const Complex vxy = (x == -y) ? -static_cast<double>(std::abs(x)) * fx * fy : Complex(0.0);
    const Complex g = toda_vacuum_exponent(at);
    const Complex ph = std::polar(1.0, g.imag());
    out.log_scale = h.log_scale + g.real();
    out.value = ph * h.value;
    out.dx = ph * (vx * h.value + h.dx);
    out.dy = ph * (vy * h.value + h.dy);
    out.dxy = ph * ((vxy + vx * vy) * h.value + vx * h.dy + vy * h.dx + h.dxy);
  }
  if (gauge_) out.log_scale += static_cast<double>(m) * m * std::log(r);
  return out;
}

TauValue exact_time_derivative(const TauChain& chain, int m, std::span<const int> variables) {
  if (variables.empty() || variables.size() > 2) {
    throw ValidationError("exact derivatives of order 1 or 2 only");
  }
  const int x = variables[0];
  const int y = variables.size() == 2 ? variables[1] : variables[0];
  const ChainJet j = chain.jet(m, x, y);
  return TauValue::from_log(j.log_scale, variables.size() == 1 ? j.dx : j.dxy);
}

Complex time_derivative(const TauChain& chain, int m, const DerivativeRequest& request) {
  const auto& vars = request.variables;
  if (vars.empty() || vars.size() > 2) throw ValidationError("derivatives of order 1 or 2 only");
  if (request.method == DerivativeMethod::Exact) {
    return exact_time_derivative(chain, m, vars).value();
  }
  const TimesVector& base = chain.base_times();
  const int x = vars[0];
  const double scale = 1.0 + std::abs(time_component(base, x));
  if (request.method == DerivativeMethod::ComplexStep) {
    if (vars.size() != 1) throw UnsupportedError("complex-step differentiation is first order only");
    const double h = request.step > 0.0 ? request.step : 1e-20 * scale;
    const TauValue center = chain.value(m, base);
    if (std::abs(center.value().imag()) > 1e-12 * std::abs(center.value())) {
      throw UnsupportedError("complex-step needs a tau that is real along the time direction");
    }
    return chain.value(m, perturb_time(base, x, Complex(0.0, h))).value().imag() / h;
  }
  const double h = request.step > 0.0 ? request.step : 1e-4 * scale;
  auto f = [&](int v1, double d1, int v2, double d2) {
    TimesVector t = perturb_time(base, v1, d1);
    if (v2 != 0) t = perturb_time(t, v2, d2);
    return chain.value(m, t).value();
  };
  if (vars.size() == 1) return (f(x, h, 0, 0) - f(x, -h, 0, 0)) / (2.0 * h);
  const int y = vars[1];
  if (x == y) return (f(x, h, 0, 0) - 2.0 * chain.value(m, base).value() + f(x, -h, 0, 0)) / (h * h);
  return (f(x, h, y, h) - f(x, h, y, -h) - f(x, -h, y, h) + f(x, -h, y, -h)) / (4.0 * h * h);
}

ResidualReport toda_bilinear_residual(const TauChain& chain, int m) {
  if (const auto n = chain.sites(); n && (m < 0 || m > static_cast<int>(*n))) {
    throw RangeError("chain index " + std::to_string(m) + " outside [0, " + std::to_string(*n) + "]");
  }
  const ChainJet j = chain.jet(m, 1, -1);
  const TauValue neighbours = chain.value(m - 1) * chain.value(m + 1);
  const double ref = 2.0 * j.log_scale;
  const Complex a = j.dx * j.dy;
  const Complex b = j.value * j.dxy;
  const Complex c = neighbours.scaled(ref);
  ResidualReport r = make_report(std::abs(a - b - c),
                                 std::max({std::abs(a), std::abs(b), std::abs(c)}), "exact");
  r.parameters = {{"m", m}, {"log_scale", ref}};
  return r;
}

namespace {

struct UResidual {
  double residual;
  double scale;
};

UResidual u_equation_at(const TauChain& chain, int m, double h) {
  const TimesVector& base = chain.base_times();
  std::map<int, TauValue> centers;
  auto center = [&](int k) -> const TauValue& {
    auto it = centers.find(k);
    if (it == centers.end()) it = centers.emplace(k, chain.value(k, base)).first;
    return it->second;
  };
  auto log_tau = [&](int k, double dx, double dy) {
    const TimesVector t = perturb_time(perturb_time(base, 1, dx), -1, dy);
    return relative_log(chain.value(k, t), center(k));
  };
  auto u = [&](double dx, double dy) {
    return 2.0 * log_tau(m, dx, dy) - log_tau(m + 1, dx, dy) - log_tau(m - 1, dx, dy);
  };
  const Complex lhs = (u(h, h) - u(h, -h) - u(-h, h) + u(-h, -h)) / (4.0 * h * h);
  auto exp_minus_u = [&](int k) {
    const TauValue& mid = center(k);
    if (mid.is_zero()) throw DegenerateError("tau vanishes at chain index " + std::to_string(k));
    return (center(k + 1) * center(k - 1) / (mid * mid)).value();
  };
  const Complex up = exp_minus_u(m + 1);
  const Complex down = exp_minus_u(m - 1);
  const Complex self = exp_minus_u(m);
  return {std::abs(lhs - (up + down - 2.0 * self)),
          std::max({std::abs(lhs), std::abs(up), std::abs(down), 2.0 * std::abs(self)})};
}

}  // namespace

ResidualReport toda_u_equation_residual(const TauChain& chain, int m, double step) {
  if (const auto n = chain.sites(); n && (m < 1 || m + 1 > static_cast<int>(*n))) {
    throw RangeError("u-equation index " + std::to_string(m) + " outside [1, N-1]");
  }
  const TimesVector& base = chain.base_times();
  const double h = step > 0.0 ? step
                              : 1e-2 * (1.0 + std::abs(base.t(1)) + std::abs(base.tbar(1)));
  const UResidual coarse = u_equation_at(chain, m, h);
  const UResidual fine = u_equation_at(chain, m, 0.5 * h);
  ResidualReport r = make_report(coarse.residual, coarse.scale, "central-difference");
  const double ratio = fine.residual > 0.0 ? coarse.residual / fine.residual
                                           : std::numeric_limits<double>::infinity();
  r.parameters = {{"m", m},
                  {"h", h},
                  {"residual_half", fine.residual},
                  {"relative_half", fine.scale > 0.0 ? fine.residual / fine.scale : 0.0},
                  {"ratio", ratio},
                  {"order", std::log2(ratio)}};
  return r;
}

namespace {

const std::vector<double>& stencil(int order) {
  static const std::array<std::vector<double>, 7> table = {
      std::vector<double>{1.0},
      std::vector<double>{-0.5, 0.0, 0.5},
      std::vector<double>{1.0, -2.0, 1.0},
      std::vector<double>{-0.5, 1.0, 0.0, -1.0, 0.5},
      std::vector<double>{1.0, -4.0, 6.0, -4.0, 1.0},
      std::vector<double>{},
      std::vector<double>{1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}};
  return table.at(static_cast<std::size_t>(order));
}

struct KpResidual {
  double residual;
  double scale;
};

KpResidual kp_at(const SolitonSystem& system, const TimesVector& times, double h,
                 const EnumerationOptions& options) {
  const TauValue center = tau_hirota(system, times, options);
  std::map<std::tuple<int, int, int>, Complex> cache;
  auto f = [&](int i, int j, int k) {
    const auto key = std::make_tuple(i, j, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    TimesVector t = times;
    t.set_t(1, times.t(1) + i * h);
    t.set_t(2, times.t(2) + j * h);
    t.set_t(3, times.t(3) + k * h);
    const Complex v = relative_log(tau_hirota(system, t, options), center);
    cache.emplace(key, v);
    return v;
  };
  auto d = [&](int ox, int oy, int ot) {
    const auto& sx = stencil(ox);
    const auto& sy = stencil(oy);
    const auto& st = stencil(ot);
    const int hx = static_cast<int>(sx.size() / 2), hy = static_cast<int>(sy.size() / 2),
              ht = static_cast<int>(st.size() / 2);
    Complex acc = 0.0;
    for (int i = -hx; i <= hx; ++i) {
      for (int j = -hy; j <= hy; ++j) {
        for (int k = -ht; k <= ht; ++k) {
          const double w = sx[i + hx] * sy[j + hy] * st[k + ht];
          if (w != 0.0) acc += w * f(i, j, k);
        }
      }
    }
    return acc / std::pow(h, ox + oy + ot);
  };
  const Complex u = -2.0 * d(2, 0, 0);
  const Complex ux = -2.0 * d(3, 0, 0);
  const Complex uxx = -2.0 * d(4, 0, 0);
  const Complex uxxxx = -2.0 * d(6, 0, 0);
  const Complex uyy = -2.0 * d(2, 2, 0);
  const Complex uxt = -2.0 * d(3, 0, 1);
  const Complex t1 = 3.0 * uyy;
  const Complex t2 = 4.0 * uxt;
  const Complex t3 = 6.0 * (ux * ux + u * uxx);
  const Complex t4 = uxxxx;
  return {std::abs(t1 - t2 - t3 + t4),
          std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)})};
}

}  // namespace

ResidualReport kp_equation_residual(const SolitonSystem& system, const TimesVector& times,
                                    double step, const EnumerationOptions& options) {
  if (system.kind() != HierarchyKind::KP) throw UnsupportedError("the KP equation needs a KP system");
  validate_times(HierarchyKind::KP, times);
  if (times.max_order() < 3) throw TruncationError("the KP equation needs times up to t_3");
  if (!(step > 0.0)) throw RangeError("finite-difference step must be positive");
  const KpResidual coarse = kp_at(system, times, step, options);
  const KpResidual fine = kp_at(system, times, 0.5 * step, options);
  ResidualReport r = make_report(coarse.residual, coarse.scale, "central-difference");
  const double ratio = fine.residual > 0.0 ? coarse.residual / fine.residual
                                           : std::numeric_limits<double>::infinity();
  r.parameters = {{"h", step},
                  {"residual_half", fine.residual},
                  {"relative_half", fine.scale > 0.0 ? fine.residual / fine.scale : 0.0},
                  {"ratio", ratio},
                  {"order", std::log2(ratio)}};
  return r;
}

namespace {

struct ContourValue {
  Complex lhs;
  Complex rhs;
  double scale;
};

Complex xi(const TimesVector& delta_source, const TimesVector& delta_target, Complex z, bool negative) {
  Complex acc = 0.0, zp = 1.0;
  const Complex w = negative ? 1.0 / z : z;
  for (int p = 1; p <= delta_source.max_order(); ++p) {
    zp *= w;
    const Complex d = negative ? delta_target.negative(p) - delta_source.negative(p)
                               : delta_target.t(p) - delta_source.t(p);
    acc += d * zp;
  }
  return acc;
}

class ContourEvaluator {
 public:
  ContourEvaluator(const SolitonSystem& system, const TimesVector& t, const TimesVector& tp,
                   const EnumerationOptions& options)
      : system_(system), t_(t), tp_(tp), options_(options) {}

  ContourValue operator()(double outer, double inner, std::size_t points) const {
    switch (system_.kind()) {
      case HierarchyKind::KP: {
        const auto i = circle_integral(
            [&](Complex z) {
              return std::exp(xi(t_, tp_, z, false)) * shifted(tp_, ShiftSide::Positive, -1, z) *
                     shifted(t_, ShiftSide::Positive, 1, z);
            },
            outer, points);
        return {i.value, 0.0, i.scale};
      }
      case HierarchyKind::BKP: {
        const auto i = circle_integral(
            [&](Complex z) {
              return std::exp(xi(t_, tp_, z, false)) * shifted(tp_, ShiftSide::Positive, -2, z) *
                     shifted(t_, ShiftSide::Positive, 2, z) / z;
            },
            outer, points);
        const Complex rhs = shifted(t_, ShiftSide::Positive, 0, 1.0) * shifted(tp_, ShiftSide::Positive, 0, 1.0);
        return {i.value, rhs, std::max(i.scale, std::abs(rhs))};
      }
      case HierarchyKind::Toda2D: {
        const int m = t_.discrete_index();
        const int mp = tp_.discrete_index();
        TimesVector up = tp_;
        up.set_discrete_index(mp + 1);
        TimesVector down = t_;
        down.set_discrete_index(m - 1);
        const auto l = circle_integral(
            [&](Complex z) {
              return ipow(z, mp - m) * std::exp(xi(t_, tp_, z, false)) *
                     shifted(tp_, ShiftSide::Positive, -1, z) * shifted(t_, ShiftSide::Positive, 1, z);
            },
            outer, points);
        const auto r = circle_integral(
            [&](Complex z) {
              return ipow(z, mp - m) * std::exp(xi(t_, tp_, z, true)) *
                     shifted(up, ShiftSide::Negative, -1, z) * shifted(down, ShiftSide::Negative, 1, z);
            },
            inner, points);
        return {l.value, r.value, std::max(l.scale, r.scale)};
      }
    }
    throw UnsupportedError("unknown hierarchy kind");
  }

 private:
  Complex shifted(const TimesVector& times, ShiftSide side, int count, Complex z) const {
    const TimeShift s{side, count, z};
    const std::span<const TimeShift> shifts(&s, 1);
    TauValue tau = tau_shifted(system_, times, shifts, options_);
    if (system_.kind() == HierarchyKind::Toda2D) tau *= exp_tau(toda_vacuum_exponent(times, shifts));
    return tau.value();
  }

  const SolitonSystem& system_;
  const TimesVector& t_;
  const TimesVector& tp_;
  EnumerationOptions options_;
};

double change(const ContourValue& a, const ContourValue& b) {
  const double scale = std::max(a.scale, b.scale);
  const double diff = std::abs(a.lhs - b.lhs) + std::abs(a.rhs - b.rhs);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

ContourReport residue_contour_check(const SolitonSystem& system, const TimesVector& times,
                                    const TimesVector& times_prime, const ContourOptions& contour,
                                    const EnumerationOptions& options) {
  validate_times(system.kind(), times);
  validate_times(system.kind(), times_prime);
  if (times.max_order() != times_prime.max_order()) {
    throw ValidationError("both time vectors need the same truncation order");
  }
  if (contour.points == 0 || !std::has_single_bit(contour.points)) {
    throw ContourError("quadrature point count must be a power of two");
  }
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (const auto& p : system.momenta()) {
    rmax = std::max({rmax, std::abs(p.a), std::abs(p.b)});
    rmin = std::min({rmin, std::abs(p.a), std::abs(p.b)});
  }
  const bool empty = system.size() == 0;
  const double outer = contour.outer_radius.value_or(empty ? 1.0 : 4.0 * rmax);
  const double inner = contour.inner_radius.value_or(empty ? 1.0 : 0.5 * rmin);
  constexpr double margin = 1e-9;
  if (!(outer > rmax * (1.0 + margin))) {
    throw ContourError("outer contour radius must enclose every pole (|z| > " + std::to_string(rmax) + ")");
  }
  if (system.kind() == HierarchyKind::Toda2D && !empty &&
      !(inner > 0.0 && inner < rmin * (1.0 - margin))) {
    throw ContourError("inner contour radius must lie inside every pole (|z| < " + std::to_string(rmin) + ")");
  }

  const ContourEvaluator eval(system, times, times_prime, options);
  // Doubles the point count until the quadrature stops moving.
  struct Converged {
    ContourValue value;
    std::size_t points;
    double change;
  };
  auto converge = [&](double r_out, double r_in) {
    std::size_t n = contour.points;
    ContourValue current = eval(r_out, r_in, n);
    for (;;) {
      if (2 * n > contour.max_points) {
        throw NonConvergenceError("contour quadrature did not stabilise up to " +
                                  std::to_string(contour.max_points) + " points");
      }
      const ContourValue doubled = eval(r_out, r_in, 2 * n);
      const double c = change(current, doubled);
      if (c <= contour.tolerance) return Converged{current, n, c};
      current = doubled;
      n *= 2;
    }
  };
  const auto base = converge(outer, inner);
  const ContourValue& current = base.value;
  const std::size_t points = base.points;
  const double points_change = base.change;

  const bool halve_outer = outer / 2.0 > rmax * (1.0 + margin);
  const ContourValue halved = converge(halve_outer ? outer / 2.0 : outer, inner / 2.0).value;

  ContourReport out;
  out.lhs = current.lhs;
  out.rhs = current.rhs;
  out.outer_radius = outer;
  out.inner_radius = inner;
  out.points = points;
  out.points_stability = points_change;
  out.radius_stability = change(current, halved);
  // tau = 1 satisfies the identity exactly; what the quadrature reports is roundoff.
  out.report = empty ? make_report(0.0, current.scale, "trivial")
                     : make_report(std::abs(current.lhs - current.rhs), current.scale, "contour-quadrature");
  out.report.parameters = {{"outer_radius", outer},
                           {"inner_radius", inner},
                           {"points", static_cast<double>(points)},
                           {"m", times.discrete_index()},
                           {"m_prime", times_prime.discrete_index()},
                           {"radius_stability", out.radius_stability},
                           {"points_stability", out.points_stability},
                           {"outer_halved", halve_outer ? 1.0 : 0.0}};
  return out;
}

}  // namespace solgas
