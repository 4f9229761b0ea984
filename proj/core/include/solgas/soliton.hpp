#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "solgas/enumeration.hpp"
#include "solgas/tau_value.hpp"

namespace solgas {

enum class HierarchyKind { KP, BKP, Toda2D };

std::string_view hierarchy_name(HierarchyKind kind);
HierarchyKind parse_hierarchy(std::string_view name);

inline constexpr int kDefaultMaxOrder = 8;

// Hierarchy times t_1..t_P, conjugate times tbar_1..tbar_P and the discrete Toda index.
// The standard negative times are t_{-p} = -tbar_p.
class TimesVector {
 public:
  explicit TimesVector(int max_order = kDefaultMaxOrder);

  int max_order() const { return static_cast<int>(t_.size()); }
  Complex t(int p) const;
  Complex tbar(int p) const;
  Complex negative(int p) const { return -tbar(p); }
  void set_t(int p, Complex value);
  void set_tbar(int p, Complex value);
  void set_negative(int p, Complex value) { set_tbar(p, -value); }
  int discrete_index() const { return m_; }
  void set_discrete_index(int m) { m_ = m; }

  bool any_tbar() const;
  // Largest p with a nonzero t_p or tbar_p; 0 when all times vanish.
  int highest_order() const;
  // t_p -> R^p t_p and tbar_p -> R^p tbar_p.
  TimesVector scaled(double factor) const;

  friend bool operator==(const TimesVector&, const TimesVector&) = default;

 private:
  void check_index(int p) const;

  std::vector<Complex> t_;
  std::vector<Complex> tbar_;
  int m_ = 0;
};

// Reject times a hierarchy cannot consume: BKP even times, KP/BKP conjugate times or index.
void validate_times(HierarchyKind kind, const TimesVector& times);
// Real-potential mode: KP times purely imaginary, BKP times real, Toda t_p and tbar_p conjugate.
void validate_real_mode(HierarchyKind kind, const TimesVector& times, double tol = 1e-14);
bool is_real_mode(HierarchyKind kind, const TimesVector& times, double tol = 1e-14);

struct MomentumPair {
  Complex a;
  Complex b;
};

struct PhaseShift {
  Complex factor;  // L = exp(A), from the rational expression
  Complex shift;   // A, principal log of L
};

Complex interaction_factor(HierarchyKind kind, const MomentumPair& p1, const MomentumPair& p2);
PhaseShift phase_shift(HierarchyKind kind, const MomentumPair& p1, const MomentumPair& p2);
Complex soliton_phase(HierarchyKind kind, const MomentumPair& p, Complex initial_phase,
                      const TimesVector& times);

class SolitonSystem {
 public:
  SolitonSystem(HierarchyKind kind, std::vector<MomentumPair> momenta,
                std::vector<Complex> initial_phases);

  HierarchyKind kind() const { return kind_; }
  std::size_t size() const { return momenta_.size(); }
  std::span<const MomentumPair> momenta() const { return momenta_; }
  std::span<const Complex> initial_phases() const { return phases_; }
  Complex factor(std::size_t i, std::size_t j) const { return factors_[i * size() + j]; }

 private:
  HierarchyKind kind_;
  std::vector<MomentumPair> momenta_;
  std::vector<Complex> phases_;
  std::vector<Complex> factors_;
};

// t -> t + count*[z^{-1}] on the positive side, or t_{-p} -> t_{-p} + count*z^p/p on the
// negative side (Toda only). For BKP the unit is the odd-time vector and count must be even.
enum class ShiftSide { Positive, Negative };

struct TimeShift {
  ShiftSide side = ShiftSide::Positive;
  int count = 0;
  Complex point = 1.0;
};

// Closed-form multiplier of exp(phi) for one soliton under a shift.
Complex shift_factor(HierarchyKind kind, const MomentumPair& p, const TimeShift& shift);

IsingModel hirota_model(const SolitonSystem& system, const TimesVector& times,
                        std::span<const TimeShift> shifts = {});
TauValue tau_hirota(const SolitonSystem& system, const TimesVector& times,
                    const EnumerationOptions& options = {});
TauValue tau_shifted(const SolitonSystem& system, const TimesVector& times,
                     std::span<const TimeShift> shifts, const EnumerationOptions& options = {});

// log of the Toda vacuum factor exp(-sum_p p t_p t_{-p}) at times shifted by `shifts`
// (shifts must all act on one side).
Complex toda_vacuum_exponent(const TimesVector& times, std::span<const TimeShift> shifts = {});

}  // namespace solgas
