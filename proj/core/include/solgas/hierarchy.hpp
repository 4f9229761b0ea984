#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solgas/correspondence.hpp"
#include "solgas/soliton.hpp"

namespace solgas {

// Time variables are signed indices: +p is t_p, -p is the standard negative time
// t_{-p} = -tbar_p, so d/dt_{-p} = -d/dtbar_p.
Complex time_component(const TimesVector& times, int variable);
TimesVector perturb_time(const TimesVector& times, int variable, Complex delta);

struct ResidualReport {
  double residual = 0.0;
  double scale = 0.0;
  double relative = 0.0;
  std::string method;
  std::vector<std::pair<std::string, double>> parameters;

  double parameter(std::string_view key) const;
};

ResidualReport make_report(double residual, double scale, std::string method);

// tau and its first and mixed second derivative in two time variables, all multiplied by
// exp(-log_scale).
struct ChainJet {
  double log_scale = 0.0;
  Complex value = 0.0;
  Complex dx = 0.0;
  Complex dy = 0.0;
  Complex dxy = 0.0;
};

// A family tau(m, times) indexed by the discrete Toda variable.
class TauChain {
 public:
  explicit TauChain(TimesVector base) : base_(std::move(base)) {}
  virtual ~TauChain() = default;

  const TimesVector& base_times() const { return base_; }
  // Number of sites for chains that vanish outside [0, N].
  virtual std::optional<std::size_t> sites() const = 0;
  virtual TauValue value(int m, const TimesVector& times) const = 0;
  // Exact derivatives from the exponential-linear time dependence.
  virtual ChainJet jet(int m, int x, int y, const TimesVector& times) const = 0;
  virtual std::string_view name() const = 0;

  TauValue value(int m) const { return value(m, base_); }
  ChainJet jet(int m, int x, int y) const { return jet(m, x, y, base_); }

 private:
  TimesVector base_;
};

// Z_m of the free-plane beta = 2 gas: sum over m-subsets of prod |z_i - z_j|^2
// prod exp(-2 U(z_i) + sum_p (z_i^p t_p + conj(z_i)^p tbar_p)); zero outside [0, N].
class PartitionChain final : public TauChain {
 public:
  PartitionChain(std::vector<Complex> sites, std::vector<double> confining, TimesVector times,
                 EnumerationOptions options = {});
  static PartitionChain from_spec(const CorrespondenceSpec& spec, EnumerationOptions options = {});

  std::optional<std::size_t> sites() const override { return sites_.size(); }
  TauValue value(int m, const TimesVector& times) const override;
  ChainJet jet(int m, int x, int y, const TimesVector& times) const override;
  std::string_view name() const override { return "partition"; }
  using TauChain::jet;
  using TauChain::value;

 private:
  IsingModel model(const TimesVector& times) const;
  std::vector<Complex> coefficients(int variable) const;

  std::vector<Complex> sites_;
  std::vector<double> confining_;
  EnumerationOptions options_;
};

// Toda soliton chain: exp(-sum_p p t_p t_{-p}) times the Hirota sum at index m, or its gauge
// transform R^{m^2} tau(m - 1, R^p t_p, R^p tbar_p).
class SolitonChain final : public TauChain {
 public:
  SolitonChain(SolitonSystem system, TimesVector times, std::optional<double> gauge_radius = {},
               bool vacuum = true, EnumerationOptions options = {});

  std::optional<std::size_t> sites() const override { return std::nullopt; }
  TauValue value(int m, const TimesVector& times) const override;
  ChainJet jet(int m, int x, int y, const TimesVector& times) const override;
  std::string_view name() const override { return gauge_ ? "gauge-soliton" : "soliton"; }
  using TauChain::jet;
  using TauChain::value;

 private:
  SolitonSystem system_;
  std::optional<double> gauge_;
  bool vacuum_;
  EnumerationOptions options_;
};

enum class DerivativeMethod { Exact, CentralDifference, ComplexStep };

struct DerivativeRequest {
  std::vector<int> variables;  // one or two signed time indices
  DerivativeMethod method = DerivativeMethod::Exact;
  double step = 0.0;  // 0 selects 1e-4 * (1 + |t|)
};

TauValue exact_time_derivative(const TauChain& chain, int m, std::span<const int> variables);
Complex time_derivative(const TauChain& chain, int m, const DerivativeRequest& request);

// |tau_x tau_y - tau tau_xy - tau(m-1) tau(m+1)| with x = t_1, y = t_{-1}, exact derivatives.
ResidualReport toda_bilinear_residual(const TauChain& chain, int m);

// d^2 u(m)/dt_1 dt_{-1} = e^{-u(m+1)} + e^{-u(m-1)} - 2 e^{-u(m)},
// u(m) = log(tau(m)^2 / (tau(m+1) tau(m-1))), by central differences at steps h and h/2.
ResidualReport toda_u_equation_residual(const TauChain& chain, int m, double step = 0.0);

// 3 u_yy - (4 u_t + 6 u u_x - u_xxx)_x with u = -2 (log tau)_xx, x = t_1, y = t_2, t = t_3,
// by nested central differences at steps h and h/2.
ResidualReport kp_equation_residual(const SolitonSystem& system, const TimesVector& times,
                                    double step = 0.1, const EnumerationOptions& options = {});

struct ContourOptions {
  std::optional<double> outer_radius;  // circle enclosing every pole, for series in 1/z
  std::optional<double> inner_radius;  // circle inside every pole, for series in z (Toda)
  std::size_t points = 128;
  std::size_t max_points = 4096;
  double tolerance = 1e-9;
};

struct ContourReport {
  ResidualReport report;
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double outer_radius = 0.0;
  double inner_radius = 0.0;
  std::size_t points = 0;
  double radius_stability = 0.0;  // relative change under radius halving
  double points_stability = 0.0;  // relative change under point doubling
};

// Bilinear residue identity between (times, m) and (times_prime, m') for a KP, BKP or Toda
// system, evaluated by trapezoidal quadrature with closed-form shifted taus.
ContourReport residue_contour_check(const SolitonSystem& system, const TimesVector& times,
                                    const TimesVector& times_prime,
                                    const ContourOptions& contour = {},
                                    const EnumerationOptions& options = {});

}  // namespace solgas
