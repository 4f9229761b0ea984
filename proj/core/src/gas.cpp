#include "solgas/gas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace solgas {

LatticeGas::LatticeGas(std::vector<Complex> sites, BoundaryGeometry geometry, double beta,
                       double mu, ConfiningPotential confining, TimesVector times)
    : sites_(std::move(sites)),
      geometry_(std::move(geometry)),
      beta_(beta),
      mu_(mu),
      confining_(std::move(confining)),
      times_(std::move(times)) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw RangeError("beta must be positive");
  if (!std::isfinite(mu_)) throw RangeError("mu must be finite");
  const std::size_t n = sites_.size();
  double diameter = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) diameter = std::max(diameter, std::abs(sites_[i] - sites_[j]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!geometry_.in_interior(sites_[i])) {
      throw DomainError("site " + std::to_string(i) + " is not strictly inside the " +
                        std::string(geometry_name(geometry_.kind())) + " domain");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(sites_[i] - sites_[j]) <= 1e-12 * diameter) {
        throw CoincidenceError("sites " + std::to_string(i) + " and " + std::to_string(j) +
                               " coincide");
      }
    }
  }
  self_.resize(n);
  external_.resize(n);
  pair_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = confining_ ? confining_(sites_[i]) : 0.0;
    self_[i] = self_potential(geometry_, sites_[i]);
    external_[i] = external_potential(geometry_, sites_[i], u, times_);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = pair_potential(geometry_, sites_[i], sites_[j]);
      pair_[i * n + j] = v;
      pair_[j * n + i] = v;
    }
  }
}

LatticeGas LatticeGas::with_mu(double mu) const {
  LatticeGas out = *this;
  if (!std::isfinite(mu)) throw RangeError("mu must be finite");
  out.mu_ = mu;
  return out;
}

LatticeGas LatticeGas::with_beta(double beta) const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw RangeError("beta must be positive");
  LatticeGas out = *this;
  out.beta_ = beta;
  return out;
}

TauValue SectorDecomposition::reassemble(double beta, double mu) const {
  TauValue total;
  for (std::size_t n = 0; n < values.size(); ++n) {
    total += values[n].scaled_by_log(beta * mu * static_cast<double>(n));
  }
  return total;
}

EnergyBreakdown gas_energy(const LatticeGas& gas, std::span<const std::size_t> occupied) {
  std::vector<std::uint8_t> seen(gas.size(), 0);
  for (std::size_t i : occupied) {
    if (i >= gas.size()) throw RangeError("occupied index " + std::to_string(i) + " out of range");
    if (seen[i]++) throw CoincidenceError("site " + std::to_string(i) + " occupied twice");
  }
  EnergyBreakdown e;
  for (std::size_t a = 0; a < occupied.size(); ++a) {
    const std::size_t i = occupied[a];
    e.self_sum += gas.self_energy(i);
    e.external_sum += gas.external_energy(i);
    for (std::size_t b = a + 1; b < occupied.size(); ++b) e.pair_sum += gas.pair_energy(i, occupied[b]);
  }
  e.total = e.pair_sum + e.self_sum + e.external_sum;
  return e;
}

IsingModel gas_model(const LatticeGas& gas, bool with_mu) {
  const std::size_t n = gas.size();
  const double beta = gas.beta();
  const double mu = with_mu ? gas.mu() : 0.0;
  IsingModel model(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.set_field(i, LogFactor::exp_of_real(-beta * (gas.site_energy(i) - mu)));
    for (std::size_t j = i + 1; j < n; ++j) {
      model.set_coupling(i, j, LogFactor::exp_of_real(-beta * gas.pair_energy(i, j)));
    }
  }
  return model;
}

TauValue grand_partition(const LatticeGas& gas, const EnumerationOptions& options) {
  return sum_all(gas_model(gas), options);
}

TauValue canonical_partition(const LatticeGas& gas, std::size_t n,
                             const EnumerationOptions& options) {
  if (n > gas.size()) {
    throw RangeError("particle number " + std::to_string(n) + " exceeds " +
                     std::to_string(gas.size()) + " sites");
  }
  return sum_fixed_count(gas_model(gas, false), n, options);
}

SectorDecomposition sector_decomposition(const LatticeGas& gas,
                                         const EnumerationOptions& options) {
  return {sum_by_count(gas_model(gas, false), options)};
}

namespace {

struct ObservableSink {
  double beta;
  double mu;
  ScaledSum weight;
  ScaledSum energy;
  ScaledSum count;

  void visit(const Term& t) {
    weight.add_real(t.log_abs);
    const double n = static_cast<double>(t.count);
    const double e = mu * n - t.log_abs / beta;
    if (e != 0.0) energy.add(t.log_abs + std::log(std::abs(e)), e > 0 ? 1.0 : -1.0);
    if (t.count > 0) count.add_real(t.log_abs + std::log(n));
  }
  void merge(const ObservableSink& o) {
    weight.merge(o.weight);
    energy.merge(o.energy);
    count.merge(o.count);
  }
};

double ratio(const TauValue& num, const TauValue& den) {
  if (num.is_zero()) return 0.0;
  return (num / den).value().real();
}

}  // namespace

Observables observables(const LatticeGas& gas, const EnumerationOptions& options) {
  const ObservableSink out =
      enumerate(gas_model(gas), ObservableSink{gas.beta(), gas.mu(), {}, {}, {}}, options);
  const TauValue z = out.weight.result();
  return {ratio(out.energy.result(), z), ratio(out.count.result(), z)};
}

}  // namespace solgas
