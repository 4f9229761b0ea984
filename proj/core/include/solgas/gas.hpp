#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "solgas/enumeration.hpp"
#include "solgas/geometry.hpp"

namespace solgas {

using ConfiningPotential = std::function<double(Complex)>;

class LatticeGas {
 public:
  LatticeGas(std::vector<Complex> sites, BoundaryGeometry geometry, double beta, double mu,
             ConfiningPotential confining = {}, TimesVector times = TimesVector{});

  std::size_t size() const { return sites_.size(); }
  std::span<const Complex> sites() const { return sites_; }
  const BoundaryGeometry& geometry() const { return geometry_; }
  double beta() const { return beta_; }
  double mu() const { return mu_; }
  const TimesVector& times() const { return times_; }
  const ConfiningPotential& confining() const { return confining_; }

  double self_energy(std::size_t i) const { return self_[i]; }
  double external_energy(std::size_t i) const { return external_[i]; }
  // Single-particle energy: self plus external.
  double site_energy(std::size_t i) const { return self_[i] + external_[i]; }
  double pair_energy(std::size_t i, std::size_t j) const { return pair_[i * size() + j]; }

  LatticeGas with_mu(double mu) const;
  LatticeGas with_beta(double beta) const;

 private:
  std::vector<Complex> sites_;
  BoundaryGeometry geometry_;
  double beta_;
  double mu_;
  ConfiningPotential confining_;
  TimesVector times_;
  std::vector<double> self_;
  std::vector<double> external_;
  std::vector<double> pair_;
};

struct EnergyBreakdown {
  double pair_sum = 0.0;
  double self_sum = 0.0;
  double external_sum = 0.0;
  double total = 0.0;
};

struct SectorDecomposition {
  std::vector<TauValue> values;  // Z_0 .. Z_N

  // sum_n Z_n exp(beta mu n)
  TauValue reassemble(double beta, double mu) const;
};

struct Observables {
  double mean_energy = 0.0;
  double mean_count = 0.0;
};

EnergyBreakdown gas_energy(const LatticeGas& gas, std::span<const std::size_t> occupied);

// Boltzmann weights exp(-beta (E - mu n)) in product form; `with_mu = false` drops mu.
IsingModel gas_model(const LatticeGas& gas, bool with_mu = true);

TauValue grand_partition(const LatticeGas& gas, const EnumerationOptions& options = {});
// Sum over n-subsets of exp(-beta E); no chemical potential.
TauValue canonical_partition(const LatticeGas& gas, std::size_t n,
                             const EnumerationOptions& options = {});
// All canonical partitions from a single sweep of the grand ensemble.
SectorDecomposition sector_decomposition(const LatticeGas& gas,
                                         const EnumerationOptions& options = {});
Observables observables(const LatticeGas& gas, const EnumerationOptions& options = {});

}  // namespace solgas
