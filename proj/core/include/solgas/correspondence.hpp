#pragma once

#include <optional>
#include <span>
#include <vector>

#include "solgas/gas.hpp"
#include "solgas/soliton.hpp"

namespace solgas {

// Inverse temperature at which soliton sums are Coulomb-gas partition functions.
inline constexpr double kCoulombBeta = 2.0;

struct CorrespondenceSpec {
  HierarchyKind kind = HierarchyKind::KP;
  std::vector<Complex> lattice;
  double radius = 1.0;               // Toda disc radius
  std::optional<ConformalMap> map;   // Toda: exterior of a mapped domain instead of the disc
  std::optional<int> fixed_charge;   // Toda: point charge at the origin
  ConfiningPotential confining;
  TimesVector times;                 // the Toda index lives here
  double mu = 0.0;                   // KP and BKP only
};

void validate_spec(const CorrespondenceSpec& spec);

std::vector<MomentumPair> map_lattice_to_momenta(const CorrespondenceSpec& spec);

struct PhaseSet {
  std::vector<Complex> initial;
  std::vector<Complex> full;
};

PhaseSet build_phases(const CorrespondenceSpec& spec);
SolitonSystem build_soliton_system(const CorrespondenceSpec& spec);
// The beta = 2 gas whose grand partition function equals tau_hirota of build_soliton_system.
LatticeGas build_gas(const CorrespondenceSpec& spec);

// R^{m^2} tau(m - 1, R^p t_p, R^p tbar_p) for a Toda system, m taken from `times`.
TauValue gauge_transform_tau(const SolitonSystem& system, const TimesVector& times, double radius,
                             const EnumerationOptions& options = {});

// Power of R multiplying the n-particle part of the transformed tau at index m.
int sector_exponent(int m, int n, int fixed_charge);

// Model whose n-particle sum is the R-free part of the n-particle sector of the transformed
// tau at index m and radius R (R = 0 allowed).
IsingModel stripped_model(const CorrespondenceSpec& spec, int m, double radius);

// Z_0 .. Z_N of the R -> 0 limit, Z_n being the surviving sector at index n + fixed_charge.
SectorDecomposition sector_extract(const CorrespondenceSpec& spec,
                                   const EnumerationOptions& options = {});

struct LimitRow {
  double radius;
  TauValue normalized_tau;  // transformed tau divided by its leading power of R
  double deviation;         // |normalized_tau / Z - 1|
};

struct LimitStudy {
  int m = 0;
  int surviving_sector = 0;
  TauValue limit;
  std::vector<LimitRow> rows;
  double fitted_order = 0.0;  // least-squares slope of log deviation against log R
};

LimitStudy r_limit_study(const CorrespondenceSpec& spec, std::span<const double> radii,
                         const EnumerationOptions& options = {});

struct SectorSlope {
  int n;
  double slope;
  int expected;
};

// Log-log slope in R of each n-particle sector of the transformed tau between two radii.
std::vector<SectorSlope> sector_slopes(const CorrespondenceSpec& spec, double r1, double r2,
                                       const EnumerationOptions& options = {});

}  // namespace solgas
