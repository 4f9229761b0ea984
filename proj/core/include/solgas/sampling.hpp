#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "solgas/geometry.hpp"
#include "solgas/soliton.hpp"

namespace solgas {

using Rng = std::mt19937_64;

struct LatticeOptions {
  double extent = 1.0;          // width of the sampled band beyond the margin
  double margin = 0.1;          // clearance from the boundary, relative for disc-like domains
  double min_separation = 0.1;
  std::size_t max_attempts = 100000;
};

// n distinct sites strictly inside the geometry, pairwise at least min_separation apart.
std::vector<Complex> random_lattice(const BoundaryGeometry& geometry, std::size_t n, Rng& rng,
                                    const LatticeOptions& options = {});

// Times in real-potential mode with |t_p| <= magnitude / p up to max_order.
TimesVector random_times(HierarchyKind kind, int max_order, Rng& rng, double magnitude = 0.1);

double uniform(Rng& rng, double lo, double hi);

}  // namespace solgas
