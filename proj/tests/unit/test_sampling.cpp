#include <gtest/gtest.h>

#include "solgas/sampling.hpp"

using namespace solgas;

TEST(Sampling, SeedDeterminesLattice) {
  const auto g = BoundaryGeometry::half_plane();
  Rng a(5), b(5), c(6);
  EXPECT_EQ(random_lattice(g, 8, a), random_lattice(g, 8, b));
  Rng d(5);
  EXPECT_NE(random_lattice(g, 8, d), random_lattice(g, 8, c));
}

TEST(Sampling, SitesAreInteriorAndSeparated) {
  Rng rng(8);
  const LatticeOptions opts{1.0, 0.1, 0.15, 100000};
  for (const auto& g : {BoundaryGeometry::free_plane(), BoundaryGeometry::half_plane(),
                        BoundaryGeometry::quarter_plane(), BoundaryGeometry::disc_exterior(0.7),
                        BoundaryGeometry::conformal_exterior(ConformalMap::scale(0.5)),
                        BoundaryGeometry::conformal_exterior(ConformalMap::joukowski_inverse())}) {
    const auto sites = random_lattice(g, 12, rng, opts);
    ASSERT_EQ(sites.size(), 12u);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      EXPECT_TRUE(g.in_interior(sites[i]));
      for (std::size_t j = i + 1; j < sites.size(); ++j) EXPECT_GE(std::abs(sites[i] - sites[j]), 0.15);
    }
  }
  EXPECT_THROW(random_lattice(BoundaryGeometry::free_plane(), 200, rng, {0.1, 0.1, 0.5, 1000}), RangeError);
}

TEST(Sampling, TimesAreAdmissibleAndReal) {
  Rng rng(9);
  for (const auto kind : {HierarchyKind::KP, HierarchyKind::BKP, HierarchyKind::Toda2D}) {
    const auto t = random_times(kind, 4, rng, 0.2);
    EXPECT_NO_THROW(validate_times(kind, t));
    EXPECT_TRUE(is_real_mode(kind, t));
    for (int p = 1; p <= 4; ++p) EXPECT_LE(std::abs(t.t(p)), 0.2 / p + 1e-15);
  }
}
