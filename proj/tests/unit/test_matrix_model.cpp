#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "solgas/gas.hpp"
#include "solgas/matrix_model.hpp"
#include "solgas/sampling.hpp"

using namespace solgas;

namespace {

const std::vector<Complex> kWorked = {1.0, Complex(0, 1), -1.0};

}  // namespace

TEST(Moments, WorkedLattice) {
  const auto m = moment_matrix(Measure::from_lattice(kWorked, {}), 2);
  EXPECT_NEAR(std::abs(m(0, 0) - 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) - 3.0), 0.0, 1e-15);
  const auto mass = moment_matrix(Measure::discrete(kWorked, {0.5, 2.0, 1.5}), 1);
  EXPECT_NEAR(std::abs(mass(0, 0) - 4.0), 0.0, 1e-15);
  EXPECT_THROW(moment_matrix(Measure::from_lattice(kWorked, {}), 0), RangeError);
}

TEST(Moments, HermitianPositive) {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sites = random_lattice(BoundaryGeometry::free_plane(), 8, rng);
    const auto m = moment_matrix(Measure::from_lattice(sites, [](Complex z) { return 0.2 * std::norm(z); },
                                                       random_times(HierarchyKind::Toda2D, 2, rng)),
                                 5);
    EXPECT_LT((m - m.adjoint()).norm(), 1e-14 * m.norm());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Determinant, WorkedLattice) {
  const auto measure = Measure::from_lattice(kWorked, {});
  EXPECT_EQ(determinant_partition(measure, 0).value.value(), Complex(1.0));
  EXPECT_NEAR(determinant_partition(measure, 2).value.value().real(), 8.0, 1e-13);
  EXPECT_NEAR(determinant_partition(measure, 3).value.value().real(), 16.0, 1e-13);
  const auto over = determinant_partition(measure, 4);
  EXPECT_TRUE(over.value.is_zero());
  EXPECT_TRUE(over.rank_deficient);
}

TEST(Determinant, MatchesLuAndSubsetSum) {
  Rng rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto sites = random_lattice(BoundaryGeometry::free_plane(), n, rng);
    const auto measure = Measure::from_lattice(sites, [](Complex z) { return 0.1 * std::norm(z); });
    const LatticeGas gas(sites, BoundaryGeometry::free_plane(), 2.0, 0.0, [](Complex z) { return 0.1 * std::norm(z); });
    for (std::size_t m = 1; m <= n; ++m) {
      const auto d = determinant_partition(measure, m);
      EXPECT_FALSE(d.rank_deficient);
      EXPECT_LT(oracle::rel(d.value.value(), moment_matrix(measure, m).determinant()), 1e-9);
      EXPECT_LT(relative_difference(d.value, canonical_partition(gas, m)), 1e-11);
    }
  }
}

TEST(Determinant, LargerLatticeStaysAccurate) {
  Rng rng(73);
  const auto sites = random_lattice(BoundaryGeometry::free_plane(), 14, rng, {1.0, 0.1, 0.05, 100000});
  const auto measure = Measure::from_lattice(sites, {});
  const LatticeGas gas(sites, BoundaryGeometry::free_plane(), 2.0, 0.0);
  for (const std::size_t m : {6u, 10u, 13u, 14u}) {
    EXPECT_LT(relative_difference(determinant_partition(measure, m).value, canonical_partition(gas, m)), 1e-10) << m;
  }
}

TEST(Measure, Validation) {
  EXPECT_THROW(Measure::discrete(kWorked, {1.0, 0.0, 1.0}), ValidationError);
  EXPECT_THROW(Measure::discrete(kWorked, {1.0, 1.0}), ValidationError);
  EXPECT_THROW(Measure::discrete({1.0, 1.0}, {1.0, 1.0}), CoincidenceError);
  TimesVector unpaired(2);
  unpaired.set_t(1, 0.3);
  EXPECT_THROW(Measure::from_lattice(kWorked, {}, unpaired), ModeError);
  GriddedDensity g = GriddedDensity::sample([](Complex) { return 1.0; }, Complex(-1, -1), Complex(1, 1), 4, 4);
  g.values[3] = -1.0;
  EXPECT_THROW(Measure::gridded(g, {}), ValidationError);
}

TEST(Continuous, GaussianMassOnDisc) {
  const double radius = 1.5;
  const auto disc = [radius](Complex z) { return std::abs(z) <= radius ? 1.0 : 0.0; };
  const ConfiningPotential gauss = [](Complex z) { return 0.5 * std::norm(z); };
  const auto study = refine_continuous_partition(disc, Complex(-radius, -radius), Complex(radius, radius), 1, 64,
                                                 4, 1e-2, gauss);
  const double exact = std::numbers::pi * (1.0 - std::exp(-radius * radius));
  EXPECT_NEAR(study.estimate.value().real(), exact, 5e-3 * exact);
  EXPECT_LT(std::abs(study.levels.back().value.value().real() - exact),
            std::abs(study.levels.front().value.value().real() - exact));
}

TEST(Continuous, RotationInvarianceDecouplesMoments) {
  const auto gaussian = [](Complex z) { return std::exp(-std::norm(z)); };
  double previous = 1e300;
  for (const std::size_t n : {16u, 32u, 64u}) {
    const auto g = GriddedDensity::sample(gaussian, Complex(-4, -4), Complex(4, 4), n, n);
    const auto m = moment_matrix(Measure::gridded(g, {}), 3);
    const double off = std::abs(m(0, 2)) + std::abs(m(1, 2)) + std::abs(m(0, 1));
    EXPECT_LT(off, 1e-10 * std::abs(m(0, 0)) + previous);
    previous = off;
  }
}

TEST(Continuous, ConcentratedDensityApproachesSites) {
  const std::vector<Complex> sites = {Complex(0.5, 0.25), Complex(-0.75, 0.5), Complex(0.25, -0.75)};
  const auto discrete = determinant_partition(Measure::from_lattice(sites, {}), 2).value;
  double previous = 1e300;
  for (const double width : {0.1, 0.05, 0.025}) {
    // narrow bumps of unit mass centred on the sites
    const auto bumps = [&](Complex z) {
      double v = 0.0;
      for (const auto s : sites) v += std::exp(-std::norm(z - s) / (width * width)) / (std::numbers::pi * width * width);
      return v;
    };
    const auto g = GriddedDensity::sample(bumps, Complex(-1.5, -1.5), Complex(1.5, 1.5), 600, 600);
    const double err = relative_difference(continuous_partition(g, 2), discrete);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 2e-3);
}

TEST(Continuous, RefinementFailureIsReported) {
  const auto rough = [](Complex z) { return std::abs(z) < 1.0 ? 1.0 : 0.0; };
  EXPECT_THROW(refine_continuous_partition(rough, Complex(-1, -1), Complex(1, 1), 2, 4, 2, 1e-12), NonConvergenceError);
  GriddedDensity g = GriddedDensity::sample(rough, Complex(-1, -1), Complex(1, 1), 8, 8);
  g.normalize_to(5.0);
  EXPECT_NEAR(g.total_mass(), 5.0, 1e-13);
}
