#include <gtest/gtest.h>

#include <cstdlib>

#include "oracle.hpp"
#include "solgas/enumeration.hpp"

using namespace solgas;

namespace {

IsingModel random_model(std::size_t n, Rng& rng, bool real) {
  IsingModel m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set_field(i, real ? LogFactor::exp_of_real(uniform(rng, -1.0, 1.0))
                        : LogFactor::of(oracle::random_complex(rng, 0.2, 2.0)));
    for (std::size_t j = i + 1; j < n; ++j) {
      m.set_coupling(i, j, real ? LogFactor::exp_of_real(uniform(rng, -0.5, 0.5))
                                : LogFactor::of(oracle::random_complex(rng, 0.5, 1.5)));
    }
  }
  return m;
}

Complex oracle_sum(const IsingModel& m) {
  std::vector<Complex> e;
  for (std::size_t i = 0; i < m.size(); ++i) e.push_back(m.field(i).value());
  return oracle::subset_sum(e, [&](std::size_t i, std::size_t j) { return m.coupling(i, j).value(); });
}

}  // namespace

TEST(Enumeration, EmptyModelIsOne) {
  EXPECT_EQ(sum_all(IsingModel(0)).value(), Complex(1.0));
}

TEST(Enumeration, MatchesOracleOnSmallModels) {
  Rng rng(11);
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto m = random_model(n, rng, n % 2 == 0);
    EXPECT_LT(oracle::rel(sum_all(m).value(), oracle_sum(m)), 1e-12) << "n=" << n;
  }
}

TEST(Enumeration, GrayAgreesWithNaiveUpTo16Sites) {
  Rng rng(12);
  for (const std::size_t n : {4u, 10u, 13u, 16u}) {
    const auto m = random_model(n, rng, false);
    EnumerationOptions naive;
    naive.order = EnumerationOrder::Naive;
    EXPECT_LT(relative_difference(sum_all(m), sum_all(m, naive)), 1e-12) << "n=" << n;
  }
}

TEST(Enumeration, ParallelBlocksIndependentOfWorkerCount) {
  Rng rng(13);
  const auto m = random_model(18, rng, false);
  EnumerationOptions deterministic;
  deterministic.deterministic = true;
  EnumerationOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const auto a = sum_all(m, one), b = sum_all(m, four);
  EXPECT_EQ(a.log_magnitude(), b.log_magnitude());
  EXPECT_EQ(a.phase_factor(), b.phase_factor());
  EXPECT_LT(relative_difference(a, sum_all(m, deterministic)), 1e-10);
}

TEST(Enumeration, CountsPartitionTheSum) {
  Rng rng(14);
  const auto m = random_model(8, rng, true);
  const auto by_count = sum_by_count(m);
  ASSERT_EQ(by_count.size(), 9u);
  TauValue total;
  for (std::size_t k = 0; k <= 8; ++k) {
    total += by_count[k];
    EXPECT_LT(relative_difference(by_count[k], sum_fixed_count(m, k)), 1e-12);
  }
  EXPECT_LT(relative_difference(total, sum_all(m)), 1e-13);
}

TEST(Enumeration, ExactZerosAreSkipped) {
  IsingModel m(3);
  for (std::size_t i = 0; i < 3; ++i) m.set_field(i, LogFactor::exp_of_real(0.0));
  m.set_coupling(0, 1, LogFactor::of(0.0));
  // all subsets except those containing both 0 and 1: 1 + 3 + 2 = 6
  EXPECT_NEAR(sum_all(m).value().real(), 6.0, 1e-14);
}

TEST(Enumeration, SizeAndRangeErrors) {
  EnumerationOptions small;
  small.max_sites = 4;
  EXPECT_THROW(sum_all(IsingModel(5), small), SizeError);
  EXPECT_THROW(sum_fixed_count(IsingModel(3), 4), RangeError);
}

TEST(Enumeration, WorkerCountFromEnvironment) {
  ::setenv("SOLGAS_WORKERS", "3", 1);
  EXPECT_EQ(default_worker_count(), 3u);
  ::unsetenv("SOLGAS_WORKERS");
  EXPECT_GE(default_worker_count(), 1u);
}

TEST(SignParity, NegativeRealFactorsStayExactlyReal) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10;
    IsingModel m(n);
    std::vector<Complex> e(n);
    std::vector<std::vector<Complex>> k(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = uniform(rng, -2.0, 2.0);
      m.set_field(i, LogFactor::of(e[i]));
      for (std::size_t j = i + 1; j < n; ++j) {
        k[i][j] = uniform(rng, -1.5, 1.5);
        m.set_coupling(i, j, LogFactor::of(k[i][j]));
      }
    }
    EXPECT_TRUE(m.is_real());
    const TauValue v = sum_all(m);
    EXPECT_EQ(v.value().imag(), 0.0);
    const Complex ref = oracle::subset_sum(e, [&](std::size_t i, std::size_t j) { return k[i][j]; });
    EXPECT_LT(oracle::rel(v.value(), ref), 1e-12);
  }
}
