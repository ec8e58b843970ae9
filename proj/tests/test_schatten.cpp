#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hanner/schatten.hpp"
#include "oracles.hpp"

using namespace hanner;

TEST(Schatten, IdentityNorm) {
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    EXPECT_NEAR(schatten_2x2(ComplexMatrix2::identity(), p), std::pow(2.0, 1.0 / p), 1e-15);
  }
}

TEST(Schatten, DiagonalFrobenius) {
  EXPECT_NEAR(schatten_2x2({3.0, 0.0, 0.0, 4.0}, 2.0), 5.0, 1e-15);
  EXPECT_NEAR(schatten_2x2({3.0, 0.0, 0.0, -4.0}, 1.0), 7.0, 1e-14);
}

TEST(Schatten, RankOneIsFlatInP) {
  // All-ones matrix: singular values (2, 0).
  for (double p : {1.0, 1.3, 2.0, 5.0}) {
    EXPECT_NEAR(schatten_2x2({1.0, 1.0, 1.0, 1.0}, p), 2.0, 1e-15);
  }
  const auto [s1, s2] = singular_values_2x2({1.0, 1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(s1, 2.0);
  EXPECT_EQ(s2, 0.0);
}

TEST(Schatten, ZeroMatrix) {
  EXPECT_EQ(schatten_2x2({}, 1.5), 0.0);
  EXPECT_EQ(schatten_p_power_2x2({}, 1.0), 0.0);
}

TEST(Schatten, RejectsBadExponent) {
  EXPECT_THROW(schatten_2x2(ComplexMatrix2::identity(), 0.5), std::domain_error);
  EXPECT_THROW(schatten_2x2(ComplexMatrix2::identity(), std::nan("")), std::domain_error);
  EXPECT_THROW(schatten_2x2(ComplexMatrix2::identity(), INFINITY), std::domain_error);
}

TEST(Schatten, SmallSingularValueKeepsRelativeAccuracy) {
  // det = 1 exactly, so s2 = 1 / s1.
  const ComplexMatrix2 m{1e8, 1.0, 0.0, 1e-8};
  const auto [s1, s2] = singular_values_2x2(m);
  EXPECT_NEAR(s1 * s2, 1.0, 1e-14);
  EXPECT_GT(s2, 0.0);
}

TEST(Schatten, ExtremeScalesDoNotOverflow) {
  const ComplexMatrix2 big{3e300, 0.0, 0.0, 4e300};
  EXPECT_TRUE(oracle::rel_close(schatten_2x2(big, 2.0), 5e300, 1e-14));
  const ComplexMatrix2 tiny{3e-300, 0.0, 0.0, 4e-300};
  EXPECT_TRUE(oracle::rel_close(schatten_2x2(tiny, 2.0), 5e-300, 1e-14));
}

TEST(Schatten, MatchesJacobiSvd) {
  oracle::Sampler rng(11);
  for (int k = 0; k < 2000; ++k) {
    const ComplexMatrix2 m = rng.matrix();
    const auto [s1, s2] = singular_values_2x2(m);
    const auto [o1, o2] = oracle::svd_2x2(m);
    EXPECT_TRUE(oracle::rel_close(s1, o1, 1e-13));
    EXPECT_NEAR(s2, o2, 1e-13 * o1);
    for (double p : {1.0, 1.7, 2.0, 4.5}) {
      EXPECT_TRUE(oracle::rel_close(schatten_2x2(m, p), oracle::schatten_2x2(m, p), 1e-12));
    }
  }
}

TEST(Schatten, UnitaryInvariance) {
  oracle::Sampler rng(5);
  for (int k = 0; k < 200; ++k) {
    const ComplexMatrix2 m = rng.matrix();
    const Complex u = std::polar(1.0, rng.uniform(0.0, 6.0));
    const Complex v = std::polar(1.0, rng.uniform(0.0, 6.0));
    // diag(u, v) * m * diag(conj v, u).
    const ComplexMatrix2 w{u * m.a * std::conj(v), u * m.b * u, v * m.c * std::conj(v),
                           v * m.d * u};
    EXPECT_TRUE(oracle::rel_close(schatten_2x2(w, 1.3), schatten_2x2(m, 1.3), 1e-13));
    const ComplexMatrix2 t{m.a, m.c, m.b, m.d};
    EXPECT_TRUE(oracle::rel_close(schatten_2x2(t, 2.7), schatten_2x2(m, 2.7), 1e-13));
  }
}

TEST(Schatten, NormDecreasesInP) {
  oracle::Sampler rng(8);
  for (int k = 0; k < 200; ++k) {
    const ComplexMatrix2 m = rng.matrix();
    double prev = schatten_2x2(m, 1.0);
    for (double p : {1.2, 1.5, 2.0, 3.0, 8.0}) {
      const double cur = schatten_2x2(m, p);
      EXPECT_LE(cur, prev * (1.0 + 1e-14));
      prev = cur;
    }
  }
}

TEST(Schatten, GramInvariants) {
  const GramInvariants g = gram_invariants({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(g.trace, 30.0);
  EXPECT_DOUBLE_EQ(g.det, 4.0);
}

TEST(Schatten, NonFiniteInputRejected) {
  EXPECT_THROW(schatten_2x2({std::nan(""), 0.0, 0.0, 1.0}, 2.0), std::domain_error);
}

TEST(SingDiag, SortsModuliDecreasing) {
  const std::vector<Complex> d{{0.0, -3.0}, 5.0, -4.0};
  EXPECT_EQ(sing_diag(std::span<const Complex>(d)), (std::vector<double>{5.0, 4.0, 3.0}));
  const std::vector<double> r{-1.0, 2.0};
  EXPECT_EQ(sing_diag(std::span<const double>(r)), (std::vector<double>{2.0, 1.0}));
}

TEST(AbsEntrywise, TakesModuli) {
  const ComplexMatrix2 m = abs_entrywise({{3.0, 4.0}, -2.0, {0.0, 1.0}, 0.0});
  EXPECT_DOUBLE_EQ(m.a.real(), 5.0);
  EXPECT_DOUBLE_EQ(m.b.real(), 2.0);
  EXPECT_DOUBLE_EQ(m.c.real(), 1.0);
  EXPECT_EQ(m.d, Complex{});
}

TEST(GFunc, DiagonalIsTrace) {
  for (double p : {1.0, 1.5, 3.0}) {
    EXPECT_NEAR(g_func({2.0, 0.0, 0.0, 7.0}, p), 9.0, 1e-13);
  }
}

TEST(GFunc, HomogeneousOfDegreeOne) {
  const RealMatrix2 a{1.0, 2.0, 0.5, 3.0};
  for (double p : {1.2, 2.0, 3.5}) {
    EXPECT_TRUE(oracle::rel_close(g_func(4.0 * a, p), 4.0 * g_func(a, p), 1e-13));
  }
}

TEST(GFunc, RejectsNegativeEntries) {
  EXPECT_THROW(g_func({1.0, -1.0, 0.0, 1.0}, 1.5), std::domain_error);
}

TEST(LpNorm, Basics) {
  const std::vector<double> v{3.0, -4.0};
  EXPECT_DOUBLE_EQ(lp_norm(std::span<const double>(v), 2.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(std::span<const double>(v), 1.0), 7.0);
  const std::vector<Complex> z{};
  EXPECT_EQ(lp_norm(std::span<const Complex>(z), 1.5), 0.0);
  const std::vector<Complex> w{{3.0, 4.0}};
  EXPECT_DOUBLE_EQ(lp_norm(std::span<const Complex>(w), 3.0), 5.0);
}
