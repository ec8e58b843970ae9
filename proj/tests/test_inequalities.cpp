#include <gtest/gtest.h>

#include "hanner/analysis.hpp"
#include "hanner/inequalities.hpp"
#include "oracles.hpp"

using namespace hanner;

namespace {

std::vector<Complex> cvec(std::initializer_list<double> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(Report, MarginAndDirection) {
  const InequalityReport down = make_report("x", 1.5, {3.0, 2.0, 2.5}, Direction::NonIncreasing);
  EXPECT_DOUBLE_EQ(down.margin, -0.5);
  EXPECT_FALSE(down.holds);
  EXPECT_TRUE(down.strict_violation());
  const InequalityReport up = make_report("x", 3.0, {1.0, 2.0}, Direction::NonDecreasing);
  EXPECT_DOUBLE_EQ(up.margin, 1.0);
  EXPECT_TRUE(up.holds);
  EXPECT_EQ(direction_for(2.0), Direction::NonIncreasing);
  EXPECT_EQ(direction_for(2.0001), Direction::NonDecreasing);
}

TEST(Report, ToleranceBand) {
  const InequalityReport r = make_report("x", 1.0, {1.0, 1.0 + 1e-12}, Direction::NonIncreasing);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.strict_violation());
  EXPECT_DOUBLE_EQ(r.threshold(), kDefaultTolerance * (1.0 + r.scale()));
}

TEST(ScalarHanner, TrivialEqualities) {
  const auto u = cvec({1.0, -2.0, 3.0});
  const auto zero = cvec({0.0, 0.0, 0.0});
  for (double p : {1.0, 1.5, 3.0}) {
    const InequalityReport a = check_scalar_hanner(u, zero, p);
    EXPECT_NEAR(a.margin, 0.0, 1e-12 * a.scale());
    EXPECT_NEAR(a.chain[0], 2.0 * std::pow(lp_norm(std::span<const Complex>(u), p), p),
                1e-12 * a.scale());
    const InequalityReport b = check_scalar_hanner(u, u, p);
    EXPECT_NEAR(b.margin, 0.0, 1e-12 * b.scale());
  }
}

TEST(ScalarHanner, RandomHolds) {
  oracle::Sampler rng(2);
  for (int k = 0; k < 300; ++k) {
    const auto u = rng.vec(4), v = rng.vec(4);
    for (double p : {1.3, 3.0}) EXPECT_TRUE(check_scalar_hanner(u, v, p).holds);
  }
}

TEST(ScalarHanner, LengthMismatch) {
  EXPECT_THROW(check_scalar_hanner(cvec({1.0}), cvec({1.0, 2.0}), 1.5), std::invalid_argument);
}

TEST(Theorem1, ScalarBlocksMatchLemma1) {
  const DiagBlockMatrix bm{{{1.0, 1.0}}, {{0.0, -2.0}}, {3.0}, {{0.5, 0.5}}};
  const ComplexMatrix2 m{bm.a[0], bm.b[0], bm.c[0], bm.d[0]};
  for (double p : {1.0, 1.6, 3.0}) {
    const InequalityReport t = check_theorem1(bm, p);
    const InequalityReport l = check_lemma1(m, p);
    EXPECT_NEAR(t.chain[0], l.chain[0], 1e-13 * t.scale());
    EXPECT_NEAR(t.chain[1], l.chain[1], 1e-13 * t.scale());
    EXPECT_NEAR(t.chain[2], t.chain[1], 1e-13 * t.scale());
  }
}

TEST(Theorem1, HannerReduction) {
  // A = D = diag(u), B = C = diag(v) splits into u +- v.
  oracle::Sampler rng(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<Complex> u(3), v(3);
    for (auto& x : u) x = rng.uniform(-2.0, 2.0);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    const DiagBlockMatrix bm{u, v, v, u};
    for (double p : {1.0, 1.5, 3.0}) {
      const InequalityReport t = check_theorem1(bm, p);
      const InequalityReport h = check_scalar_hanner(u, v, p);
      // Both outer chains raised to p are the two sides of Hanner's inequality.
      EXPECT_TRUE(oracle::rel_close(std::pow(t.chain[1], p), h.chain[0], 1e-12));
      EXPECT_TRUE(oracle::rel_close(std::pow(t.chain[2], p), h.chain[1], 1e-12));
    }
  }
}

TEST(Theorem1, RandomInstancesHold) {
  oracle::Sampler rng(4);
  for (int k = 0; k < 1000; ++k) {
    const DiagBlockMatrix bm = rng.blocks(rng.index(1, 5));
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const InequalityReport r = check_theorem1(bm, p);
      EXPECT_TRUE(r.holds) << "p=" << p << " margin=" << r.margin;
      EXPECT_EQ(r.chain.size(), 3u);
    }
  }
}

TEST(Theorem2, FixedPointAndFrobenius) {
  const PsdDiagBlock sorted{{3.0, 2.0}, {3.0, 2.0}, {2.0, 1.0}};
  EXPECT_EQ(check_theorem2(sorted, 1.5).margin, 0.0);
  const PsdDiagBlock pb{{3.0, 2.0}, {3.0, 2.0}, {1.0, 2.0}};
  EXPECT_NEAR(check_theorem2(pb, 2.0).margin, 0.0, 1e-13);
}

TEST(Theorem2, FrozenExample) {
  // Reference values from a 40-digit dense eigenvalue computation.
  const PsdDiagBlock pb{{3.0, 2.0}, {3.0, 2.0}, {1.0, 2.0}};
  const InequalityReport r = check_theorem2(pb, 1.5);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.chain[0], 7.077437255362505, 1e-13);
  EXPECT_NEAR(r.chain[1], 6.963727123806499, 1e-13);
}

TEST(Theorem2, RejectsNonPsd) {
  const PsdDiagBlock pb{{4.0, 0.0}, {7.0, 6.0}, {7.0, 10.0}};
  EXPECT_THROW(check_theorem2(pb, 1.5), PsdViolation);
}

TEST(Theorem2, HoldsOnCoSortedData) {
  oracle::Sampler rng(5);
  for (int k = 0; k < 500; ++k) {
    const PsdDiagBlock pb = rng.psd(rng.index(1, 5));
    for (double p : {1.0, 1.4, 2.0, 2.5, 4.0}) EXPECT_TRUE(check_theorem2(pb, p).holds);
  }
}

TEST(Theorem2, FailsWithoutCoSortedDiagonals) {
  // a and b ordered oppositely; Sing reorders them independently.
  const PsdDiagBlock pb{{2.0, 1.0}, {2.0, 4.0}, {2.0, 2.0}};
  const InequalityReport r = check_theorem2(pb, 1.0);
  EXPECT_TRUE(r.strict_violation());
  EXPECT_NEAR(r.chain[0], 9.0, 1e-12);
}

TEST(Lemma1, ExamplesAndDeterminants) {
  const ComplexMatrix2 m{1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0};
  const InequalityReport r = check_lemma1(m, 1.0);
  EXPECT_NEAR(r.chain[0], 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.chain[1], 2.0, 1e-14);
  EXPECT_GT(r.margin, 0.8);
  ASSERT_EQ(r.extras.size(), 3u);
  EXPECT_NEAR(r.extras[0].second, 4.0, 1e-14);
  EXPECT_NEAR(r.extras[1].second, 0.0, 1e-14);
  EXPECT_NEAR(check_lemma1(m, 2.0).margin, 0.0, 1e-14);
  EXPECT_EQ(check_lemma1({1.0, 2.0, 3.0, 4.0}, 1.3).margin, 0.0);
}

TEST(Lemma1, RandomHoldsAndDeterminantOrder) {
  oracle::Sampler rng(6);
  for (int k = 0; k < 1000; ++k) {
    const ComplexMatrix2 m = rng.matrix();
    for (double p : {1.0, 1.7, 2.6}) {
      const InequalityReport r = check_lemma1(m, p);
      EXPECT_TRUE(r.holds);
      EXPECT_GE(r.extras[2].second, -1e-12 * std::max(1.0, r.extras[0].second));
    }
  }
}

TEST(GSuperadd, TrivialCases) {
  const RealMatrix2 x{1.0, 2.0, 3.0, 0.5};
  for (double p : {1.2, 2.5}) {
    EXPECT_NEAR(check_g_superadd(x, {}, p).margin, 0.0, 1e-14);
    EXPECT_NEAR(check_g_superadd(x, 2.5 * x, p).margin, 0.0, 1e-12);
  }
}

TEST(GSuperadd, RandomHolds) {
  oracle::Sampler rng(7);
  for (int k = 0; k < 2000; ++k) {
    const RealMatrix2 x{rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3),
                        rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3)};
    const RealMatrix2 y{rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3),
                        rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-3, 1e3)};
    for (double p : {1.2, 1.7, 2.5, 4.0}) EXPECT_TRUE(check_g_superadd(x, y, p).holds);
  }
}

TEST(GSuperadd, RejectsNegative) {
  EXPECT_THROW(check_g_superadd({-1.0, 0.0, 0.0, 0.0}, {}, 1.5), std::domain_error);
}

TEST(Lemma2, TrivialCases) {
  const Lemma2State s(4.0, 3.0, 4.0, 3.0, 3.0, 1.0);
  EXPECT_EQ(check_lemma2(s, 1.3).margin, 0.0);
  const Lemma2State t(4.0, 3.0, 4.0, 3.0, 1.0, 3.0);
  EXPECT_NEAR(check_lemma2(t, 2.0).margin, 0.0, 1e-13);
}

TEST(Lemma2, FrozenExampleAndDenseOracle) {
  const Lemma2State s(4.0, 3.0, 4.0, 3.0, 1.0, 3.0);
  const InequalityReport r = check_lemma2(s, 1.4);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.chain[0], 10.378479730308475, 1e-12);
  EXPECT_NEAR(r.chain[1], 10.206705259438077, 1e-12);
  EXPECT_TRUE(oracle::rel_close(r.chain[0], oracle::dense_norm(embed(s.to_psd_block()), 1.4),
                                1e-12));
}

TEST(Lemma2, CanonicalStatesHoldInBothRegimes) {
  oracle::Sampler rng(8);
  for (int k = 0; k < 2000; ++k) {
    const PsdDiagBlock pb = rng.psd(2);
    const Lemma2State s = Lemma2State::from_complex(pb.a[0], pb.a[1], pb.b[0], pb.b[1], pb.c[0],
                                                    pb.c[1]);
    ASSERT_TRUE(s.is_canonical());
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) EXPECT_TRUE(check_lemma2(s, p).holds);
  }
}

TEST(PosBlock, SingleIndexIsExact) {
  const PsdDiagBlock pb{{2.0}, {3.0}, {Complex(1.0, 1.0)}};
  for (double p : {1.0, 1.5, 3.0}) EXPECT_NEAR(check_pos_block(pb, p).margin, 0.0, 1e-13);
}

TEST(PosBlock, RandomHolds) {
  oracle::Sampler rng(9);
  for (int k = 0; k < 500; ++k) {
    const PsdDiagBlock pb = rng.psd(3, false);
    for (double p : {1.0, 1.5, 2.0, 3.0}) EXPECT_TRUE(check_pos_block(pb, p).holds);
  }
  EXPECT_THROW(check_pos_block({{1.0}, {1.0}, {2.0}}, 1.5), PsdViolation);
}

TEST(HoelderDuality, DualSaturatesHoelder) {
  const Lemma2State s(4.0, 3.0, 5.0, 2.0, 1.0, 2.0);
  for (double p : {2.5, 3.0, 4.0}) {
    const Lemma2State n = hoelder_dual(s, p);
    const InequalityReport r = check_hoelder_duality(s, n, p);
    double slack = 0.0, norm_m = 0.0;
    for (const auto& [k, v] : r.extras) {
      if (k == "hoelder_slack_MN") slack = v;
      if (k == "norm_M") norm_m = v;
    }
    EXPECT_NEAR(slack, 0.0, 1e-10 * norm_m);
    EXPECT_TRUE(r.holds);
  }
}

TEST(HoelderDuality, RandomCanonicalPairs) {
  oracle::Sampler rng(10);
  for (int k = 0; k < 300; ++k) {
    const PsdDiagBlock pm = rng.psd(2), pn = rng.psd(2);
    const Lemma2State m = Lemma2State::from_complex(pm.a[0], pm.a[1], pm.b[0], pm.b[1], pm.c[0],
                                                    pm.c[1]);
    const Lemma2State n = Lemma2State::from_complex(pn.a[0], pn.a[1], pn.b[0], pn.b[1], pn.c[0],
                                                    pn.c[1]);
    EXPECT_TRUE(check_hoelder_duality(m, n, 3.0).holds);
  }
}

TEST(HoelderDuality, RejectsSmallP) {
  const Lemma2State s(1.0, 1.0, 1.0, 1.0, 0.0, 0.0);
  EXPECT_THROW(check_hoelder_duality(s, s, 2.0), std::domain_error);
}

TEST(HoelderDuality, TwoTermRearrangement) {
  oracle::Sampler rng(12);
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(0, 1), b = rng.uniform(0, 1);
    const double x = rng.uniform(0, 1), y = rng.uniform(0, 1);
    EXPECT_LE(a * x + b * y,
              std::max(a, b) * std::max(x, y) + std::min(a, b) * std::min(x, y) + 1e-15);
  }
}
