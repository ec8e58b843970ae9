#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hanner/counterexamples.hpp"
#include "hanner/rearrangement.hpp"
#include "oracles.hpp"

using namespace hanner;

namespace {

DiagBlockMatrix moduli(const DiagBlockMatrix& bm) {
  DiagBlockMatrix out = bm;
  for (auto* v : {&out.a, &out.b, &out.c, &out.d}) {
    for (auto& z : *v) z = std::abs(z);
  }
  return out;
}

// Brute force over every assignment, without the cost table or pruning.
double brute_force(const DiagBlockMatrix& bm, double p, Objective obj) {
  const std::size_t n = bm.size();
  Permutation sb(n), sc(n), sd(n);
  std::iota(sb.begin(), sb.end(), 0);
  double best = obj == Objective::Min ? INFINITY : -INFINITY;
  do {
    std::iota(sc.begin(), sc.end(), 0);
    do {
      std::iota(sd.begin(), sd.end(), 0);
      do {
        const double v = block_norm(apply_assignment(moduli(bm), {sb, sc, sd, 0.0}), p);
        best = obj == Objective::Min ? std::min(best, v) : std::max(best, v);
      } while (std::next_permutation(sd.begin(), sd.end()));
    } while (std::next_permutation(sc.begin(), sc.end()));
  } while (std::next_permutation(sb.begin(), sb.end()));
  return best;
}

}  // namespace

TEST(Exhaustive, SingleIndex) {
  const DiagBlockMatrix bm{{1.0}, {2.0}, {3.0}, {4.0}};
  const OrderingAssignment r = exhaustive_optimize(bm, 1.5, Objective::Min);
  EXPECT_EQ(r.sigma_b, Permutation{0});
  EXPECT_NEAR(r.value, schatten_2x2({1.0, 2.0, 3.0, 4.0}, 1.5), 1e-14);
}

TEST(Exhaustive, MatchesBruteForce) {
  oracle::Sampler rng(31);
  for (int k = 0; k < 20; ++k) {
    const DiagBlockMatrix bm = rng.blocks(rng.index(2, 3));
    for (double p : {1.0, 1.5, 3.0}) {
      for (Objective obj : {Objective::Min, Objective::Max}) {
        const OrderingAssignment r = exhaustive_optimize(bm, p, obj);
        EXPECT_TRUE(oracle::rel_close(r.value, brute_force(bm, p, obj), 1e-12));
        EXPECT_TRUE(oracle::rel_close(r.value, block_norm(apply_assignment(moduli(bm), r), p),
                                      1e-12));
      }
    }
  }
}

TEST(Exhaustive, BoundsEveryAssignment) {
  oracle::Sampler rng(32);
  const DiagBlockMatrix bm = rng.blocks(3);
  const double lo = exhaustive_optimize(bm, 1.3, Objective::Min).value;
  const double hi = exhaustive_optimize(bm, 1.3, Objective::Max).value;
  for (const auto& as : ordering_landscape(bm, 1.3)) {
    EXPECT_GE(as.value, lo * (1 - 1e-12));
    EXPECT_LE(as.value, hi * (1 + 1e-12));
  }
}

TEST(Exhaustive, PsdMinimumIsSingValue) {
  // Co-sorted PSD data: the minimum over all orderings is the Sing value.
  const PsdDiagBlock pb{{5.0, 2.0}, {4.0, 3.0}, {1.0, 2.0}};
  const double sing = block_norm(sing_ordered(embed(pb)), 1.5);
  EXPECT_TRUE(oracle::rel_close(exhaustive_c_permutations(pb, 1.5, Objective::Min).value, sing,
                                1e-12));
}

TEST(Exhaustive, CounterexampleOneOptimumIsNotSing) {
  const DiagBlockMatrix bm = counterexample_one();
  const OrderingAssignment r = exhaustive_optimize(bm, 1.1, Objective::Min);
  const double sing = block_norm(sing_ordered(bm), 1.1);
  EXPECT_LT(r.value, sing - 1e-6);
}

TEST(Exhaustive, RelabelingInvariance) {
  oracle::Sampler rng(33);
  const DiagBlockMatrix bm = moduli(rng.blocks(3));
  const std::vector<std::size_t> tau{2, 0, 1};
  const double a = exhaustive_optimize(bm, 1.7, Objective::Min).value;
  const double b = exhaustive_optimize(permuted(bm, tau), 1.7, Objective::Min).value;
  EXPECT_TRUE(oracle::rel_close(a, b, 1e-12));
}

TEST(Exhaustive, TiesResolveLexicographically) {
  const DiagBlockMatrix bm{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  const OrderingAssignment r = exhaustive_optimize(bm, 1.5, Objective::Max);
  EXPECT_EQ(r.sigma_b, (Permutation{0, 1}));
  EXPECT_EQ(r.sigma_c, (Permutation{0, 1}));
  EXPECT_EQ(r.sigma_d, (Permutation{0, 1}));
}

TEST(Exhaustive, LargestSizeBoundsRandomAssignments) {
  oracle::Sampler rng(36);
  const DiagBlockMatrix bm = moduli(rng.blocks(kMaxExhaustiveSize));
  const OrderingAssignment lo = exhaustive_optimize(bm, 1.5, Objective::Min);
  const OrderingAssignment hi = exhaustive_optimize(bm, 1.5, Objective::Max);
  EXPECT_TRUE(oracle::rel_close(lo.value, block_norm(apply_assignment(bm, lo), 1.5), 1e-12));
  EXPECT_TRUE(oracle::rel_close(hi.value, block_norm(apply_assignment(bm, hi), 1.5), 1e-12));
  std::mt19937_64 gen(36);
  Permutation sb(kMaxExhaustiveSize), sc(kMaxExhaustiveSize), sd(kMaxExhaustiveSize);
  for (int k = 0; k < 200; ++k) {
    for (auto* s : {&sb, &sc, &sd}) {
      std::iota(s->begin(), s->end(), 0);
      std::shuffle(s->begin(), s->end(), gen);
    }
    const double v = block_norm(apply_assignment(bm, {sb, sc, sd, 0.0}), 1.5);
    EXPECT_GE(v, lo.value * (1 - 1e-12));
    EXPECT_LE(v, hi.value * (1 + 1e-12));
  }
}

TEST(Exhaustive, SizeLimits) {
  const std::vector<Complex> v(kMaxExhaustiveSize + 1, 1.0);
  EXPECT_THROW(exhaustive_optimize({v, v, v, v}, 1.5, Objective::Min), std::invalid_argument);
  const std::vector<Complex> w(kMaxLandscapeSize + 1, 1.0);
  EXPECT_THROW(ordering_landscape({w, w, w, w}, 1.5), std::invalid_argument);
}

TEST(Landscape, CountsAndConsistency) {
  const DiagBlockMatrix one{{1.0}, {2.0}, {3.0}, {4.0}};
  EXPECT_EQ(ordering_landscape(one, 1.5).size(), 1u);
  oracle::Sampler rng(34);
  const DiagBlockMatrix two = rng.blocks(2);
  const auto land = ordering_landscape(two, 1.5);
  EXPECT_EQ(land.size(), 8u);
  const double lo = std::min_element(land.begin(), land.end(), [](auto& x, auto& y) {
                      return x.value < y.value;
                    })->value;
  EXPECT_TRUE(oracle::rel_close(lo, exhaustive_optimize(two, 1.5, Objective::Min).value, 1e-13));
}

TEST(Landscape, CounterexampleTwoIdentityBelowSing) {
  const DiagBlockMatrix bm = counterexample_two();
  const auto land = ordering_landscape(bm, 1.5);
  const double identity = land.front().value;
  const double sing = block_norm(sing_ordered(bm), 1.5);
  EXPECT_LT(identity, sing - 1e-8 * sing);
}

TEST(ApplyAssignment, RejectsNonBijections) {
  const DiagBlockMatrix bm{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}};
  EXPECT_THROW(apply_assignment(bm, {{0, 0}, {0, 1}, {0, 1}, 0.0}), std::invalid_argument);
  EXPECT_THROW(apply_assignment(bm, {{0}, {0, 1}, {0, 1}, 0.0}), std::invalid_argument);
}

TEST(SwapSort, AlreadySorted) {
  const PsdDiagBlock pb{{3.0, 2.0}, {3.0, 2.0}, {2.0, 1.0}};
  const SwapSortResult r = swap_sort_psd(pb, 1.5);
  EXPECT_TRUE(r.swaps.empty());
  EXPECT_EQ(r.initial_power, r.final_power);
}

TEST(SwapSort, TwoIndices) {
  const PsdDiagBlock pb{{3.0, 2.0}, {3.0, 2.0}, {1.0, 2.0}};
  const SwapSortResult r = swap_sort_psd(pb, 1.5);
  ASSERT_EQ(r.swaps.size(), 1u);
  EXPECT_LT(r.swaps[0].delta(), 0.0);
  EXPECT_EQ(r.sorted.c[0], Complex(2.0));
}

TEST(SwapSort, MatchesExhaustiveAndTelescopes) {
  oracle::Sampler rng(35);
  for (int k = 0; k < 100; ++k) {
    const PsdDiagBlock pb = rng.psd(4);
    for (double p : {1.3, 2.6}) {
      const SwapSortResult r = swap_sort_psd(pb, p);
      const Objective obj = p <= 2.0 ? Objective::Min : Objective::Max;
      EXPECT_TRUE(oracle::rel_close(r.final_norm, exhaustive_c_permutations(pb, p, obj).value,
                                    1e-10));
      double sum = 0.0;
      for (const SwapStep& s : r.swaps) {
        sum += s.delta();
        if (p <= 2.0) {
          EXPECT_LE(s.delta(), 1e-9 * s.before);
        } else {
          EXPECT_GE(s.delta(), -1e-9 * s.before);
        }
      }
      EXPECT_NEAR(sum, r.final_power - r.initial_power, 1e-10 * r.initial_power);
      EXPECT_LE(r.swaps.size(), 6u);
      for (std::size_t i = 0; i + 1 < 4; ++i) {
        EXPECT_GE(std::abs(r.sorted.c[i]), std::abs(r.sorted.c[i + 1]));
      }
    }
  }
}

TEST(SwapSort, TiesDoNotSwap) {
  const PsdDiagBlock pb{{3.0, 2.0}, {3.0, 2.0}, {1.0, Complex(0.0, 1.0)}};
  EXPECT_TRUE(swap_sort_psd(pb, 1.5).swaps.empty());
}

TEST(SwapSort, Preconditions) {
  EXPECT_THROW(swap_sort_psd({{1.0}, {1.0}, {2.0}}, 1.5), PsdViolation);
  EXPECT_THROW(swap_sort_psd({{1.0, 2.0}, {2.0, 1.0}, {0.0, 0.0}}, 1.5), std::invalid_argument);
}

TEST(Presort, OrdersByA) {
  const PsdDiagBlock pb{{1.0, 3.0, 2.0}, {1.0, 3.0, 2.0}, {0.5, 1.0, 1.5}};
  const PsdDiagBlock s = presort_psd(pb);
  EXPECT_EQ(s.a, (std::vector<double>{3.0, 2.0, 1.0}));
  EXPECT_EQ(s.c[0], Complex(1.0));
  EXPECT_NO_THROW(swap_sort_psd(s, 1.5));
}

TEST(CycleNotation, Formats) {
  EXPECT_EQ(cycle_notation({0, 1, 2}), "()");
  EXPECT_EQ(cycle_notation({2, 0, 1, 4, 3}), "(1 3 2)(4 5)");
  EXPECT_EQ(cycle_notation({}), "()");
  EXPECT_THROW(cycle_notation({0, 0}), std::invalid_argument);
}
