// Orderings of the diagonal entries within each block and their effect on
// the block norm.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hanner/block_model.hpp"

namespace hanner {

using Permutation = std::vector<std::size_t>;

enum class Objective { Min, Max };

inline constexpr std::size_t kMaxExhaustiveSize = 6;
inline constexpr std::size_t kMaxLandscapeSize = 4;

/// Block A keeps its order; entry i of the permuted B is b[sigma_b[i]], and
/// likewise for C and D.
struct OrderingAssignment {
  Permutation sigma_b, sigma_c, sigma_d;
  double value = 0.0;
};

DiagBlockMatrix apply_assignment(const DiagBlockMatrix& bm, const OrderingAssignment& as);

/// Exhaustive search over the (n!)^3 orderings of the moduli |B|, |C|, |D|
/// against a fixed |A|. Ties resolve to the lexicographically smallest
/// (sigma_b, sigma_c, sigma_d). Throws std::invalid_argument for n > 6.
OrderingAssignment exhaustive_optimize(const DiagBlockMatrix& bm, double p, Objective objective);

/// All (n!)^3 assignments in lexicographic order, for n <= 4.
std::vector<OrderingAssignment> ordering_landscape(const DiagBlockMatrix& bm, double p);

struct CPermutationOptimum {
  Permutation sigma;  // |c| reordered: entry i is |c[sigma[i]]|
  double value = 0.0;
};

/// Optimum of ||[[A, C'], [C', B]]||_p over reorderings C' of |C| with A and
/// B pinned (the reorderings that keep the matrix Hermitian). n <= 8.
CPermutationOptimum exhaustive_c_permutations(const PsdDiagBlock& pb, double p,
                                              Objective objective);

struct SwapStep {
  std::size_t i = 0, j = 0;  // exchanged indices, i < j
  double before = 0.0;       // ||.||_p^p before the swap
  double after = 0.0;
  double delta() const { return after - before; }
};

struct SwapSortResult {
  PsdDiagBlock sorted;
  std::vector<SwapStep> swaps;
  double initial_power = 0.0;  // ||.||_p^p of the input
  double final_power = 0.0;
  double final_norm = 0.0;
};

/// Bubble-sorts |c| into decreasing order with adjacent exchanges; every
/// exchange is one application of the two-index rearrangement. Requires a PSD
/// input whose a and b are already in decreasing order; throws PsdViolation
/// or std::invalid_argument otherwise.
SwapSortResult swap_sort_psd(const PsdDiagBlock& pb, double p);

/// Sorts indices by decreasing a (ties by decreasing b); the returned
/// instance satisfies swap_sort_psd's precondition whenever a and b are
/// similarly ordered.
PsdDiagBlock presort_psd(const PsdDiagBlock& pb);

/// Cycle notation on 1-based labels, fixed points omitted: "(1 3 2)(4 5)";
/// the identity is "()".
std::string cycle_notation(const Permutation& sigma);

}  // namespace hanner
