// Checkers for the Hanner-type norm inequalities on diagonal-block matrices.
//
// Every checker returns an InequalityReport whose chain lists the sides of the
// inequality in the order they are stated. For 1 <= p <= 2 the chain is
// claimed non-increasing; for p > 2 non-decreasing. The margin is the
// smallest adjacent step in the claimed direction, so a negative margin
// beyond tolerance is a violation.

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hanner/block_model.hpp"
#include "hanner/schatten.hpp"

namespace hanner {

inline constexpr double kDefaultTolerance = 1e-9;

enum class Direction {
  NonIncreasing,  // chain[0] >= chain[1] >= ...
  NonDecreasing,  // chain[0] <= chain[1] <= ...
};

/// NonIncreasing for p <= 2, NonDecreasing above.
Direction direction_for(double p);
const char* to_string(Direction d);

struct InequalityReport {
  std::string name;
  double p = 1.0;
  std::vector<double> chain;
  Direction direction = Direction::NonIncreasing;
  double margin = 0.0;
  bool holds = true;
  double tol = kDefaultTolerance;
  /// Auxiliary quantities (named), e.g. D and D' for the 2x2 modulus lemma.
  std::vector<std::pair<std::string, double>> extras;

  /// Largest absolute chain value.
  double scale() const;
  /// Violation threshold: tol absolute plus tol relative to scale().
  double threshold() const { return tol * (1.0 + scale()); }
  /// Violation well beyond roundoff (margin < -10 * threshold).
  bool strict_violation() const { return margin < -10.0 * threshold(); }
};

/// Builds a report from a chain, computing margin and verdict.
InequalityReport make_report(std::string name, double p, std::vector<double> chain,
                             Direction direction, double tol = kDefaultTolerance);

/// Scalar Hanner inequality for l_p vectors:
///   ||u+v||^p + ||u-v||^p  vs  (||u|| + ||v||)^p + | ||u|| - ||v|| |^p.
InequalityReport check_scalar_hanner(std::span<const Complex> u, std::span<const Complex> v,
                                     double p, double tol = kDefaultTolerance);

/// ||[[A,B],[C,D]]||  vs  ||[[|A|,|B|],[|C|,|D|]]||  vs  ||[[||A||,||B||],[||C||,||D||]]||.
InequalityReport check_theorem1(const DiagBlockMatrix& bm, double p,
                                double tol = kDefaultTolerance);

/// ||[[A,B],[C,D]]|| vs the same matrix with every block replaced by Sing(.).
/// No ordering result is claimed for general matrices; this is the comparison
/// the counterexamples exercise.
InequalityReport check_sing_order(const DiagBlockMatrix& bm, double p,
                                  double tol = kDefaultTolerance);

/// ||[[A,C],[C*,B]]|| vs ||[[Sing A, Sing C],[Sing C, Sing B]]|| for PSD input.
/// Throws PsdViolation on non-PSD input.
InequalityReport check_theorem2(const PsdDiagBlock& pb, double p,
                                double tol = kDefaultTolerance);

/// ||m|| vs ||abs_entrywise(m)||. Extras: D = |ad-bc|^2, D' = (|ad|-|bc|)^2.
InequalityReport check_lemma1(const ComplexMatrix2& m, double p,
                              double tol = kDefaultTolerance);

/// g(x) + g(y) vs g(x + y).
InequalityReport check_g_superadd(const RealMatrix2& x, const RealMatrix2& y, double p,
                                  double tol = kDefaultTolerance);

/// ||M|| vs ||M_r|| for the 4x4 two-index state.
InequalityReport check_lemma2(const Lemma2State& s, double p, double tol = kDefaultTolerance);

/// ||[[A,C],[C*,B]]|| vs ||[[||A||,||C||],[||C||,||B||]]|| for PSD input.
InequalityReport check_pos_block(const PsdDiagBlock& pb, double p,
                                 double tol = kDefaultTolerance);

/// Normalized Hoelder dual N = M^(p-1) / ||M^(p-1)||_q of the state's matrix,
/// for which Tr MN = ||M||_p ||N||_q. Requires p > 1.
Lemma2State hoelder_dual(const Lemma2State& s, double p);

/// Trace of the product of the two 4x4 matrices.
double trace_product(const Lemma2State& m, const Lemma2State& n);

/// The duality argument transferring the rearrangement inequality to p > 2.
/// Chain (non-decreasing): [Tr MN, Tr M_r N_r, ||M_r||_p ||N||_q].
/// Extras report the individual links, including Hoelder for the pair (M, N)
/// and the q-norm comparison ||N_r||_q <= ||N||_q.
/// Throws std::domain_error unless p > 2.
InequalityReport check_hoelder_duality(const Lemma2State& s, const Lemma2State& dual, double p,
                                       double tol = kDefaultTolerance);

}  // namespace hanner
