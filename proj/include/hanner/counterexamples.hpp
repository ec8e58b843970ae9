// Exponent scans and the two built-in ordering counterexamples.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hanner/block_model.hpp"
#include "hanner/inequalities.hpp"

namespace hanner {

enum class CheckerId {
  ScalarHanner,
  Theorem1,
  Theorem2,
  SingOrder,
  Lemma1,
  GSuperadd,
  Lemma2,
  PosBlock,
};

/// Stable identifiers used on the command line and in reports:
/// scalar_hanner, theorem1, theorem2, sing_order, lemma1, g_superadd, lemma2, pos_block.
const char* to_string(CheckerId id);
/// Throws std::invalid_argument for an unknown name.
CheckerId parse_checker_id(const std::string& name);
std::span<const CheckerId> all_checkers();

inline constexpr double kDefaultScanResolution = 1e-6;
inline constexpr double kDefaultScanPMax = 8.0;

struct CrossoverResult {
  std::optional<double> p_star;  // empty: no sign change on the grid
  std::pair<double, double> bracket{0.0, 0.0};
  std::vector<std::pair<double, double>> samples;  // (p, margin)
};

/// Evaluates margin_at on the grid and bisects the first bracket where the
/// margin goes from one side of the tolerance band [-zero_band(p), zero_band(p)]
/// to the other. Samples inside the band count as zero and do not start or end
/// a bracket. Throws std::invalid_argument on an empty, unsorted or p < 1 grid.
CrossoverResult crossover_scan(const std::function<double(double)>& margin_at,
                               std::span<const double> p_grid,
                               double resolution = kDefaultScanResolution,
                               const std::function<double(double)>& zero_band = {});

/// Instances a scan or search can run on.
struct MatrixPair {
  RealMatrix2 x, y;
};
struct VectorPair {
  std::vector<Complex> u, v;
};
using Instance =
    std::variant<DiagBlockMatrix, PsdDiagBlock, Lemma2State, ComplexMatrix2, MatrixPair, VectorPair>;

/// Runs the named checker on an instance of matching type. A PsdDiagBlock is
/// also accepted by theorem1 and sing_order (through embed). Throws
/// std::invalid_argument on a type mismatch.
InequalityReport run_checker(CheckerId id, const Instance& instance, double p,
                             double tol = kDefaultTolerance);

/// Scan of run_checker(id, instance, p).margin over the grid.
CrossoverResult crossover_scan(const Instance& instance, CheckerId id,
                               std::span<const double> p_grid,
                               double resolution = kDefaultScanResolution,
                               double tol = kDefaultTolerance);

/// Evenly spaced grid lo, lo + step, ..., hi (inclusive, rounded to the grid).
std::vector<double> linear_grid(double lo, double hi, double step);

struct CounterexampleAnalysis {
  std::string id;
  std::string description;
  DiagBlockMatrix instance;
  std::optional<CrossoverResult> crossover;
  std::vector<InequalityReport> sweep;
};

/// A = diag(4,0), B = diag(7,6), C = diag(7,10) in the layout [[A,C],[C,B]].
DiagBlockMatrix counterexample_one();
/// A = 0, B = diag(5,6), C = diag(5,1), D = diag(6,5) in the layout [[A,B],[C,D]].
DiagBlockMatrix counterexample_two();

/// (i): sing_order margin scanned on p in [1, 2] and bisected at the sign
/// change; (ii): sing_order reports at p in {1, 1.25, 1.5, 1.75, 1.99, 2}.
std::vector<CounterexampleAnalysis> reproduce_counterexamples();

}  // namespace hanner
