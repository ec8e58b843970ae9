// Seeded randomized search for violations of the inequality checkers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hanner/counterexamples.hpp"
#include "hanner/rng.hpp"

namespace hanner {

/// Instance families.
///  - General: no structure beyond what the checker itself needs. For the PSD
///    checkers (theorem2, lemma2, pos_block) this means unrestricted PSD data,
///    with the diagonals of A and B in independent order.
///  - Psd: PSD data with the diagonals of A and B both in decreasing order
///    (the setting in which the ordering results are valid). Checkers on
///    general complex data get the PSD embedding [[A,C],[C*,B]].
///  - Boundary: like Psd, but with forced zero entries and PSD-boundary
///    indices a_i b_i = |c_i|^2.
enum class Family { General, Psd, Boundary };

const char* to_string(Family f);
Family parse_family(const std::string& name);

/// Whether a violation of `id` on `family` instances contradicts a proven
/// result (and therefore signals a bug rather than a known counterexample).
bool is_theorem_backed(CheckerId id, Family family);

struct SearchConfig {
  Family family = Family::General;
  CheckerId checker = CheckerId::Theorem1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<double> p_list{1.0, 1.5, 2.0, 3.0};
  double tol = kDefaultTolerance;
  std::size_t max_n = 5;
};

struct Violation {
  std::size_t trial = 0;
  Instance instance;
  InequalityReport report;
};

/// Samples one instance for the given trial. Moduli are log-uniform in
/// [1e-3, 1e3] and phases uniform. Deterministic in (seed, trial) alone, so
/// trials can be evaluated in any order.
Instance sample_instance(CheckerId id, Family family, std::uint64_t seed, std::size_t trial,
                         std::size_t max_n = 5);

/// Runs the checker on `trials` instances at every p in p_list and returns
/// the (trial, p) pairs whose margin is below -threshold, in trial order.
/// Throws std::invalid_argument on trials == 0 or an empty p_list.
std::vector<Violation> random_search(const SearchConfig& config);

}  // namespace hanner
