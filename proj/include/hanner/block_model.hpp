// Block matrices [[A, B], [C, D]] whose four n x n blocks are diagonal.
//
// Such a matrix is permutation-equivalent to the direct sum of the n 2x2
// matrices [[a_i, b_i], [c_i, d_i]], so every Schatten norm reduces to a sum
// of closed-form 2x2 terms.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hanner/schatten.hpp"

namespace hanner {

/// Dense oracles and exports are desk-scale only.
inline constexpr std::size_t kMaxDenseBlockSize = 64;

struct DiagBlockMatrix {
  std::vector<Complex> a, b, c, d;

  std::size_t size() const { return a.size(); }
  /// Throws std::invalid_argument on ragged, empty or non-finite data.
  void validate() const;
};

/// Candidate for the positive semidefinite matrix [[A, C], [C*, B]] with
/// diagonal blocks. Shape and sign are validated on construction paths;
/// positivity is a separate query (see is_psd) so callers can report which
/// index fails.
struct PsdDiagBlock {
  std::vector<double> a, b;
  std::vector<Complex> c;

  std::size_t size() const { return a.size(); }
  void validate() const;
};

struct PsdCheck {
  bool psd = true;
  std::vector<double> margins;  // a_i b_i - |c_i|^2
  std::optional<std::size_t> first_failure;
};

/// Thrown by checkers that require a PSD instance.
class PsdViolation : public std::domain_error {
 public:
  PsdViolation(std::size_t index, double margin);
  std::size_t index() const { return index_; }
  double margin() const { return margin_; }

 private:
  std::size_t index_;
  double margin_;
};

/// The two-index PSD matrix
///   [[a1, 0, c1, 0], [0, a2, 0, c2], [c1, 0, b1, 0], [0, c2, 0, b2]]
/// with the off-diagonal phases already removed (c_i stored as moduli).
class Lemma2State {
 public:
  /// Throws std::domain_error on negative or non-finite entries and
  /// PsdViolation when a_i b_i < c_i^2.
  Lemma2State(double a1, double a2, double b1, double b2, double c1, double c2);

  /// Conjugating by a diagonal unitary replaces c_i by |c_i| without changing
  /// any norm.
  static Lemma2State from_complex(double a1, double a2, double b1, double b2, Complex c1,
                                  Complex c2);

  double a(std::size_t i) const { return a_.at(i); }
  double b(std::size_t i) const { return b_.at(i); }
  double c(std::size_t i) const { return c_.at(i); }

  /// a1 >= a2 and b1 >= b2.
  bool is_canonical() const;
  /// Swaps the two indices when that makes the state canonical. The swap is a
  /// basis relabeling; states with a and b ordered oppositely are returned
  /// unchanged.
  Lemma2State canonicalized() const;

  /// The 2x2 summand [[a_i, c_i], [c_i, b_i]].
  RealMatrix2 block(std::size_t i) const { return {a_.at(i), c_.at(i), c_.at(i), b_.at(i)}; }
  PsdDiagBlock to_psd_block() const;

  friend bool operator==(const Lemma2State&, const Lemma2State&) = default;

 private:
  std::array<double, 2> a_{}, b_{}, c_{};
};

/// Row-major dense complex matrix used by oracles and exports.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Complex> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

std::vector<ComplexMatrix2> decompose(const DiagBlockMatrix& bm);

double block_norm_p_power(const DiagBlockMatrix& bm, double p);
double block_norm(const DiagBlockMatrix& bm, double p);

PsdCheck is_psd(const PsdDiagBlock& pb);
/// Throws PsdViolation naming the first failing index.
void require_psd(const PsdDiagBlock& pb);

/// Pairs the larger a with the larger b and the larger c.
Lemma2State make_rearranged(const Lemma2State& s);

/// [[A, C], [C*, B]] as a DiagBlockMatrix.
DiagBlockMatrix embed(const PsdDiagBlock& pb);
/// Every block replaced by Sing(block).
DiagBlockMatrix sing_ordered(const DiagBlockMatrix& bm);
/// Applies one permutation to all four diagonals: entry i becomes entry sigma[i].
DiagBlockMatrix permuted(const DiagBlockMatrix& bm, std::span<const std::size_t> sigma);

DenseMatrix to_dense(const DiagBlockMatrix& bm);
DenseMatrix to_dense(const PsdDiagBlock& pb);
DenseMatrix to_dense(const Lemma2State& s);

/// Inverse of to_dense(DiagBlockMatrix). Throws std::invalid_argument if the
/// matrix is not square of even size or has entries outside the four diagonals.
DiagBlockMatrix extract_diagonal_blocks(const DenseMatrix& m);

}  // namespace hanner
