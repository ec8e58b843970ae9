#include "hanner/block_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hanner {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_dense_size(std::size_t n) {
  if (n == 0 || n > kMaxDenseBlockSize) {
    throw std::invalid_argument("dense export supports 1 <= n <= " +
                                std::to_string(kMaxDenseBlockSize));
  }
}

std::vector<Complex> sorted_moduli(const std::vector<Complex>& v) {
  const std::vector<double> s = sing_diag(std::span<const Complex>(v));
  return {s.begin(), s.end()};
}

}  // namespace

void DiagBlockMatrix::validate() const {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("block size n must be positive");
  if (b.size() != n || c.size() != n || d.size() != n) {
    throw std::invalid_argument("diagonals a, b, c, d must have equal length");
  }
  for (const auto* v : {&a, &b, &c, &d}) {
    if (!std::all_of(v->begin(), v->end(), finite)) {
      throw std::invalid_argument("diagonal entries must be finite");
    }
  }
}

void PsdDiagBlock::validate() const {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("block size n must be positive");
  if (b.size() != n || c.size() != n) {
    throw std::invalid_argument("diagonals a, b, c must have equal length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i]) || !finite(c[i])) {
      throw std::invalid_argument("diagonal entries must be finite");
    }
    if (a[i] < 0.0 || b[i] < 0.0) {
      throw std::invalid_argument("diagonals a and b must be nonnegative (index " +
                                  std::to_string(i + 1) + ")");
    }
  }
}

PsdViolation::PsdViolation(std::size_t index, double margin)
    : std::domain_error("matrix is not positive semidefinite: a_i*b_i - |c_i|^2 = " +
                        std::to_string(margin) + " < 0 at index " + std::to_string(index + 1)),
      index_(index),
      margin_(margin) {}

Lemma2State::Lemma2State(double a1, double a2, double b1, double b2, double c1, double c2)
    : a_{a1, a2}, b_{b1, b2}, c_{c1, c2} {
  for (double x : {a1, a2, b1, b2, c1, c2}) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::domain_error("Lemma2State entries must be finite and nonnegative");
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const double margin = a_[i] * b_[i] - c_[i] * c_[i];
    if (margin < 0.0) throw PsdViolation(i, margin);
  }
}

Lemma2State Lemma2State::from_complex(double a1, double a2, double b1, double b2, Complex c1,
                                      Complex c2) {
  return {a1, a2, b1, b2, std::abs(c1), std::abs(c2)};
}

bool Lemma2State::is_canonical() const { return a_[0] >= a_[1] && b_[0] >= b_[1]; }

Lemma2State Lemma2State::canonicalized() const {
  if (is_canonical()) return *this;
  const Lemma2State swapped(a_[1], a_[0], b_[1], b_[0], c_[1], c_[0]);
  return swapped.is_canonical() ? swapped : *this;
}

PsdDiagBlock Lemma2State::to_psd_block() const {
  return {{a_[0], a_[1]}, {b_[0], b_[1]}, {c_[0], c_[1]}};
}

std::vector<ComplexMatrix2> decompose(const DiagBlockMatrix& bm) {
  bm.validate();
  std::vector<ComplexMatrix2> out;
  out.reserve(bm.size());
  for (std::size_t i = 0; i < bm.size(); ++i) out.push_back({bm.a[i], bm.b[i], bm.c[i], bm.d[i]});
  return out;
}

double block_norm_p_power(const DiagBlockMatrix& bm, double p) {
  require_exponent(p);
  double sum = 0.0;
  for (const ComplexMatrix2& m : decompose(bm)) sum += schatten_p_power_2x2(m, p);
  return sum;
}

double block_norm(const DiagBlockMatrix& bm, double p) {
  require_exponent(p);
  const std::vector<ComplexMatrix2> parts = decompose(bm);
  // Scale by the largest entry before summing p-th powers to keep them in range.
  double peak = 0.0;
  for (const ComplexMatrix2& m : parts) {
    peak = std::max({peak, std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  }
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (const ComplexMatrix2& m : parts) {
    sum += schatten_p_power_2x2({m.a / peak, m.b / peak, m.c / peak, m.d / peak}, p);
  }
  return peak * std::pow(sum, 1.0 / p);
}

PsdCheck is_psd(const PsdDiagBlock& pb) {
  PsdCheck check;
  const std::size_t n = pb.size();
  check.margins.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = pb.a[i] * pb.b[i] - std::norm(pb.c[i]);
    check.margins[i] = margin;
    const bool ok = pb.a[i] >= 0.0 && pb.b[i] >= 0.0 && margin >= 0.0;
    if (!ok && !check.first_failure) check.first_failure = i;
  }
  check.psd = !check.first_failure.has_value();
  return check;
}

void require_psd(const PsdDiagBlock& pb) {
  pb.validate();
  const PsdCheck check = is_psd(pb);
  if (!check.psd) throw PsdViolation(*check.first_failure, check.margins[*check.first_failure]);
}

Lemma2State make_rearranged(const Lemma2State& s) {
  return {std::max(s.a(0), s.a(1)), std::min(s.a(0), s.a(1)), std::max(s.b(0), s.b(1)),
          std::min(s.b(0), s.b(1)), std::max(s.c(0), s.c(1)), std::min(s.c(0), s.c(1))};
}

DiagBlockMatrix embed(const PsdDiagBlock& pb) {
  pb.validate();
  DiagBlockMatrix bm;
  bm.a.assign(pb.a.begin(), pb.a.end());
  bm.b = pb.c;
  bm.c.reserve(pb.size());
  for (const Complex& z : pb.c) bm.c.push_back(std::conj(z));
  bm.d.assign(pb.b.begin(), pb.b.end());
  return bm;
}

DiagBlockMatrix sing_ordered(const DiagBlockMatrix& bm) {
  bm.validate();
  return {sorted_moduli(bm.a), sorted_moduli(bm.b), sorted_moduli(bm.c), sorted_moduli(bm.d)};
}

DiagBlockMatrix permuted(const DiagBlockMatrix& bm, std::span<const std::size_t> sigma) {
  bm.validate();
  if (sigma.size() != bm.size()) throw std::invalid_argument("permutation has wrong length");
  DiagBlockMatrix out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const std::size_t j = sigma[i];
    out.a.push_back(bm.a.at(j));
    out.b.push_back(bm.b.at(j));
    out.c.push_back(bm.c.at(j));
    out.d.push_back(bm.d.at(j));
  }
  return out;
}

DenseMatrix to_dense(const DiagBlockMatrix& bm) {
  bm.validate();
  const std::size_t n = bm.size();
  require_dense_size(n);
  DenseMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = bm.a[i];
    m(i, n + i) = bm.b[i];
    m(n + i, i) = bm.c[i];
    m(n + i, n + i) = bm.d[i];
  }
  return m;
}

DenseMatrix to_dense(const PsdDiagBlock& pb) { return to_dense(embed(pb)); }

DenseMatrix to_dense(const Lemma2State& s) { return to_dense(s.to_psd_block()); }

DiagBlockMatrix extract_diagonal_blocks(const DenseMatrix& m) {
  if (m.rows != m.cols || m.rows == 0 || m.rows % 2 != 0) {
    throw std::invalid_argument("expected a square matrix of even size");
  }
  const std::size_t n = m.rows / 2;
  DiagBlockMatrix bm;
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (r % n != c % n && m(r, c) != Complex{}) {
        throw std::invalid_argument("entry outside the block diagonals at (" + std::to_string(r) +
                                    ", " + std::to_string(c) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bm.a.push_back(m(i, i));
    bm.b.push_back(m(i, n + i));
    bm.c.push_back(m(n + i, i));
    bm.d.push_back(m(n + i, n + i));
  }
  return bm;
}

}  // namespace hanner
