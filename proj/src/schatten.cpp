#include "hanner/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace hanner {

namespace {

constexpr double kRadicandClamp = 1e-10;

double max_abs_entry(const ComplexMatrix2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

}  // namespace

bool ComplexMatrix2::is_finite() const {
  for (const Complex& z : {a, b, c, d}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool RealMatrix2::is_finite() const {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
}

double RealMatrix2::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

void require_exponent(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw std::domain_error("exponent p must be finite and >= 1, got " + std::to_string(p));
  }
}

double pow0(double x, double q) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, q);
}

GramInvariants gram_invariants(const ComplexMatrix2& m) {
  GramInvariants g;
  g.trace = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
  g.det = std::norm(m.a * m.d - m.b * m.c);
  g.radicand = g.trace * g.trace - 4.0 * g.det;
  return g;
}

std::pair<double, double> singular_values_2x2(const ComplexMatrix2& m) {
  if (!m.is_finite()) throw std::domain_error("matrix entries must be finite");
  const double scale = max_abs_entry(m);
  if (scale == 0.0) return {0.0, 0.0};

  // Work on m / scale so that T^2 cannot overflow or underflow.
  const ComplexMatrix2 u{m.a / scale, m.b / scale, m.c / scale, m.d / scale};
  const GramInvariants g = gram_invariants(u);
  double radicand = g.radicand;
  if (radicand < 0.0) {
    if (radicand < -kRadicandClamp * std::max(g.trace * g.trace, 1.0)) {
      throw NumericalInconsistency("negative discriminant T^2 - 4D = " + std::to_string(radicand));
    }
    radicand = 0.0;
  }
  // Eigenvalues of u*u: (T +- sqrt(T^2 - 4D)) / 2. The small one is taken as
  // D / large, which avoids the cancellation in T - sqrt(.).
  const double big = 0.5 * (g.trace + std::sqrt(radicand));
  const double small = big > 0.0 ? std::min(g.det / big, big) : 0.0;
  return {scale * std::sqrt(big), scale * std::sqrt(small)};
}

double schatten_p_power_2x2(const ComplexMatrix2& m, double p) {
  require_exponent(p);
  const auto [s1, s2] = singular_values_2x2(m);
  return pow0(s1, p) + pow0(s2, p);
}

double schatten_2x2(const ComplexMatrix2& m, double p) {
  require_exponent(p);
  const auto [s1, s2] = singular_values_2x2(m);
  if (s1 == 0.0) return 0.0;
  // Factor out s1 so the root is taken of a number in [1, 2].
  return s1 * std::pow(1.0 + pow0(s2 / s1, p), 1.0 / p);
}

ComplexMatrix2 abs_entrywise(const ComplexMatrix2& m) {
  return {std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)};
}

std::vector<double> sing_diag(std::span<const Complex> d) {
  std::vector<double> out;
  out.reserve(d.size());
  for (const Complex& z : d) out.push_back(std::abs(z));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> sing_diag(std::span<const double> d) {
  std::vector<double> out;
  out.reserve(d.size());
  for (double x : d) out.push_back(std::abs(x));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double g_func(const RealMatrix2& x, double p) {
  require_exponent(p);
  if (!x.is_finite() || !x.is_nonnegative()) {
    throw std::domain_error("g is defined on matrices with finite nonnegative entries");
  }
  const double r = 1.0 / p;
  const RealMatrix2 root{pow0(x.a, r), pow0(x.b, r), pow0(x.c, r), pow0(x.d, r)};
  return schatten_p_power_2x2(root.to_complex(), p);
}

namespace {

template <typename T>
double lp_norm_impl(std::span<const T> v, double p) {
  require_exponent(p);
  double peak = 0.0;
  for (const T& z : v) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (const T& z : v) sum += pow0(std::abs(z) / peak, p);
  return peak * std::pow(sum, 1.0 / p);
}

}  // namespace

double lp_norm(std::span<const Complex> v, double p) { return lp_norm_impl(v, p); }
double lp_norm(std::span<const double> v, double p) { return lp_norm_impl(v, p); }

}  // namespace hanner
