// Closed-form Schatten p-norm kernels for 2x2 matrices.
//
// Every norm in this library is the standard ||A||_p = (Tr |A|^p)^(1/p), i.e.
// the l_p norm of the singular values. The "p-power" variants return
// Tr |A|^p without the outer root.

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hanner {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct ComplexMatrix2 {
  Complex a{}, b{}, c{}, d{};

  bool is_finite() const;
  static ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// Row-major 2x2 real matrix [[a, b], [c, d]].
struct RealMatrix2 {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  bool is_finite() const;
  bool is_nonnegative() const { return a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0; }
  double det() const { return a * d - b * c; }
  double max_abs() const;
  ComplexMatrix2 to_complex() const { return {a, b, c, d}; }
  RealMatrix2 transposed() const { return {a, c, b, d}; }

  friend RealMatrix2 operator+(const RealMatrix2& x, const RealMatrix2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend RealMatrix2 operator*(double s, const RealMatrix2& x) {
    return {s * x.a, s * x.b, s * x.c, s * x.d};
  }
  friend RealMatrix2 operator*(const RealMatrix2& x, const RealMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  double trace() const { return a + d; }
};

/// Raised when a floating-point result contradicts an analytic identity by
/// more than roundoff can explain.
class NumericalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Throws std::domain_error unless p is finite and p >= 1.
void require_exponent(double p);

/// x^q for x >= 0 and q > 0, with 0^q = 0.
double pow0(double x, double q);

/// The two invariants of m*m: T = Tr m*m and D = det m*m = |ad - bc|^2,
/// together with the discriminant T^2 - 4D before clamping.
struct GramInvariants {
  double trace = 0.0;
  double det = 0.0;
  double radicand = 0.0;
};

GramInvariants gram_invariants(const ComplexMatrix2& m);

/// Singular values (largest first) from T and D.
std::pair<double, double> singular_values_2x2(const ComplexMatrix2& m);

double schatten_p_power_2x2(const ComplexMatrix2& m, double p);
double schatten_2x2(const ComplexMatrix2& m, double p);

ComplexMatrix2 abs_entrywise(const ComplexMatrix2& m);

/// Moduli sorted in decreasing order (the diagonal of Sing(A) for diagonal A).
std::vector<double> sing_diag(std::span<const Complex> d);
std::vector<double> sing_diag(std::span<const double> d);

/// g(x) = Tr |x^(1/p)|^p with the power taken entrywise; x must be nonnegative.
double g_func(const RealMatrix2& x, double p);

/// l_p norm of a complex vector.
double lp_norm(std::span<const Complex> v, double p);
double lp_norm(std::span<const double> v, double p);

}  // namespace hanner
