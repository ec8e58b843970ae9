// Numerical counterparts of the analytic machinery behind the inequalities:
// the critical-point system for the superadditivity of g, and the fractional
// power representation behind the 4x4 rearrangement inequality.

#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "hanner/block_model.hpp"
#include "hanner/schatten.hpp"

namespace hanner::analysis {

/// Raised when a formula is evaluated at a boundary point where it is singular.
class BoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Normalized state of M = entrywise A^(1/p): |M| = P1 + h P2 with P1 the
/// projection on (cos alpha, sin alpha), and M = U |M| with U the rotation by
/// beta - alpha.
struct CriticalState {
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;
  double p = 1.5;

  /// alpha, beta in (0, pi/2), h in [0, 1], and the off-diagonal entries of M
  /// nonnegative (up to 1e-12).
  bool is_valid() const;
  /// Valid and every entry of M strictly positive.
  bool is_interior() const;
};

/// Entries (x, y, w, z) of the direction B = [[x, y], [w, z]].
struct DirectionMatrix {
  double x = 0.0, y = 0.0, w = 0.0, z = 0.0;

  RealMatrix2 matrix() const { return {x, y, w, z}; }
};

/// M = U |M|:
///   [[cos a cos b + h sin a sin b,  sin a cos b - h cos a sin b],
///    [cos a sin b - h sin a cos b,  sin a sin b + h cos a cos b]]
/// Its singular values are 1 and h. Throws BoundaryError when an entry is
/// below -1e-12.
RealMatrix2 reconstruct_M(const CriticalState& cs);

/// The matrix A = entrywise M^p whose 1/p-th power is M (entries a, b, c, d).
RealMatrix2 lemma3_entries(const CriticalState& cs);

/// J = |M|^(p-1) U^T in closed form.
RealMatrix2 critical_J(const CriticalState& cs);

/// F = F1 x + F2 y + F3 w + F4 z with F_i = J-entry / (M-entry)^(p-1).
/// Throws BoundaryError when a denominator is not positive.
double F_eval(const CriticalState& cs, const DirectionMatrix& dir);

/// Tr J L evaluated from |M|^(p-2) M^T (spectral power of M^T M) and
/// L = p dM/dt; an evaluation path independent of F_eval. Requires h > 0.
double trace_JL(const CriticalState& cs, const DirectionMatrix& dir);

/// dF/dh = (p-1)/4 (h^(p-2) - 1) sin 2a sin 2b (x/a - y/b - w/c + z/d).
/// Throws BoundaryError at h = 0 or a zero entry.
double dF_dh(const CriticalState& cs, const DirectionMatrix& dir);

/// Rows: (1, -1, -1, 1), (E, F, G, H), (P, Q, R, S), the coefficients of
/// v = (x/a, y/b, w/c, z/d) in dF/dh (up to a common factor), dF/dalpha and
/// dF/dbeta. Requires an interior state with h < 1.
struct PhiMatrix {
  std::array<std::array<double, 4>, 3> rows{};

  double E() const { return rows[1][0]; }
  double F() const { return rows[1][1]; }
  double G() const { return rows[1][2]; }
  double H() const { return rows[1][3]; }
  double P() const { return rows[2][0]; }
  double Q() const { return rows[2][1]; }
  double R() const { return rows[2][2]; }
  double S() const { return rows[2][3]; }
  /// Phi (1,1,1,1)^T.
  std::array<double, 3> apply_ones() const;
  /// Determinant of [[1,0,0],[E,E+F,E+G],[P,P+Q,P+R]] after column reduction.
  double reduced_minor() const;
  /// Largest absolute entry.
  double scale() const;
};

PhiMatrix phi_matrix(const CriticalState& cs);

/// p^2 (h^(p-1) - h)^2 - (p-2)^2 (1 - h^p)^2.
double det_bracket(double h, double p);

struct DetIdentity {
  double lhs = 0.0;       // (E+F)(P+R) - (P+Q)(E+G) from phi_matrix
  double rhs = 0.0;       // 1/4 sin 2a sin 2b det_bracket(h, p)
  double residual = 0.0;  // |lhs - rhs|
  /// Residuals of E+F, P+R, E+G, P+Q against their closed forms.
  std::array<double, 4> sub_residuals{};
  double max_sub_residual() const;
};

DetIdentity det_identity(const CriticalState& cs);

struct DirectionalDerivative {
  double value = 0.0;
  /// Set when A has a zero entry and the value is a one-sided difference quotient.
  bool finite_difference_fallback = false;
};

/// d/dt g(A + tB) at t = 0 for nonnegative A, B. Interior A uses the closed
/// form Tr |M|^(p-2) M^T L; a reflected pair (RA, RB) is used when det M < 0.
DirectionalDerivative g_directional_derivative(const RealMatrix2& a_mat,
                                               const RealMatrix2& b_mat, double p);

/// k^q for symmetric positive definite k (closed-form eigendecomposition).
/// Throws std::domain_error on non-symmetric or non-PD input.
RealMatrix2 frac_power_spectral(const RealMatrix2& k, double q);

/// Same for positive semidefinite k with 0^q = 0 (q > 0).
RealMatrix2 psd_power(const RealMatrix2& k, double q);

/// k^(p-1) = gamma_p int_0^inf t^(p-2) (t k + det k) / det(t + k) dt,
/// gamma_p = sin((p-1) pi) / pi, by tanh-sinh quadrature up to the largest
/// eigenvalue and Gauss-Kronrod on the tail.
/// Requires 1 < p < 2 and k symmetric positive definite.
RealMatrix2 frac_power_integral(const RealMatrix2& k, double p);

enum class PowerRoute { Spectral, Integral };

/// Largest admissible h: c2 - y with y = (c1 + c2) / 2. Throws
/// std::domain_error when c1 > c2 (the rearrangement is then trivial).
double lemma2_h_max(const Lemma2State& s);

/// f(h) = ||A(h)||^p + ||B(-h)||^p - ||A(-h)||^p - ||B(h)||^p with
/// A(h) = [[a1, y+h], [y+h, b1]], B(h) = [[a2, y+h], [y+h, b2]].
/// Throws std::domain_error for |h| > lemma2_h_max(s).
double lemma2_f(const Lemma2State& s, double p, double h);

/// f'(h) = 2p (A(h)^(p-1)_12 - B(-h)^(p-1)_12 + A(-h)^(p-1)_12 - B(h)^(p-1)_12).
/// The Integral route needs 1 < p < 2.
double lemma2_f_prime(const Lemma2State& s, double p, double h,
                      PowerRoute route = PowerRoute::Spectral);

struct ExplorerRow {
  double alpha, beta, h, p;
  double F, dF_dh, det_residual;
};

/// Evaluates F, dF/dh and the determinant identity on the product grid,
/// skipping states that are not interior or have h >= 1.
std::vector<ExplorerRow> explore_grid(const std::vector<double>& alphas,
                                      const std::vector<double>& betas,
                                      const std::vector<double>& hs,
                                      const std::vector<double>& ps,
                                      const DirectionMatrix& dir);

}  // namespace hanner::analysis
