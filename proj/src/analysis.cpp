#include "hanner/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace hanner::analysis {

namespace {

constexpr double kEntryTolerance = 1e-12;

struct Trig {
  double ca, sa, cb, sb;
};

Trig trig(const CriticalState& cs) {
  return {std::cos(cs.alpha), std::sin(cs.alpha), std::cos(cs.beta), std::sin(cs.beta)};
}

RealMatrix2 raw_M(const CriticalState& cs) {
  const auto [ca, sa, cb, sb] = trig(cs);
  const double h = cs.h;
  return {ca * cb + h * sa * sb, sa * cb - h * ca * sb, ca * sb - h * sa * cb,
          sa * sb + h * ca * cb};
}

double clamp_entry(double v) { return v < 0.0 ? 0.0 : v; }

// Entries of M and J in the order paired with (x, y, w, z).
struct Paired {
  std::array<double, 4> m, j;
};

Paired paired(const CriticalState& cs) {
  const RealMatrix2 m = reconstruct_M(cs);
  const RealMatrix2 j = critical_J(cs);
  return {{m.a, m.b, m.c, m.d}, {j.a, j.c, j.b, j.d}};
}

void require_interior(const CriticalState& cs) {
  if (!cs.is_interior()) throw BoundaryError("critical state is not interior");
}

void require_direction(const DirectionMatrix& dir) {
  for (double v : {dir.x, dir.y, dir.w, dir.z}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::domain_error("direction entries must be finite and nonnegative");
    }
  }
}

// Symmetric eigendecomposition of [[a, b], [b, d]]: eigenvalues hi >= lo and
// the unit eigenvector (c, s) of hi.
struct SymEigen {
  double hi, lo, c, s;
};

SymEigen sym_eigen(const RealMatrix2& k) {
  const double b = 0.5 * (k.b + k.c);
  const double half_tr = 0.5 * (k.a + k.d);
  const double r = std::hypot(0.5 * (k.a - k.d), b);
  const double hi = half_tr + r;
  // det / hi avoids cancellation when the smaller eigenvalue is tiny.
  const double det = k.a * k.d - b * b;
  const double lo = hi > 0.0 ? det / hi : half_tr - r;
  const double theta = 0.5 * std::atan2(2.0 * b, k.a - k.d);
  return {hi, lo, std::cos(theta), std::sin(theta)};
}

RealMatrix2 from_eigen(const SymEigen& e, double f_hi, double f_lo) {
  const double cc = e.c * e.c, ss = e.s * e.s, cs = e.c * e.s;
  const double off = (f_hi - f_lo) * cs;
  return {f_hi * cc + f_lo * ss, off, off, f_hi * ss + f_lo * cc};
}

void require_symmetric(const RealMatrix2& k) {
  if (!k.is_finite()) throw std::domain_error("matrix has non-finite entries");
  if (std::abs(k.b - k.c) > 1e-12 * std::max(k.max_abs(), 1.0)) {
    throw std::domain_error("matrix is not symmetric");
  }
}

double signed_pow(double s, double q) { return s < 0.0 ? -pow0(-s, q) : pow0(s, q); }

// |M|^(p-2) M^T = V diag(s^(p-1)) U^T from the closed-form SVD
// M = Rot(phi) diag(sx, sy) Rot(theta); sy carries the sign of det M.
RealMatrix2 dual_factor(const RealMatrix2& m, double p) {
  const double e = 0.5 * (m.a + m.d);
  const double f = 0.5 * (m.a - m.d);
  const double g = 0.5 * (m.c + m.b);
  const double h = 0.5 * (m.c - m.b);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double sx = q + r;
  const double sy = q - r;
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  auto rot = [](double t) {
    return RealMatrix2{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
  };
  const RealMatrix2 d{signed_pow(sx, p - 1.0), 0.0, 0.0, signed_pow(sy, p - 1.0)};
  return rot(-theta) * d * rot(-phi);
}

RealMatrix2 entry_root(const RealMatrix2& a, double p) {
  const double r = 1.0 / p;
  return {pow0(a.a, r), pow0(a.b, r), pow0(a.c, r), pow0(a.d, r)};
}

double trace_product(const RealMatrix2& j, const RealMatrix2& l) {
  return j.a * l.a + j.b * l.c + j.c * l.b + j.d * l.d;
}

RealMatrix2 lemma2_block(double a, double off, double b) { return {a, off, off, b}; }

}  // namespace

bool CriticalState::is_valid() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(h) || !std::isfinite(p)) {
    return false;
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(alpha > 0.0 && alpha < half_pi && beta > 0.0 && beta < half_pi)) return false;
  if (!(h >= 0.0 && h <= 1.0) || p < 1.0) return false;
  const RealMatrix2 m = raw_M(*this);
  return m.b >= -kEntryTolerance && m.c >= -kEntryTolerance;
}

bool CriticalState::is_interior() const {
  if (!is_valid()) return false;
  const RealMatrix2 m = raw_M(*this);
  return m.a > 0.0 && m.b > 0.0 && m.c > 0.0 && m.d > 0.0;
}

RealMatrix2 reconstruct_M(const CriticalState& cs) {
  if (!cs.is_valid()) throw BoundaryError("critical state outside its domain");
  const RealMatrix2 m = raw_M(cs);
  return {clamp_entry(m.a), clamp_entry(m.b), clamp_entry(m.c), clamp_entry(m.d)};
}

RealMatrix2 lemma3_entries(const CriticalState& cs) {
  const RealMatrix2 m = reconstruct_M(cs);
  return {pow0(m.a, cs.p), pow0(m.b, cs.p), pow0(m.c, cs.p), pow0(m.d, cs.p)};
}

RealMatrix2 critical_J(const CriticalState& cs) {
  if (!cs.is_valid()) throw BoundaryError("critical state outside its domain");
  const auto [ca, sa, cb, sb] = trig(cs);
  const double hp = pow0(cs.h, cs.p - 1.0);
  return {ca * cb + hp * sa * sb, ca * sb - hp * sa * cb, sa * cb - hp * ca * sb,
          sa * sb + hp * ca * cb};
}

double F_eval(const CriticalState& cs, const DirectionMatrix& dir) {
  require_direction(dir);
  const Paired pr = paired(cs);
  const std::array<double, 4> v{dir.x, dir.y, dir.w, dir.z};
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(pr.m[k] > 0.0)) throw BoundaryError("F is singular at a zero entry of M");
    total += pr.j[k] / std::pow(pr.m[k], cs.p - 1.0) * v[k];
  }
  return total;
}

double trace_JL(const CriticalState& cs, const DirectionMatrix& dir) {
  require_direction(dir);
  if (!(cs.h > 0.0)) throw BoundaryError("trace_JL needs h > 0");
  const RealMatrix2 m = reconstruct_M(cs);
  const RealMatrix2 mt = m.transposed();
  const RealMatrix2 j = frac_power_spectral(mt * m, 0.5 * (cs.p - 2.0)) * mt;
  auto l_entry = [&](double mk, double b) {
    if (!(mk > 0.0)) throw BoundaryError("L is singular at a zero entry of M");
    return std::pow(mk, 1.0 - cs.p) * b;
  };
  const RealMatrix2 l{l_entry(m.a, dir.x), l_entry(m.b, dir.y), l_entry(m.c, dir.w),
                      l_entry(m.d, dir.z)};
  return trace_product(j, l);
}

double dF_dh(const CriticalState& cs, const DirectionMatrix& dir) {
  require_direction(dir);
  if (!(cs.h > 0.0)) throw BoundaryError("dF/dh is singular at h = 0");
  const RealMatrix2 a = lemma3_entries(cs);
  if (!(a.a > 0.0 && a.b > 0.0 && a.c > 0.0 && a.d > 0.0)) {
    throw BoundaryError("dF/dh is singular at a zero entry");
  }
  const double v = dir.x / a.a - dir.y / a.b - dir.w / a.c + dir.z / a.d;
  return (cs.p - 1.0) / 4.0 * (std::pow(cs.h, cs.p - 2.0) - 1.0) * std::sin(2.0 * cs.alpha) *
         std::sin(2.0 * cs.beta) * v;
}

std::array<double, 3> PhiMatrix::apply_ones() const {
  std::array<double, 3> out{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (double v : rows[r]) out[r] += v;
  }
  return out;
}

double PhiMatrix::reduced_minor() const {
  return (E() + F()) * (P() + R()) - (E() + G()) * (P() + Q());
}

double PhiMatrix::scale() const {
  double s = 0.0;
  for (const auto& row : rows) {
    for (double v : row) s = std::max(s, std::abs(v));
  }
  return s;
}

PhiMatrix phi_matrix(const CriticalState& cs) {
  require_interior(cs);
  if (!(cs.h < 1.0)) throw BoundaryError("phi matrix needs h < 1");
  const RealMatrix2 m = reconstruct_M(cs);
  const RealMatrix2 j = critical_J(cs);
  const double q = cs.p - 1.0;
  const double m11 = m.a, m12 = m.b, m21 = m.c, m22 = m.d;
  const double j11 = j.a, j12 = j.b, j21 = j.c, j22 = j.d;
  PhiMatrix phi;
  phi.rows[0] = {1.0, -1.0, -1.0, 1.0};
  phi.rows[1] = {-j21 * m11 + q * j11 * m12, j11 * m12 - q * j21 * m11,
                 -j22 * m21 + q * j12 * m22, j12 * m22 - q * j22 * m21};
  phi.rows[2] = {-j12 * m11 + q * j11 * m21, -j22 * m12 + q * j21 * m22,
                 j11 * m21 - q * j12 * m11, j21 * m22 - q * j22 * m12};
  return phi;
}

double det_bracket(double h, double p) {
  const double u = std::pow(h, p - 1.0) - h;
  const double v = 1.0 - std::pow(h, p);
  return p * p * u * u - (p - 2.0) * (p - 2.0) * v * v;
}

double DetIdentity::max_sub_residual() const {
  return *std::max_element(sub_residuals.begin(), sub_residuals.end());
}

DetIdentity det_identity(const CriticalState& cs) {
  const PhiMatrix phi = phi_matrix(cs);
  const double p = cs.p, h = cs.h;
  const double s2a = std::sin(2.0 * cs.alpha);
  const double s2b = std::sin(2.0 * cs.beta);
  DetIdentity out;
  out.lhs = phi.reduced_minor();
  out.rhs = 0.25 * s2a * s2b * det_bracket(h, p);
  out.residual = std::abs(out.lhs - out.rhs);
  const double u = std::pow(h, p - 1.0) - h;
  const double v = 1.0 - std::pow(h, p);
  out.sub_residuals = {std::abs(phi.E() + phi.F() - 0.5 * p * s2b * u),
                       std::abs(phi.P() + phi.R() - 0.5 * p * s2a * u),
                       std::abs(phi.E() + phi.G() - 0.5 * (p - 2.0) * s2a * v),
                       std::abs(phi.P() + phi.Q() - 0.5 * (p - 2.0) * s2b * v)};
  return out;
}

DirectionalDerivative g_directional_derivative(const RealMatrix2& a_mat,
                                               const RealMatrix2& b_mat, double p) {
  require_exponent(p);
  for (const RealMatrix2* x : {&a_mat, &b_mat}) {
    if (!x->is_finite() || !x->is_nonnegative()) {
      throw std::domain_error("g is defined on matrices with finite nonnegative entries");
    }
  }
  const bool interior = a_mat.a > 0.0 && a_mat.b > 0.0 && a_mat.c > 0.0 && a_mat.d > 0.0;
  if (!interior) {
    const double scale_a = std::max(a_mat.max_abs(), 1e-300);
    const double scale_b = b_mat.max_abs();
    if (scale_b == 0.0) return {0.0, true};
    const double t = 1e-6 * scale_a / scale_b;
    const double g0 = g_func(a_mat, p);
    auto quotient = [&](double step) { return (g_func(a_mat + step * b_mat, p) - g0) / step; };
    return {2.0 * quotient(0.5 * t) - quotient(t), true};
  }

  RealMatrix2 a = a_mat, b = b_mat;
  RealMatrix2 m = entry_root(a, p);
  if (m.det() < 0.0) {
    // Swapping rows leaves g unchanged and flips the sign of det M.
    a = {a.c, a.d, a.a, a.b};
    b = {b.c, b.d, b.a, b.b};
    m = entry_root(a, p);
  }
  const RealMatrix2 l{std::pow(m.a, 1.0 - p) * b.a, std::pow(m.b, 1.0 - p) * b.b,
                      std::pow(m.c, 1.0 - p) * b.c, std::pow(m.d, 1.0 - p) * b.d};
  return {trace_product(dual_factor(m, p), l), false};
}

RealMatrix2 frac_power_spectral(const RealMatrix2& k, double q) {
  require_symmetric(k);
  const SymEigen e = sym_eigen(k);
  if (!(e.lo > 0.0)) throw std::domain_error("matrix is not positive definite");
  return from_eigen(e, std::pow(e.hi, q), std::pow(e.lo, q));
}

RealMatrix2 psd_power(const RealMatrix2& k, double q) {
  require_symmetric(k);
  if (!(q > 0.0)) throw std::domain_error("psd_power needs q > 0");
  SymEigen e = sym_eigen(k);
  if (e.lo < 0.0) {
    if (e.lo < -1e-12 * std::max(e.hi, 0.0)) {
      throw std::domain_error("matrix is not positive semidefinite");
    }
    e.lo = 0.0;
  }
  return from_eigen(e, pow0(e.hi, q), pow0(e.lo, q));
}

namespace {

boost::math::quadrature::tanh_sinh<double>& endpoint_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule;
}

}  // namespace

RealMatrix2 frac_power_integral(const RealMatrix2& k, double p) {
  if (!(p > 1.0 && p < 2.0)) throw std::domain_error("integral representation needs 1 < p < 2");
  require_symmetric(k);
  const SymEigen e = sym_eigen(k);
  if (!(e.lo > 0.0)) throw std::domain_error("matrix is not positive definite");

  const double kb = 0.5 * (k.b + k.c);
  const double tr = k.a + k.d;
  const double det = k.a * k.d - kb * kb;
  const double s = e.hi;
  const double q = p - 1.0;
  const double gamma = std::sin(q * std::numbers::pi) / std::numbers::pi;

  // Components (11, 12, 22) of (tK + det I) / (t^2 + t tr + det).
  auto resolvent = [&](double t, int comp) {
    const double den = t * t + t * tr + det;
    switch (comp) {
      case 0: return (t * k.a + det) / den;
      case 1: return t * kb / den;
      default: return (t * k.d + det) / den;
    }
  };
  // t times the same, rewritten for large t.
  auto scaled_resolvent = [&](double t, int comp) {
    const double inv = 1.0 / t;
    const double den = 1.0 + tr * inv + det * inv * inv;
    switch (comp) {
      case 0: return (k.a + det * inv) / den;
      case 1: return kb / den;
      default: return (k.d + det * inv) / den;
    }
  };

  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned kDepth = 20;
  constexpr double kTol = 1e-12;
  const double u_split = std::pow(e.lo, q);
  const double u_top = std::pow(s, q);

  std::array<double, 3> out{};
  for (int comp = 0; comp < 3; ++comp) {
    // [0, s] with t = u^(1/(p-1)), split at the smaller eigenvalue.
    auto near = [&](double u) { return resolvent(std::pow(u, 1.0 / q), comp) / q; };
    // The u^(1/(p-1)) term is not smooth at 0 and the resolvent turns sharply near
    // u_split when k is ill-conditioned; tanh-sinh copes where bisection stalls.
    double lower = endpoint_rule().integrate(near, 0.0, u_split, kTol);
    if (u_top > u_split) lower += endpoint_rule().integrate(near, u_split, u_top, kTol);
    // [s, inf) with t = s w^(-1/(2-p)).
    auto far = [&](double w) {
      if (w <= 0.0) {
        return comp == 0 ? k.a : (comp == 1 ? kb : k.d);
      }
      return scaled_resolvent(s * std::pow(w, -1.0 / (2.0 - p)), comp);
    };
    const double upper =
        std::pow(s, p - 2.0) / (2.0 - p) * Quad::integrate(far, 0.0, 1.0, kDepth, kTol);
    out[static_cast<std::size_t>(comp)] = gamma * (lower + upper);
  }
  return {out[0], out[1], out[1], out[2]};
}

double lemma2_h_max(const Lemma2State& s) {
  if (s.c(0) > s.c(1)) {
    throw std::domain_error("lemma2 f needs c1 <= c2 (otherwise the rearrangement is trivial)");
  }
  return 0.5 * (s.c(1) - s.c(0));
}

namespace {

void require_h(const Lemma2State& s, double h) {
  const double h_max = lemma2_h_max(s);
  if (!std::isfinite(h) || std::abs(h) > h_max * (1.0 + 1e-12)) {
    throw std::domain_error("h outside [-(c2 - y), c2 - y]");
  }
}

}  // namespace

double lemma2_f(const Lemma2State& s, double p, double h) {
  require_exponent(p);
  require_h(s, h);
  const double y = 0.5 * (s.c(0) + s.c(1));
  auto nA = [&](double t) {
    return schatten_p_power_2x2(lemma2_block(s.a(0), y + t, s.b(0)).to_complex(), p);
  };
  auto nB = [&](double t) {
    return schatten_p_power_2x2(lemma2_block(s.a(1), y + t, s.b(1)).to_complex(), p);
  };
  return (nA(h) - nA(-h)) + (nB(-h) - nB(h));
}

double lemma2_f_prime(const Lemma2State& s, double p, double h, PowerRoute route) {
  require_exponent(p);
  require_h(s, h);
  const double y = 0.5 * (s.c(0) + s.c(1));
  auto off = [&](std::size_t i, double t) {
    const RealMatrix2 m = lemma2_block(s.a(i), y + t, s.b(i));
    const RealMatrix2 pw =
        route == PowerRoute::Integral ? frac_power_integral(m, p) : psd_power(m, p - 1.0);
    return pw.b;
  };
  return 2.0 * p * (off(0, h) - off(1, -h) + off(0, -h) - off(1, h));
}

std::vector<ExplorerRow> explore_grid(const std::vector<double>& alphas,
                                      const std::vector<double>& betas,
                                      const std::vector<double>& hs,
                                      const std::vector<double>& ps,
                                      const DirectionMatrix& dir) {
  std::vector<ExplorerRow> rows;
  for (double p : ps) {
    require_exponent(p);
    for (double alpha : alphas) {
      for (double beta : betas) {
        for (double h : hs) {
          const CriticalState cs{alpha, beta, h, p};
          if (!cs.is_interior() || !(h > 0.0) || !(h < 1.0)) continue;
          rows.push_back({alpha, beta, h, p, F_eval(cs, dir), dF_dh(cs, dir),
                          det_identity(cs).residual});
        }
      }
    }
  }
  return rows;
}

}  // namespace hanner::analysis
