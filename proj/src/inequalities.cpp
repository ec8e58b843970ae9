#include "hanner/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "hanner/analysis.hpp"

namespace hanner {

namespace {

std::vector<Complex> moduli(const std::vector<Complex>& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const Complex& z : v) out.push_back(std::abs(z));
  return out;
}

// ||.||_p of the 2x2 matrix [[xa, xb], [xc, xd]] with nonnegative entries.
double norm_of_norms(double xa, double xb, double xc, double xd, double p) {
  return schatten_2x2({xa, xb, xc, xd}, p);
}

double lemma2_norm(const Lemma2State& s, double p) {
  return block_norm(embed(s.to_psd_block()), p);
}

// Rounding in a matrix power can leave a_i b_i a few ulps below c_i^2 for a
// singular block; c_i is moved toward zero until the state is PSD.
Lemma2State psd_state(double a1, double a2, double b1, double b2, double c1, double c2) {
  auto fit = [](double a, double b, double c) {
    c = std::max(c, 0.0);
    while (c > 0.0 && a * b < c * c) c = std::nextafter(c, 0.0);
    return c;
  };
  return {a1, a2, b1, b2, fit(a1, b1, c1), fit(a2, b2, c2)};
}

}  // namespace

Direction direction_for(double p) {
  return p <= 2.0 ? Direction::NonIncreasing : Direction::NonDecreasing;
}

const char* to_string(Direction d) {
  return d == Direction::NonIncreasing ? ">= chain" : "<= chain";
}

double InequalityReport::scale() const {
  double s = 0.0;
  for (double v : chain) s = std::max(s, std::abs(v));
  return s;
}

InequalityReport make_report(std::string name, double p, std::vector<double> chain,
                             Direction direction, double tol) {
  InequalityReport r;
  r.name = std::move(name);
  r.p = p;
  r.chain = std::move(chain);
  r.direction = direction;
  r.tol = tol;
  r.margin = 0.0;
  for (std::size_t k = 0; k + 1 < r.chain.size(); ++k) {
    const double step = direction == Direction::NonIncreasing ? r.chain[k] - r.chain[k + 1]
                                                              : r.chain[k + 1] - r.chain[k];
    r.margin = k == 0 ? step : std::min(r.margin, step);
  }
  r.holds = r.margin >= -r.threshold();
  return r;
}

InequalityReport check_scalar_hanner(std::span<const Complex> u, std::span<const Complex> v,
                                     double p, double tol) {
  require_exponent(p);
  if (u.size() != v.size()) throw std::invalid_argument("vectors u and v differ in length");
  std::vector<Complex> sum(u.size()), diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum[i] = u[i] + v[i];
    diff[i] = u[i] - v[i];
  }
  const double nu = lp_norm(u, p);
  const double nv = lp_norm(v, p);
  const double lhs = std::pow(lp_norm(sum, p), p) + std::pow(lp_norm(diff, p), p);
  const double rhs = std::pow(nu + nv, p) + std::pow(std::abs(nu - nv), p);
  return make_report("scalar_hanner", p, {lhs, rhs}, direction_for(p), tol);
}

InequalityReport check_theorem1(const DiagBlockMatrix& bm, double p, double tol) {
  require_exponent(p);
  bm.validate();
  const double full = block_norm(bm, p);
  const DiagBlockMatrix mod{moduli(bm.a), moduli(bm.b), moduli(bm.c), moduli(bm.d)};
  const double middle = block_norm(mod, p);
  const double outer = norm_of_norms(lp_norm(bm.a, p), lp_norm(bm.b, p), lp_norm(bm.c, p),
                                     lp_norm(bm.d, p), p);
  return make_report("theorem1", p, {full, middle, outer}, direction_for(p), tol);
}

InequalityReport check_sing_order(const DiagBlockMatrix& bm, double p, double tol) {
  require_exponent(p);
  const double original = block_norm(bm, p);
  const double sorted = block_norm(sing_ordered(bm), p);
  return make_report("sing_order", p, {original, sorted}, direction_for(p), tol);
}

InequalityReport check_theorem2(const PsdDiagBlock& pb, double p, double tol) {
  require_exponent(p);
  require_psd(pb);
  InequalityReport r = check_sing_order(embed(pb), p, tol);
  r.name = "theorem2";
  return r;
}

InequalityReport check_lemma1(const ComplexMatrix2& m, double p, double tol) {
  require_exponent(p);
  const double lhs = schatten_2x2(m, p);
  const double rhs = schatten_2x2(abs_entrywise(m), p);
  InequalityReport r = make_report("lemma1", p, {lhs, rhs}, direction_for(p), tol);
  const double d = std::norm(m.a * m.d - m.b * m.c);
  const double ad = std::abs(m.a) * std::abs(m.d);
  const double bc = std::abs(m.b) * std::abs(m.c);
  const double d_prime = (ad - bc) * (ad - bc);
  r.extras = {{"D", d}, {"D_prime", d_prime}, {"D_minus_D_prime", d - d_prime}};
  return r;
}

InequalityReport check_g_superadd(const RealMatrix2& x, const RealMatrix2& y, double p,
                                  double tol) {
  const double separate = g_func(x, p) + g_func(y, p);
  const double joint = g_func(x + y, p);
  return make_report("g_superadd", p, {separate, joint}, direction_for(p), tol);
}

InequalityReport check_lemma2(const Lemma2State& s, double p, double tol) {
  require_exponent(p);
  // ||M||_p = (||A||_p^p + ||B||_p^p)^(1/p) over the two 2x2 summands.
  const double before = lemma2_norm(s, p);
  const double after = lemma2_norm(make_rearranged(s), p);
  return make_report("lemma2", p, {before, after}, direction_for(p), tol);
}

InequalityReport check_pos_block(const PsdDiagBlock& pb, double p, double tol) {
  require_exponent(p);
  require_psd(pb);
  const double full = block_norm(embed(pb), p);
  const double nc = lp_norm(pb.c, p);
  const double outer = norm_of_norms(lp_norm(pb.a, p), nc, nc, lp_norm(pb.b, p), p);
  return make_report("pos_block", p, {full, outer}, direction_for(p), tol);
}

Lemma2State hoelder_dual(const Lemma2State& s, double p) {
  require_exponent(p);
  if (p <= 1.0) throw std::domain_error("the Hoelder dual needs p > 1");
  const double q = p / (p - 1.0);
  const RealMatrix2 k = analysis::psd_power(s.block(0), p - 1.0);
  const RealMatrix2 l = analysis::psd_power(s.block(1), p - 1.0);
  const Lemma2State raw = psd_state(k.a, l.a, k.d, l.d, k.b, l.b);
  const double nq = lemma2_norm(raw, q);
  if (nq == 0.0) return raw;
  const double inv = 1.0 / nq;
  return psd_state(raw.a(0) * inv, raw.a(1) * inv, raw.b(0) * inv, raw.b(1) * inv,
                   raw.c(0) * inv, raw.c(1) * inv);
}

double trace_product(const Lemma2State& m, const Lemma2State& n) {
  double tr = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    tr += m.a(i) * n.a(i) + 2.0 * m.c(i) * n.c(i) + m.b(i) * n.b(i);
  }
  return tr;
}

InequalityReport check_hoelder_duality(const Lemma2State& s, const Lemma2State& dual, double p,
                                       double tol) {
  if (!(p > 2.0) || !std::isfinite(p)) {
    throw std::domain_error("the duality argument applies to p > 2");
  }
  const double q = p / (p - 1.0);
  const Lemma2State mr = make_rearranged(s);
  const Lemma2State nr = make_rearranged(dual);

  const double tr_mn = trace_product(s, dual);
  const double tr_mrnr = trace_product(mr, nr);
  const double norm_m = lemma2_norm(s, p);
  const double norm_mr = lemma2_norm(mr, p);
  const double norm_n = lemma2_norm(dual, q);
  const double norm_nr = lemma2_norm(nr, q);

  InequalityReport r = make_report("hoelder_duality", p,
                                   {tr_mn, tr_mrnr, norm_mr * norm_nr, norm_mr * norm_n},
                                   Direction::NonDecreasing, tol);
  const double hoelder_slack = norm_m * norm_n - tr_mn;
  r.extras = {{"q", q},
              {"hoelder_slack_MN", hoelder_slack},
              {"rearrangement_slack", tr_mrnr - tr_mn},
              {"hoelder_slack_MrNr", norm_mr * norm_nr - tr_mrnr},
              {"q_norm_slack", norm_n - norm_nr},
              {"norm_M", norm_m},
              {"norm_Mr", norm_mr}};
  // Hoelder for the original pair is a link of the argument as well.
  r.margin = std::min(r.margin, hoelder_slack);
  r.holds = r.margin >= -r.threshold();
  return r;
}

}  // namespace hanner
