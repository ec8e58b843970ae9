#include "hanner/counterexamples.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hanner {

namespace {

constexpr std::array kCheckers{CheckerId::ScalarHanner, CheckerId::Theorem1, CheckerId::Theorem2,
                               CheckerId::SingOrder,    CheckerId::Lemma1,   CheckerId::GSuperadd,
                               CheckerId::Lemma2,       CheckerId::PosBlock};

int band_sign(double margin, double band) {
  if (margin > band) return 1;
  if (margin < -band) return -1;
  return 0;
}

template <typename T>
const T& expect(const Instance& instance, CheckerId id) {
  if (const T* value = std::get_if<T>(&instance)) return *value;
  throw std::invalid_argument(std::string("instance type does not match checker ") +
                              to_string(id));
}

}  // namespace

const char* to_string(CheckerId id) {
  switch (id) {
    case CheckerId::ScalarHanner: return "scalar_hanner";
    case CheckerId::Theorem1: return "theorem1";
    case CheckerId::Theorem2: return "theorem2";
    case CheckerId::SingOrder: return "sing_order";
    case CheckerId::Lemma1: return "lemma1";
    case CheckerId::GSuperadd: return "g_superadd";
    case CheckerId::Lemma2: return "lemma2";
    case CheckerId::PosBlock: return "pos_block";
  }
  return "unknown";
}

CheckerId parse_checker_id(const std::string& name) {
  for (CheckerId id : kCheckers) {
    if (name == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown checker '" + name + "'");
}

std::span<const CheckerId> all_checkers() { return kCheckers; }

CrossoverResult crossover_scan(const std::function<double(double)>& margin_at,
                               std::span<const double> p_grid, double resolution,
                               const std::function<double(double)>& zero_band) {
  if (p_grid.empty()) throw std::invalid_argument("p grid is empty");
  if (!std::is_sorted(p_grid.begin(), p_grid.end())) {
    throw std::invalid_argument("p grid must be sorted");
  }
  if (p_grid.front() < 1.0) throw std::invalid_argument("p grid must lie in [1, inf)");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

  auto band = [&](double p) { return zero_band ? zero_band(p) : 0.0; };

  CrossoverResult result;
  result.samples.reserve(p_grid.size());
  for (double p : p_grid) result.samples.emplace_back(p, margin_at(p));

  // Last sample strictly outside the band, as (index, sign).
  std::optional<std::pair<std::size_t, int>> last;
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    const auto [p, m] = result.samples[k];
    const int s = band_sign(m, band(p));
    if (s == 0) continue;
    if (last && last->second != s) {
      double lo = result.samples[last->first].first;
      double hi = p;
      const int lo_sign = last->second;
      while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        const double mm = margin_at(mid);
        if ((mm > 0.0 ? 1 : -1) == lo_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      result.bracket = {lo, hi};
      result.p_star = 0.5 * (lo + hi);
      return result;
    }
    last = {k, s};
  }
  result.bracket = {p_grid.front(), p_grid.back()};
  return result;
}

InequalityReport run_checker(CheckerId id, const Instance& instance, double p, double tol) {
  switch (id) {
    case CheckerId::ScalarHanner: {
      const auto& uv = expect<VectorPair>(instance, id);
      return check_scalar_hanner(uv.u, uv.v, p, tol);
    }
    case CheckerId::Theorem1:
    case CheckerId::SingOrder: {
      const DiagBlockMatrix bm = std::holds_alternative<PsdDiagBlock>(instance)
                                     ? embed(std::get<PsdDiagBlock>(instance))
                                     : expect<DiagBlockMatrix>(instance, id);
      return id == CheckerId::Theorem1 ? check_theorem1(bm, p, tol)
                                       : check_sing_order(bm, p, tol);
    }
    case CheckerId::Theorem2:
      return check_theorem2(expect<PsdDiagBlock>(instance, id), p, tol);
    case CheckerId::PosBlock:
      return check_pos_block(expect<PsdDiagBlock>(instance, id), p, tol);
    case CheckerId::Lemma1:
      return check_lemma1(expect<ComplexMatrix2>(instance, id), p, tol);
    case CheckerId::GSuperadd: {
      const auto& xy = expect<MatrixPair>(instance, id);
      return check_g_superadd(xy.x, xy.y, p, tol);
    }
    case CheckerId::Lemma2:
      return check_lemma2(expect<Lemma2State>(instance, id), p, tol);
  }
  throw std::invalid_argument("unknown checker");
}

CrossoverResult crossover_scan(const Instance& instance, CheckerId id,
                               std::span<const double> p_grid, double resolution, double tol) {
  auto margin_at = [&](double p) { return run_checker(id, instance, p, tol).margin; };
  auto band = [&](double p) { return run_checker(id, instance, p, tol).threshold(); };
  return crossover_scan(margin_at, p_grid, resolution, band);
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("invalid grid specification");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

DiagBlockMatrix counterexample_one() {
  // [[A, C], [C, B]] with A = diag(4, 0), B = diag(7, 6), C = diag(7, 10).
  return {{4.0, 0.0}, {7.0, 10.0}, {7.0, 10.0}, {7.0, 6.0}};
}

DiagBlockMatrix counterexample_two() {
  // [[A, B], [C, D]] with A = 0, B = diag(5, 6), C = diag(5, 1), D = diag(6, 5).
  return {{0.0, 0.0}, {5.0, 6.0}, {5.0, 1.0}, {6.0, 5.0}};
}

std::vector<CounterexampleAnalysis> reproduce_counterexamples() {
  std::vector<CounterexampleAnalysis> out;

  CounterexampleAnalysis one;
  one.id = "sing_order_psd_layout";
  one.description =
      "A=diag(4,0), B=diag(7,6), C=diag(7,10) in [[A,C],[C,B]] (not PSD): "
      "||X||_p >= ||Sing X||_p fails for p below the bisected crossover";
  one.instance = counterexample_one();
  const std::vector<double> scan_grid = linear_grid(1.0, 2.0, 0.05);
  one.crossover = crossover_scan(Instance{one.instance}, CheckerId::SingOrder, scan_grid);
  for (double p : {1.0, 1.1, 1.2, 1.25, 1.5, 2.0}) {
    one.sweep.push_back(check_sing_order(one.instance, p));
  }
  out.push_back(std::move(one));

  CounterexampleAnalysis two;
  two.id = "sing_order_general";
  two.description =
      "A=0, B=diag(5,6), C=diag(5,1), D=diag(6,5) in [[A,B],[C,D]]: "
      "||X||_p < ||Sing X||_p strictly for 1 <= p < 2, equality at p = 2";
  two.instance = counterexample_two();
  for (double p : {1.0, 1.25, 1.5, 1.75, 1.99, 2.0}) {
    two.sweep.push_back(check_sing_order(two.instance, p));
  }
  out.push_back(std::move(two));
  return out;
}

}  // namespace hanner
