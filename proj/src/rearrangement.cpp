#include "hanner/rearrangement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hanner {

namespace {

constexpr std::size_t kMaxCPermutationSize = 8;

void require_permutation(const Permutation& sigma, std::size_t n, const char* name) {
  if (sigma.size() != n) {
    throw std::invalid_argument(std::string(name) + " has the wrong length");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t v : sigma) {
    if (v >= n || seen[v]) throw std::invalid_argument(std::string(name) + " is not a bijection");
    seen[v] = true;
  }
}

Permutation identity(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

std::vector<double> moduli(const std::vector<Complex>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Complex& z : v) out.push_back(std::abs(z));
  return out;
}

// Block moduli scaled by the largest entry.
struct ModuliBlocks {
  std::vector<double> a, b, c, d;
  double peak = 0.0;
};

ModuliBlocks scaled_moduli(const DiagBlockMatrix& bm) {
  bm.validate();
  ModuliBlocks m{moduli(bm.a), moduli(bm.b), moduli(bm.c), moduli(bm.d), 0.0};
  for (const auto* v : {&m.a, &m.b, &m.c, &m.d}) {
    for (double x : *v) m.peak = std::max(m.peak, x);
  }
  if (m.peak > 0.0) {
    for (auto* v : {&m.a, &m.b, &m.c, &m.d}) {
      for (double& x : *v) x /= m.peak;
    }
  }
  return m;
}

double block_power(double a, double b, double c, double d, double p) {
  return schatten_p_power_2x2({a, b, c, d}, p);
}

double to_value(double power_sum, double peak, double p) {
  return peak * std::pow(std::max(power_sum, 0.0), 1.0 / p);
}

bool close(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({std::abs(x), std::abs(y), 1e-300});
}

// Exact search by dynamic programming over the sets of B, C and D indices
// already placed: positions are filled in order, so the state after i steps
// is three i-element subsets. Costs are signed so that smaller is better.
class AssignmentSearch {
 public:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  AssignmentSearch(std::size_t n, std::vector<double> cost) : n_(n), cost_(std::move(cost)) {
    const std::size_t full = std::size_t{1} << n_;
    by_size_.resize(n_ + 1);
    for (std::size_t mask = 0; mask < full; ++mask) {
      by_size_[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    }
    table_.resize(full * full * full);
  }

  // Optimal total with some entries of the three permutations pinned
  // (kFree marks an open entry).
  double optimum(const Permutation& fb, const Permutation& fc, const Permutation& fd) {
    const std::size_t full = std::size_t{1} << n_;
    std::fill(table_.begin(), table_.end(), kInf);
    table_[0] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t mb : by_size_[i]) {
        for (std::size_t mc : by_size_[i]) {
          for (std::size_t md : by_size_[i]) {
            const double here = table_[(mb * full + mc) * full + md];
            if (here == kInf) continue;
            for (std::size_t jb = 0; jb < n_; ++jb) {
              if ((mb >> jb & 1) || (fb[i] != kFree && fb[i] != jb)) continue;
              for (std::size_t jc = 0; jc < n_; ++jc) {
                if ((mc >> jc & 1) || (fc[i] != kFree && fc[i] != jc)) continue;
                for (std::size_t jd = 0; jd < n_; ++jd) {
                  if ((md >> jd & 1) || (fd[i] != kFree && fd[i] != jd)) continue;
                  double& next = table_[(((mb | std::size_t{1} << jb) * full) +
                                         (mc | std::size_t{1} << jc)) * full +
                                        (md | std::size_t{1} << jd)];
                  next = std::min(next, here + cost(i, jb, jc, jd));
                }
              }
            }
          }
        }
      }
    }
    return table_.back();
  }

  // Lexicographically smallest (sigma_b, sigma_c, sigma_d) whose total is
  // within a relative 1e-12 of the optimum.
  std::tuple<Permutation, Permutation, Permutation, double> solve() {
    Permutation pinned[3] = {Permutation(n_, kFree), Permutation(n_, kFree),
                             Permutation(n_, kFree)};
    const double best = optimum(pinned[0], pinned[1], pinned[2]);
    const double limit = best + 1e-12 * std::max(std::abs(best), 1e-300);
    double total = best;
    for (auto& sigma : pinned) {
      std::vector<bool> taken(n_, false);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (taken[j]) continue;
          sigma[i] = j;
          const double value = optimum(pinned[0], pinned[1], pinned[2]);
          if (value <= limit) {
            taken[j] = true;
            total = value;
            break;
          }
        }
      }
    }
    return {pinned[0], pinned[1], pinned[2], total};
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double cost(std::size_t i, std::size_t jb, std::size_t jc, std::size_t jd) const {
    return cost_[((i * n_ + jb) * n_ + jc) * n_ + jd];
  }

  std::size_t n_;
  std::vector<double> cost_;
  std::vector<std::vector<std::size_t>> by_size_;
  std::vector<double> table_;
};

}  // namespace

DiagBlockMatrix apply_assignment(const DiagBlockMatrix& bm, const OrderingAssignment& as) {
  bm.validate();
  const std::size_t n = bm.size();
  require_permutation(as.sigma_b, n, "sigma_b");
  require_permutation(as.sigma_c, n, "sigma_c");
  require_permutation(as.sigma_d, n, "sigma_d");
  DiagBlockMatrix out = bm;
  for (std::size_t i = 0; i < n; ++i) {
    out.b[i] = bm.b[as.sigma_b[i]];
    out.c[i] = bm.c[as.sigma_c[i]];
    out.d[i] = bm.d[as.sigma_d[i]];
  }
  return out;
}

OrderingAssignment exhaustive_optimize(const DiagBlockMatrix& bm, double p, Objective objective) {
  require_exponent(p);
  const std::size_t n = bm.size();
  if (n > kMaxExhaustiveSize) {
    throw std::invalid_argument("exhaustive search is limited to n <= " +
                                std::to_string(kMaxExhaustiveSize));
  }
  const ModuliBlocks m = scaled_moduli(bm);
  if (n == 0) return {{}, {}, {}, 0.0};

  const double sign = objective == Objective::Min ? 1.0 : -1.0;
  std::vector<double> cost(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jb = 0; jb < n; ++jb)
      for (std::size_t jc = 0; jc < n; ++jc)
        for (std::size_t jd = 0; jd < n; ++jd)
          cost[((i * n + jb) * n + jc) * n + jd] =
              sign * block_power(m.a[i], m.b[jb], m.c[jc], m.d[jd], p);

  AssignmentSearch search(n, std::move(cost));
  auto [sb, sc, sd, total] = search.solve();
  OrderingAssignment out{std::move(sb), std::move(sc), std::move(sd), 0.0};
  out.value = to_value(sign * total, m.peak, p);
  return out;
}

std::vector<OrderingAssignment> ordering_landscape(const DiagBlockMatrix& bm, double p) {
  require_exponent(p);
  const std::size_t n = bm.size();
  if (n > kMaxLandscapeSize) {
    throw std::invalid_argument("landscape is limited to n <= " +
                                std::to_string(kMaxLandscapeSize));
  }
  const ModuliBlocks m = scaled_moduli(bm);
  std::vector<OrderingAssignment> out;
  Permutation sb = identity(n);
  do {
    Permutation sc = identity(n);
    do {
      Permutation sd = identity(n);
      do {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          sum += block_power(m.a[i], m.b[sb[i]], m.c[sc[i]], m.d[sd[i]], p);
        }
        out.push_back({sb, sc, sd, to_value(sum, m.peak, p)});
      } while (std::next_permutation(sd.begin(), sd.end()));
    } while (std::next_permutation(sc.begin(), sc.end()));
  } while (std::next_permutation(sb.begin(), sb.end()));
  return out;
}

CPermutationOptimum exhaustive_c_permutations(const PsdDiagBlock& pb, double p,
                                              Objective objective) {
  require_exponent(p);
  pb.validate();
  const std::size_t n = pb.a.size();
  if (n > kMaxCPermutationSize) {
    throw std::invalid_argument("c-permutation search is limited to n <= " +
                                std::to_string(kMaxCPermutationSize));
  }
  const ModuliBlocks m = scaled_moduli(embed(pb));
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = block_power(m.a[i], m.b[j], m.b[j], m.d[i], p);

  CPermutationOptimum best{identity(n), 0.0};
  bool found = false;
  double best_sum = 0.0;
  Permutation sigma = identity(n);
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += cost[i * n + sigma[i]];
    const bool better = !found || (objective == Objective::Min ? sum < best_sum : sum > best_sum);
    if (better && !(found && close(sum, best_sum))) {
      found = true;
      best_sum = sum;
      best.sigma = sigma;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  best.value = to_value(best_sum, m.peak, p);
  return best;
}

SwapSortResult swap_sort_psd(const PsdDiagBlock& pb, double p) {
  require_exponent(p);
  require_psd(pb);
  const std::size_t n = pb.a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pb.a[i] < pb.a[i + 1] || pb.b[i] < pb.b[i + 1]) {
      throw std::invalid_argument("swap sort needs a and b in decreasing order (presort first)");
    }
  }

  SwapSortResult out;
  out.sorted = pb;
  auto power = [&](const PsdDiagBlock& x) { return block_norm_p_power(embed(x), p); };
  out.initial_power = power(pb);
  double current = out.initial_power;
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    bool swapped = false;
    for (std::size_t i = 0; i + 1 < n - pass; ++i) {
      if (std::abs(out.sorted.c[i]) < std::abs(out.sorted.c[i + 1])) {
        std::swap(out.sorted.c[i], out.sorted.c[i + 1]);
        const double next = power(out.sorted);
        out.swaps.push_back({i, i + 1, current, next});
        current = next;
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  out.final_power = current;
  out.final_norm = block_norm(embed(out.sorted), p);
  return out;
}

PsdDiagBlock presort_psd(const PsdDiagBlock& pb) {
  pb.validate();
  Permutation order = identity(pb.a.size());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (pb.a[i] != pb.a[j]) return pb.a[i] > pb.a[j];
    return pb.b[i] > pb.b[j];
  });
  PsdDiagBlock out = pb;
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.a[k] = pb.a[order[k]];
    out.b[k] = pb.b[order[k]];
    out.c[k] = pb.c[order[k]];
  }
  return out;
}

std::string cycle_notation(const Permutation& sigma) {
  require_permutation(sigma, sigma.size(), "permutation");
  std::vector<bool> seen(sigma.size(), false);
  std::string out;
  for (std::size_t start = 0; start < sigma.size(); ++start) {
    if (seen[start] || sigma[start] == start) continue;
    out += '(';
    std::size_t k = start;
    bool first = true;
    while (!seen[k]) {
      seen[k] = true;
      if (!first) out += ' ';
      out += std::to_string(k + 1);
      first = false;
      k = sigma[k];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace hanner
