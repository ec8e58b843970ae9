#include "hanner/random_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hanner {

namespace {

constexpr double kLo = 1e-3;
constexpr double kHi = 1e3;

double modulus(CounterRng& rng) { return rng.log_uniform(kLo, kHi); }

Complex complex_entry(CounterRng& rng) { return std::polar(modulus(rng), rng.phase()); }

std::vector<Complex> complex_vector(CounterRng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = complex_entry(rng);
  return v;
}

std::size_t dimension(CounterRng& rng, std::size_t max_n) {
  return static_cast<std::size_t>(rng.integer(1, std::max<std::size_t>(max_n, 1)));
}

// Largest modulus m <= sqrt(ab) with m * m <= a * b in floating point.
double boundary_modulus(double a, double b) {
  double m = std::sqrt(a * b);
  while (m > 0.0 && m * m > a * b) m = std::nextafter(m, 0.0);
  return m;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

PsdDiagBlock psd_sample(CounterRng& rng, std::size_t n, Family family) {
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = modulus(rng);
    b[i] = modulus(rng);
  }
  if (family == Family::Boundary) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.2)) a[i] = 0.0;
      if (rng.bernoulli(0.2)) b[i] = 0.0;
    }
  }
  if (family != Family::General) {
    a = sorted_desc(std::move(a));
    b = sorted_desc(std::move(b));
  }
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cap = boundary_modulus(a[i], b[i]);
    double m = cap * rng.uniform();
    if (family == Family::Boundary) {
      if (rng.bernoulli(0.5)) m = cap;
      if (rng.bernoulli(0.1)) m = 0.0;
    }
    const double phase = rng.phase();
    c[i] = std::polar(m, phase);
    // cos/sin rounding can push |c|^2 past ab.
    while (std::norm(c[i]) > a[i] * b[i]) {
      m = std::nextafter(m, 0.0);
      c[i] = std::polar(m, phase);
    }
  }
  return {std::move(a), std::move(b), std::move(c)};
}

DiagBlockMatrix general_blocks(CounterRng& rng, std::size_t n, bool zeros) {
  DiagBlockMatrix bm{complex_vector(rng, n), complex_vector(rng, n), complex_vector(rng, n),
                     complex_vector(rng, n)};
  if (zeros) {
    for (auto* v : {&bm.a, &bm.b, &bm.c, &bm.d}) {
      for (auto& z : *v) {
        if (rng.bernoulli(0.2)) z = 0.0;
      }
    }
  }
  return bm;
}

Lemma2State lemma2_sample(CounterRng& rng, Family family) {
  const PsdDiagBlock pb = psd_sample(rng, 2, family);
  // |c|^2 can round above ab even when re^2 + im^2 does not.
  auto c = [&](std::size_t i) {
    return std::min(std::abs(pb.c[i]), boundary_modulus(pb.a[i], pb.b[i]));
  };
  return {pb.a[0], pb.a[1], pb.b[0], pb.b[1], c(0), c(1)};
}

ComplexMatrix2 matrix2_sample(CounterRng& rng, Family family) {
  if (family == Family::General) {
    return {complex_entry(rng), complex_entry(rng), complex_entry(rng), complex_entry(rng)};
  }
  const PsdDiagBlock pb = psd_sample(rng, 1, family);
  return {pb.a[0], pb.c[0], std::conj(pb.c[0]), pb.b[0]};
}

RealMatrix2 nonnegative_sample(CounterRng& rng, bool zeros) {
  RealMatrix2 m{modulus(rng), modulus(rng), modulus(rng), modulus(rng)};
  if (zeros) {
    for (double* v : {&m.a, &m.b, &m.c, &m.d}) {
      if (rng.bernoulli(0.25)) *v = 0.0;
    }
  }
  return m;
}

VectorPair vector_sample(CounterRng& rng, std::size_t n, Family family) {
  VectorPair uv{complex_vector(rng, n), complex_vector(rng, n)};
  if (family != Family::General) {
    for (auto* v : {&uv.u, &uv.v}) {
      for (auto& z : *v) z = std::abs(z);
    }
  }
  if (family == Family::Boundary) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.2)) uv.u[i] = 0.0;
      if (rng.bernoulli(0.2)) uv.v[i] = uv.u[i];
    }
  }
  return uv;
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::General: return "general";
    case Family::Psd: return "psd";
    case Family::Boundary: return "boundary";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::General, Family::Psd, Family::Boundary}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

bool is_theorem_backed(CheckerId id, Family family) {
  switch (id) {
    case CheckerId::SingOrder: return false;
    case CheckerId::Theorem2:
    case CheckerId::Lemma2: return family != Family::General;
    default: return true;
  }
}

Instance sample_instance(CheckerId id, Family family, std::uint64_t seed, std::size_t trial,
                         std::size_t max_n) {
  CounterRng rng(seed, trial);
  const bool zeros = family == Family::Boundary;
  switch (id) {
    case CheckerId::ScalarHanner:
      return vector_sample(rng, dimension(rng, max_n), family);
    case CheckerId::Theorem1:
    case CheckerId::SingOrder: {
      const std::size_t n = dimension(rng, max_n);
      if (family == Family::General) return general_blocks(rng, n, false);
      return embed(psd_sample(rng, n, family));
    }
    case CheckerId::Theorem2:
    case CheckerId::PosBlock:
      return psd_sample(rng, dimension(rng, max_n), family);
    case CheckerId::Lemma1:
      return matrix2_sample(rng, family);
    case CheckerId::GSuperadd: {
      const RealMatrix2 x = nonnegative_sample(rng, zeros);
      return MatrixPair{x, nonnegative_sample(rng, zeros)};
    }
    case CheckerId::Lemma2:
      return lemma2_sample(rng, family);
  }
  throw std::invalid_argument("unknown checker");
}

std::vector<Violation> random_search(const SearchConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  if (config.p_list.empty()) throw std::invalid_argument("p list is empty");
  for (double p : config.p_list) require_exponent(p);
  std::vector<Violation> out;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const Instance instance =
        sample_instance(config.checker, config.family, config.seed, trial, config.max_n);
    for (double p : config.p_list) {
      InequalityReport r = run_checker(config.checker, instance, p, config.tol);
      if (!r.holds) out.push_back({trial, instance, std::move(r)});
    }
  }
  return out;
}

}  // namespace hanner
