#include "hanner/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hanner::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

double read_real(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "not finite");
  return v;
}

Complex read_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {read_real(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) fail(field, "expected a number or [re, im]");
  return {read_real(j[0], field + "[0]"), read_real(j[1], field + "[1]")};
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

template <typename T, typename Read>
std::vector<T> read_array(const json& j, const std::string& field, std::size_t n, Read read) {
  if (!j.is_array()) fail(field, "expected an array");
  if (j.size() != n) {
    fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(read(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t read_size(const json& j) {
  const json& n = member(j, "n", "");
  if (!n.is_number_integer() || n.get<long long>() < 1) fail("n", "expected a positive integer");
  return n.get<std::size_t>();
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json complex_array(const std::vector<Complex>& v) {
  json out = json::array();
  for (const Complex& z : v) out.push_back(complex_json(z));
  return out;
}

json real_matrix(const RealMatrix2& m) { return json::array({m.a, m.b, m.c, m.d}); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json permutation_json(const Permutation& sigma) {
  json out = json::array();
  for (std::size_t v : sigma) out.push_back(v + 1);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

DiagBlockMatrix diag_block_from_json(const json& j) {
  const std::size_t n = read_size(j);
  const json& blocks = member(j, "blocks", "");
  DiagBlockMatrix bm;
  bm.a = read_array<Complex>(member(blocks, "a", "blocks"), "blocks.a", n, read_complex);
  bm.b = read_array<Complex>(member(blocks, "b", "blocks"), "blocks.b", n, read_complex);
  bm.c = read_array<Complex>(member(blocks, "c", "blocks"), "blocks.c", n, read_complex);
  bm.d = read_array<Complex>(member(blocks, "d", "blocks"), "blocks.d", n, read_complex);
  return bm;
}

PsdDiagBlock psd_block_from_json(const json& j) {
  const std::size_t n = read_size(j);
  PsdDiagBlock pb;
  pb.a = read_array<double>(member(j, "a", ""), "a", n, read_real);
  pb.b = read_array<double>(member(j, "b", ""), "b", n, read_real);
  pb.c = read_array<Complex>(member(j, "c", ""), "c", n, read_complex);
  try {
    pb.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return pb;
}

InstanceFile parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (j.contains("blocks")) return diag_block_from_json(j);
  if (j.contains("a") || j.contains("b") || j.contains("c")) return psd_block_from_json(j);
  throw ParseError("instance has neither 'blocks' nor 'a'/'b'/'c' fields");
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

json to_json(const DiagBlockMatrix& bm) {
  return {{"n", bm.size()},
          {"blocks",
           {{"a", complex_array(bm.a)},
            {"b", complex_array(bm.b)},
            {"c", complex_array(bm.c)},
            {"d", complex_array(bm.d)}}}};
}

json to_json(const PsdDiagBlock& pb) {
  return {{"n", pb.a.size()}, {"a", pb.a}, {"b", pb.b}, {"c", complex_array(pb.c)}};
}

json to_json(const Lemma2State& s) {
  return {{"a", {s.a(0), s.a(1)}}, {"b", {s.b(0), s.b(1)}}, {"c", {s.c(0), s.c(1)}}};
}

json to_json(const Instance& instance) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiagBlockMatrix> || std::is_same_v<T, PsdDiagBlock> ||
                      std::is_same_v<T, Lemma2State>) {
          return to_json(v);
        } else if constexpr (std::is_same_v<T, ComplexMatrix2>) {
          return {{"matrix", json::array({complex_json(v.a), complex_json(v.b),
                                          complex_json(v.c), complex_json(v.d)})}};
        } else if constexpr (std::is_same_v<T, MatrixPair>) {
          return {{"x", real_matrix(v.x)}, {"y", real_matrix(v.y)}};
        } else {
          return {{"u", complex_array(v.u)}, {"v", complex_array(v.v)}};
        }
      },
      instance);
}

json to_json(const InequalityReport& r) {
  json chain = json::array();
  for (double v : r.chain) chain.push_back(number_or_null(v));
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number_or_null(v);
  return {{"name", r.name},
          {"p", r.p},
          {"direction", to_string(r.direction)},
          {"chain", chain},
          {"margin", number_or_null(r.margin)},
          {"threshold", r.threshold()},
          {"tol", r.tol},
          {"holds", r.holds},
          {"strict_violation", r.strict_violation()},
          {"extras", extras}};
}

InequalityReport report_from_json(const json& j) {
  InequalityReport r;
  try {
    r.name = member(j, "name", "").get<std::string>();
    r.p = read_real(member(j, "p", ""), "p");
    const std::string dir = member(j, "direction", "").get<std::string>();
    if (dir == to_string(Direction::NonIncreasing)) {
      r.direction = Direction::NonIncreasing;
    } else if (dir == to_string(Direction::NonDecreasing)) {
      r.direction = Direction::NonDecreasing;
    } else {
      fail("direction", "unknown value '" + dir + "'");
    }
    for (const json& v : member(j, "chain", "")) r.chain.push_back(read_real(v, "chain"));
    r.margin = read_real(member(j, "margin", ""), "margin");
    r.tol = read_real(member(j, "tol", ""), "tol");
    r.holds = member(j, "holds", "").get<bool>();
    if (j.contains("extras")) {
      for (const auto& [k, v] : j.at("extras").items()) {
        r.extras.emplace_back(k, v.is_null() ? std::nan("") : v.get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return r;
}

json to_json(const CrossoverResult& result) {
  json samples = json::array();
  for (const auto& [p, m] : result.samples) samples.push_back({p, number_or_null(m)});
  return {{"p_star", result.p_star ? json(*result.p_star) : json(nullptr)},
          {"bracket", {result.bracket.first, result.bracket.second}},
          {"samples", samples}};
}

json to_json(const CounterexampleAnalysis& a) {
  json sweep = json::array();
  for (const auto& r : a.sweep) sweep.push_back(to_json(r));
  json out = {{"id", a.id},
              {"description", a.description},
              {"instance", to_json(a.instance)},
              {"sweep", sweep}};
  out["crossover"] = a.crossover ? to_json(*a.crossover) : json(nullptr);
  return out;
}

json to_json(const Violation& v) {
  return {{"trial", v.trial}, {"instance", to_json(v.instance)}, {"report", to_json(v.report)}};
}

json to_json(const OrderingAssignment& as) {
  return {{"sigma_b", permutation_json(as.sigma_b)},
          {"sigma_c", permutation_json(as.sigma_c)},
          {"sigma_d", permutation_json(as.sigma_d)},
          {"sigma_b_cycles", cycle_notation(as.sigma_b)},
          {"sigma_c_cycles", cycle_notation(as.sigma_c)},
          {"sigma_d_cycles", cycle_notation(as.sigma_d)},
          {"value", as.value}};
}

json to_json(const SwapSortResult& r) {
  json swaps = json::array();
  for (const SwapStep& s : r.swaps) {
    swaps.push_back({{"i", s.i + 1},
                     {"j", s.j + 1},
                     {"before", s.before},
                     {"after", s.after},
                     {"delta", s.delta()}});
  }
  return {{"sorted", to_json(r.sorted)},
          {"swaps", swaps},
          {"initial_power", r.initial_power},
          {"final_power", r.final_power},
          {"final_norm", r.final_norm}};
}

void write_reports_csv(std::ostream& out, const std::vector<InequalityReport>& reports) {
  out << "name,p,chain0,chain1,chain2,chain3,margin,holds\n";
  for (const auto& r : reports) {
    out << csv_field(r.name) << ',' << format_double(r.p);
    for (std::size_t k = 0; k < 4; ++k) {
      out << ',';
      if (k < r.chain.size()) out << format_double(r.chain[k]);
    }
    out << ',' << format_double(r.margin) << ',' << (r.holds ? "true" : "false") << '\n';
  }
}

void write_landscape_csv(std::ostream& out, const std::vector<OrderingAssignment>& landscape) {
  out << "sigma_b,sigma_c,sigma_d,value\n";
  for (const auto& as : landscape) {
    out << csv_field(cycle_notation(as.sigma_b)) << ',' << csv_field(cycle_notation(as.sigma_c))
        << ',' << csv_field(cycle_notation(as.sigma_d)) << ',' << format_double(as.value) << '\n';
  }
}

void write_explorer_csv(std::ostream& out, const std::vector<analysis::ExplorerRow>& rows) {
  out << "alpha,beta,h,p,F,dF_dh,det_residual\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.beta) << ',' << format_double(r.h)
        << ',' << format_double(r.p) << ',' << format_double(r.F) << ','
        << format_double(r.dF_dh) << ',' << format_double(r.det_residual) << '\n';
  }
}

}  // namespace hanner::io
