#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hanner/analysis.hpp"
#include "hanner/counterexamples.hpp"
#include "hanner/inequalities.hpp"
#include "hanner/io.hpp"
#include "hanner/random_search.hpp"
#include "hanner/rearrangement.hpp"

namespace hanner::cli {

namespace {

using io::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<double> kDefaultPList{1.0, 1.1, 1.2, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0};
constexpr std::size_t kMaxListedViolations = 100;

struct RunConfig {
  std::string instance_path;
  std::vector<double> p_list;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  double tol = kDefaultTolerance;
  std::string output_path;
  std::string format = "json";
  // Command-specific.
  std::string checker;
  std::string family = "general";
  std::vector<double> alphas, betas, hs;
  std::vector<double> direction{1.0, 1.0, 1.0, 1.0};
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--instance", cfg.instance_path, "Instance JSON file");
  cmd->add_option("--p", cfg.p_list, "Comma-separated exponents")->delimiter(',');
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--trials", cfg.trials, "Number of random trials");
  cmd->add_option("--tol", cfg.tol, "Relative tolerance");
  cmd->add_option("--out", cfg.output_path, "Output file (default stdout)");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void validate(const RunConfig& cfg) {
  for (double p : cfg.p_list) {
    if (!std::isfinite(p) || p < 1.0) {
      throw UsageError("every exponent in --p must be finite and >= 1");
    }
  }
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw UsageError("--tol must be positive");
}

const std::vector<double>& p_list_or(const RunConfig& cfg, const std::vector<double>& fallback) {
  return cfg.p_list.empty() ? fallback : cfg.p_list;
}

io::InstanceFile load_instance(const RunConfig& cfg) {
  if (cfg.instance_path.empty()) throw UsageError("this command needs --instance FILE");
  return io::read_instance_file(cfg.instance_path);
}

bool co_sorted(const PsdDiagBlock& pb) {
  for (std::size_t i = 0; i + 1 < pb.a.size(); ++i) {
    if (pb.a[i] < pb.a[i + 1] || pb.b[i] < pb.b[i + 1]) return false;
  }
  return true;
}

struct Check {
  InequalityReport report;
  bool theorem_backed = true;
};

struct Outcome {
  json document;
  std::string csv;
  int exit_code = kExitOk;
};

std::string reports_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream s;
  io::write_reports_csv(s, reports);
  return s.str();
}

Outcome finish_checks(const std::vector<Check>& checks, bool forced) {
  Outcome out;
  json rows = json::array();
  std::vector<InequalityReport> reports;
  bool all_hold = true;
  for (const Check& c : checks) {
    json row = io::to_json(c.report);
    row["theorem_backed"] = c.theorem_backed;
    rows.push_back(std::move(row));
    reports.push_back(c.report);
    if (!c.report.holds && (forced || c.theorem_backed)) out.exit_code = kExitViolation;
    all_hold = all_hold && c.report.holds;
  }
  out.document = {{"command", "verify"}, {"all_hold", all_hold}, {"reports", rows}};
  out.csv = reports_csv(reports);
  return out;
}

Outcome cmd_verify(const RunConfig& cfg) {
  const io::InstanceFile file = load_instance(cfg);
  const auto& ps = p_list_or(cfg, kDefaultPList);
  std::vector<Check> checks;

  if (!cfg.checker.empty()) {
    const CheckerId id = parse_checker_id(cfg.checker);
    Instance instance = std::visit([](const auto& v) { return Instance{v}; }, file);
    if (id == CheckerId::Lemma2) {
      const auto* pb = std::get_if<PsdDiagBlock>(&file);
      if (pb == nullptr || pb->a.size() != 2) {
        throw UsageError("checker lemma2 needs a PSD instance with n = 2");
      }
      instance = Lemma2State::from_complex(pb->a[0], pb->a[1], pb->b[0], pb->b[1], pb->c[0],
                                           pb->c[1]);
    }
    for (double p : ps) checks.push_back({run_checker(id, instance, p, cfg.tol), true});
    return finish_checks(checks, true);
  }

  if (const auto* bm = std::get_if<DiagBlockMatrix>(&file)) {
    for (double p : ps) {
      checks.push_back({check_theorem1(*bm, p, cfg.tol), true});
      checks.push_back({check_sing_order(*bm, p, cfg.tol), false});
    }
  } else {
    const auto& pb = std::get<PsdDiagBlock>(file);
    require_psd(pb);
    const bool sorted = co_sorted(pb);
    const DiagBlockMatrix embedded = embed(pb);
    for (double p : ps) {
      checks.push_back({check_theorem1(embedded, p, cfg.tol), true});
      checks.push_back({check_theorem2(pb, p, cfg.tol), sorted});
      checks.push_back({check_pos_block(pb, p, cfg.tol), true});
      if (pb.a.size() == 2) {
        const auto s = Lemma2State::from_complex(pb.a[0], pb.a[1], pb.b[0], pb.b[1], pb.c[0],
                                                 pb.c[1]);
        checks.push_back({check_lemma2(s, p, cfg.tol), s.is_canonical()});
      }
    }
  }
  return finish_checks(checks, false);
}

Outcome cmd_reproduce(const RunConfig&) {
  Outcome out;
  json analyses = json::array();
  std::vector<InequalityReport> reports;
  for (const auto& a : reproduce_counterexamples()) {
    analyses.push_back(io::to_json(a));
    for (const auto& r : a.sweep) {
      InequalityReport labeled = r;
      labeled.name = a.id;
      reports.push_back(labeled);
    }
  }
  out.document = {{"command", "reproduce"}, {"counterexamples", analyses}};
  out.csv = reports_csv(reports);
  return out;
}

Outcome cmd_optimize(const RunConfig& cfg) {
  const io::InstanceFile file = load_instance(cfg);
  const auto& ps = p_list_or(cfg, std::vector<double>{1.0, 1.5, 2.0, 3.0});
  Outcome out;
  json results = json::array();

  if (const auto* bm = std::get_if<DiagBlockMatrix>(&file)) {
    std::ostringstream csv;
    for (double p : ps) {
      const OrderingAssignment lo = exhaustive_optimize(*bm, p, Objective::Min);
      const OrderingAssignment hi = exhaustive_optimize(*bm, p, Objective::Max);
      results.push_back({{"p", p},
                         {"minimum", io::to_json(lo)},
                         {"maximum", io::to_json(hi)},
                         {"identity_value", block_norm(*bm, p)},
                         {"sing_value", block_norm(sing_ordered(*bm), p)}});
    }
    if (cfg.format == "csv") {
      if (bm->size() > kMaxLandscapeSize) {
        throw UsageError("csv landscape export needs n <= " + std::to_string(kMaxLandscapeSize));
      }
      io::write_landscape_csv(csv, ordering_landscape(*bm, ps.front()));
    }
    out.csv = csv.str();
  } else {
    const auto& raw = std::get<PsdDiagBlock>(file);
    require_psd(raw);
    const PsdDiagBlock pb = presort_psd(raw);
    if (!co_sorted(pb)) {
      throw UsageError("a and b are not similarly ordered; the swap procedure does not apply");
    }
    std::vector<InequalityReport> reports;
    for (double p : ps) {
      const SwapSortResult sorted = swap_sort_psd(pb, p);
      const Objective objective = p <= 2.0 ? Objective::Min : Objective::Max;
      const CPermutationOptimum best = exhaustive_c_permutations(pb, p, objective);
      const double sing = block_norm(sing_ordered(embed(pb)), p);
      const double rel = std::abs(best.value - sing) / std::max(sing, 1e-300);
      results.push_back({{"p", p},
                         {"objective", objective == Objective::Min ? "min" : "max"},
                         {"swap_sort", io::to_json(sorted)},
                         {"exhaustive_value", best.value},
                         {"exhaustive_sigma", cycle_notation(best.sigma)},
                         {"sing_value", sing},
                         {"relative_gap", rel},
                         {"exhaustive_equals_sing", rel <= 1e-10}});
      reports.push_back(check_theorem2(pb, p, cfg.tol));
    }
    out.csv = reports_csv(reports);
  }
  out.document = {{"command", "optimize"}, {"results", results}};
  return out;
}

Outcome cmd_explore(const RunConfig& cfg) {
  const auto alphas = cfg.alphas.empty() ? linear_grid(0.2, 1.4, 0.2) : cfg.alphas;
  const auto betas = cfg.betas.empty() ? linear_grid(0.2, 1.4, 0.2) : cfg.betas;
  const auto hs = cfg.hs.empty() ? linear_grid(0.05, 0.95, 0.05) : cfg.hs;
  const auto& ps = p_list_or(cfg, std::vector<double>{1.2, 1.8});
  if (cfg.direction.size() != 4) throw UsageError("--dir needs four entries x,y,w,z");
  const analysis::DirectionMatrix dir{cfg.direction[0], cfg.direction[1], cfg.direction[2],
                                      cfg.direction[3]};
  const auto rows = analysis::explore_grid(alphas, betas, hs, ps, dir);

  Outcome out;
  std::ostringstream csv;
  io::write_explorer_csv(csv, rows);
  out.csv = csv.str();
  json list = json::array();
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.det_residual);
    list.push_back({{"alpha", r.alpha},
                    {"beta", r.beta},
                    {"h", r.h},
                    {"p", r.p},
                    {"F", r.F},
                    {"dF_dh", r.dF_dh},
                    {"det_residual", r.det_residual}});
  }
  out.document = {{"command", "explore"},
                  {"rows", list},
                  {"count", rows.size()},
                  {"max_det_residual", worst}};
  return out;
}

Outcome cmd_fuzz(const RunConfig& cfg) {
  SearchConfig sc;
  sc.family = parse_family(cfg.family);
  sc.checker = parse_checker_id(cfg.checker.empty() ? "theorem1" : cfg.checker);
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  sc.p_list = p_list_or(cfg, kDefaultPList);
  sc.tol = cfg.tol;
  const auto violations = random_search(sc);
  const bool backed = is_theorem_backed(sc.checker, sc.family);

  Outcome out;
  json list = json::array();
  std::vector<InequalityReport> reports;
  for (const auto& v : violations) {
    if (list.size() < kMaxListedViolations) list.push_back(io::to_json(v));
    reports.push_back(v.report);
  }
  out.document = {{"command", "fuzz"},
                  {"checker", to_string(sc.checker)},
                  {"family", to_string(sc.family)},
                  {"seed", sc.seed},
                  {"trials", sc.trials},
                  {"p_list", sc.p_list},
                  {"theorem_backed", backed},
                  {"violation_count", violations.size()},
                  {"violations", list}};
  out.csv = reports_csv(reports);
  out.exit_code = !violations.empty() && backed ? kExitViolation : kExitOk;
  return out;
}

void emit(const Outcome& outcome, const RunConfig& cfg, std::ostream& out) {
  const std::string text =
      cfg.format == "csv" ? outcome.csv : outcome.document.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.output_path + "'");
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for Hanner-type Schatten norm inequalities", "hanner-lab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* verify = app.add_subcommand("verify", "Run the inequality checkers on an instance");
  add_common(verify, cfg);
  verify->add_option("--checker", cfg.checker, "Run only this checker");

  auto* reproduce = app.add_subcommand("reproduce", "Reproduce the two counterexamples");
  add_common(reproduce, cfg);

  auto* optimize = app.add_subcommand("optimize", "Optimize block orderings");
  add_common(optimize, cfg);

  auto* explore = app.add_subcommand("explore", "Tabulate the critical-point functional");
  add_common(explore, cfg);
  explore->add_option("--alphas", cfg.alphas, "alpha grid")->delimiter(',');
  explore->add_option("--betas", cfg.betas, "beta grid")->delimiter(',');
  explore->add_option("--hs", cfg.hs, "h grid")->delimiter(',');
  explore->add_option("--dir", cfg.direction, "direction x,y,w,z")->delimiter(',');

  auto* fuzz = app.add_subcommand("fuzz", "Seeded random search for violations");
  add_common(fuzz, cfg);
  fuzz->add_option("--checker", cfg.checker, "Checker to fuzz (default theorem1)");
  fuzz->add_option("--family", cfg.family, "general, psd or boundary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate(cfg);
    Outcome outcome;
    if (*verify) {
      outcome = cmd_verify(cfg);
    } else if (*reproduce) {
      outcome = cmd_reproduce(cfg);
    } else if (*optimize) {
      outcome = cmd_optimize(cfg);
    } else if (*explore) {
      outcome = cmd_explore(cfg);
    } else {
      outcome = cmd_fuzz(cfg);
    }
    emit(outcome, cfg, out);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace hanner::cli
