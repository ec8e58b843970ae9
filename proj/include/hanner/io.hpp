// JSON instance schemas and report serialization.
//
//   DiagBlockMatrix: {"n": 2, "blocks": {"a": [[re, im], ...], "b": ..., "c": ..., "d": ...}}
//   PsdDiagBlock:    {"n": 2, "a": [real, ...], "b": [real, ...], "c": [[re, im], ...]}

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hanner/analysis.hpp"
#include "hanner/block_model.hpp"
#include "hanner/counterexamples.hpp"
#include "hanner/inequalities.hpp"
#include "hanner/random_search.hpp"
#include "hanner/rearrangement.hpp"

namespace hanner::io {

using nlohmann::json;

/// Parse or schema failure; the message names the offending field (and the
/// line/column for malformed JSON).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using InstanceFile = std::variant<DiagBlockMatrix, PsdDiagBlock>;

InstanceFile parse_instance(const std::string& text);
InstanceFile read_instance_file(const std::string& path);

json to_json(const DiagBlockMatrix& bm);
json to_json(const PsdDiagBlock& pb);
json to_json(const Lemma2State& s);
json to_json(const Instance& instance);
json to_json(const InequalityReport& report);
json to_json(const CrossoverResult& result);
json to_json(const CounterexampleAnalysis& analysis);
json to_json(const Violation& violation);
json to_json(const OrderingAssignment& assignment);
json to_json(const SwapSortResult& result);

DiagBlockMatrix diag_block_from_json(const json& j);
PsdDiagBlock psd_block_from_json(const json& j);
InequalityReport report_from_json(const json& j);

/// name,p,chain0,chain1,chain2,chain3,margin,holds
void write_reports_csv(std::ostream& out, const std::vector<InequalityReport>& reports);
/// sigma_b,sigma_c,sigma_d,value
void write_landscape_csv(std::ostream& out, const std::vector<OrderingAssignment>& landscape);
/// alpha,beta,h,p,F,dF_dh,det_residual
void write_explorer_csv(std::ostream& out, const std::vector<analysis::ExplorerRow>& rows);

/// Round-trip decimal form (17 significant digits).
std::string format_double(double x);

}  // namespace hanner::io
