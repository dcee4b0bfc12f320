#pragma once

// Accuracy, top-k oracle and per-domain reports.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semrerank/data.hpp"
#include "semrerank/rerank.hpp"

namespace semrerank {

// Correctness is exact match on normal forms for every formalism.
inline constexpr std::string_view kMetricLabel = "normalized_exact_match";

// Fraction of examples whose chosen form is lf_equal to the gold. Results are
// matched by id, so their order does not matter. Throws MissingResult.
double top1_accuracy(std::span<const RerankResult> results, const Dataset& dataset);

// Fraction of examples with some candidate of rank <= k lf_equal to the
// gold. Throws std::invalid_argument for k < 1 and MissingBeam.
double oracle_at_k(const BeamSet& beams, const Dataset& dataset, int k);

struct DomainStats {
  std::size_t examples = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  std::string metric{kMetricLabel};
  std::map<std::string, DomainStats> domains;
  // Column order: expected domains first, then the rest alphabetically.
  std::vector<std::string> domain_order;
  double macro_accuracy = 0.0;  // unweighted mean over non-empty domains
  double micro_accuracy = 0.0;  // over all examples
  std::map<int, double> oracle;  // k -> oracle@k
  std::size_t examples = 0;
  std::size_t correct = 0;
  std::size_t reranked = 0;
  std::vector<std::string> empty_domains;  // expected but absent; left out of the macro
};

struct ReportOptions {
  std::vector<int> ks{1, 10, 25};
  // Domains that should appear (e.g. the eight Overnight domains). Missing
  // ones are reported as empty and skipped in the macro average.
  std::vector<std::string> expected_domains;
};

EvalReport make_report(const Dataset& dataset, const BeamSet& beams,
                       std::span<const RerankResult> results, const ReportOptions& options = {});

nlohmann::json report_to_json(const EvalReport& report);

// An aligned text table, one row per labeled report, one column per domain
// plus the macro "Avg." and the micro accuracy.
std::string format_table(std::span<const std::pair<std::string, EvalReport>> rows);
nlohmann::json table_to_json(std::span<const std::pair<std::string, EvalReport>> rows);

}  // namespace semrerank
