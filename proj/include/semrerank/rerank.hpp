#pragma once

// Picking the output logical form from a beam with critic scores and the
// threshold rules that decide whether to trust the critic at all.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semrerank/data.hpp"
#include "semrerank/preprocess.hpp"
#include "semrerank/scorer.hpp"

namespace semrerank {

// ALWAYS: always rerank. TH1: some score > floor. TH2: best - second best >
// margin. TH3: TH1 and TH2.
enum class RerankRule { always, th1, th2, th3 };

std::string_view to_string(RerankRule rule);
RerankRule parse_rule(std::string_view name);

struct RerankPolicy {
  ProcessingMethod method = ProcessingMethod::raw;
  RerankRule rule = RerankRule::always;
  double score_floor = 0.5;
  double margin = 0.001;

  // Throws std::invalid_argument unless floor in (0, 1) and margin >= 0.
  void validate() const;
};

enum class FallbackReason { all_excluded, rule_not_met };

std::string_view to_string(FallbackReason reason);
FallbackReason parse_fallback_reason(std::string_view name);

struct CandidateScore {
  int rank = 0;
  std::optional<Score> score;  // nullopt: EXCLUDED
};

struct RerankResult {
  std::string id;
  LfTree chosen;
  int chosen_rank = 1;
  bool reranked = false;
  std::vector<CandidateScore> scores;
  std::optional<FallbackReason> fallback_reason;
};

// Whether the rule lets the critic override the generator, given the scores
// of the candidates that were not excluded. Compared at full precision.
bool rule_permits(std::span<const double> scores, const RerankPolicy& policy);

RerankResult rerank_one(const Utterance& utterance, const Beam& beam, const RerankPolicy& policy,
                        const Scorer& scorer, const Resources& resources);

// Supplies the scorer for one example; lets the oracle see that example's
// gold while fixed scorers ignore the argument.
using ScorerProvider = std::function<std::shared_ptr<const Scorer>(const DatasetExample&)>;

ScorerProvider fixed_scorer(std::shared_ptr<const Scorer> scorer);
// Oracle keyed on the processed gold of each example. If the gold itself is
// EXCLUDED every candidate scores 0.
ScorerProvider oracle_scorers(ProcessingMethod method, const Resources& resources);

// One result per example in dataset order; `jobs` bounds worker threads.
std::vector<RerankResult> rerank_dataset(const Dataset& dataset, const BeamSet& beams,
                                         const RerankPolicy& policy, const ScorerProvider& scorers,
                                         const Resources& resources, unsigned jobs = 1);

// The generator's own output: rank 1 of every beam, no scores.
std::vector<RerankResult> generator_top1(const Dataset& dataset, const BeamSet& beams);

}  // namespace semrerank
