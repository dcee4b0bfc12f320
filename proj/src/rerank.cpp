#include "semrerank/rerank.hpp"

#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "semrerank/errors.hpp"

namespace semrerank {

std::string_view to_string(RerankRule rule) {
  switch (rule) {
    case RerankRule::always:
      return "always";
    case RerankRule::th1:
      return "th1";
    case RerankRule::th2:
      return "th2";
    case RerankRule::th3:
      return "th3";
  }
  return "unknown";
}

RerankRule parse_rule(std::string_view name) {
  if (name == "always" || name == "ALWAYS") return RerankRule::always;
  if (name == "th1" || name == "TH1") return RerankRule::th1;
  if (name == "th2" || name == "TH2") return RerankRule::th2;
  if (name == "th3" || name == "TH3") return RerankRule::th3;
  throw std::invalid_argument("unknown rerank rule '" + std::string(name) + "'");
}

std::string_view to_string(FallbackReason reason) {
  return reason == FallbackReason::all_excluded ? "all_excluded" : "rule_not_met";
}

FallbackReason parse_fallback_reason(std::string_view name) {
  if (name == "all_excluded") return FallbackReason::all_excluded;
  if (name == "rule_not_met") return FallbackReason::rule_not_met;
  throw std::invalid_argument("unknown fallback reason '" + std::string(name) + "'");
}

void RerankPolicy::validate() const {
  if (!(score_floor > 0.0 && score_floor < 1.0)) {
    throw std::invalid_argument("score floor must lie in (0, 1)");
  }
  if (!(margin >= 0.0)) throw std::invalid_argument("margin must be >= 0");
}

bool rule_permits(std::span<const double> scores, const RerankPolicy& policy) {
  if (scores.empty()) return false;
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  for (double s : scores) {
    if (s > best) {
      second = best;
      best = s;
    } else if (s > second) {
      second = s;
    }
  }
  const bool above_floor = best > policy.score_floor;
  const bool clear_margin = best - second > policy.margin;
  switch (policy.rule) {
    case RerankRule::always:
      return true;
    case RerankRule::th1:
      return above_floor;
    case RerankRule::th2:
      return clear_margin;
    case RerankRule::th3:
      return above_floor && clear_margin;
  }
  return false;
}

RerankResult rerank_one(const Utterance& utterance, const Beam& beam, const RerankPolicy& policy,
                        const Scorer& scorer, const Resources& resources) {
  policy.validate();
  if (beam.empty()) throw EmptyBeam("example " + utterance.id + " has an empty beam");

  const auto processed = process(beam, policy.method, resources);
  std::vector<TextPair> pairs;
  std::vector<std::size_t> scored_index;
  for (std::size_t i = 0; i < processed.size(); ++i) {
    if (processed[i].excluded()) continue;
    pairs.emplace_back(utterance.text, *processed[i].text);
    scored_index.push_back(i);
  }

  RerankResult result{utterance.id, beam.top().lf, beam.top().rank, false, {}, std::nullopt};
  result.scores.reserve(beam.size());
  for (const auto& candidate : beam) result.scores.push_back({candidate.rank, std::nullopt});

  if (pairs.empty()) {
    result.fallback_reason = FallbackReason::all_excluded;
    return result;
  }

  const auto scores = scorer.score_batch(pairs);
  std::vector<double> values;
  values.reserve(scores.size());
  for (std::size_t k = 0; k < scores.size(); ++k) {
    result.scores[scored_index[k]].score = scores[k];
    values.push_back(scores[k].value());
  }

  if (!rule_permits(values, policy)) {
    result.fallback_reason = FallbackReason::rule_not_met;
    return result;
  }

  // Highest score; candidates are in rank order, so a strict comparison
  // leaves ties with the better-ranked candidate.
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  const auto& chosen = beam.candidates()[scored_index[best]];
  result.chosen = chosen.lf;
  result.chosen_rank = chosen.rank;
  result.reranked = true;
  return result;
}

ScorerProvider fixed_scorer(std::shared_ptr<const Scorer> scorer) {
  if (!scorer) throw std::invalid_argument("fixed_scorer needs a scorer");
  return [scorer = std::move(scorer)](const DatasetExample&) { return scorer; };
}

ScorerProvider oracle_scorers(ProcessingMethod method, const Resources& resources) {
  require_resources(method, resources);
  return [method, resources](const DatasetExample& example) -> std::shared_ptr<const Scorer> {
    auto gold = process_one(example.gold_lf, method, resources);
    if (!gold) return std::make_shared<ConstantScorer>(0.0);
    return std::make_shared<OracleScorer>(std::move(*gold));
  };
}

std::vector<RerankResult> rerank_dataset(const Dataset& dataset, const BeamSet& beams,
                                         const RerankPolicy& policy, const ScorerProvider& scorers,
                                         const Resources& resources, unsigned jobs) {
  policy.validate();
  require_resources(policy.method, resources);
  for (const auto& example : dataset) beam_for(beams, example.id());

  std::vector<std::optional<RerankResult>> slots(dataset.size());
  detail::parallel_for(dataset.size(), jobs, [&](std::size_t i) {
    const auto& example = dataset[i];
    const auto scorer = scorers(example);
    slots[i] = rerank_one(example.utterance, beam_for(beams, example.id()), policy, *scorer, resources);
  });

  std::vector<RerankResult> results;
  results.reserve(slots.size());
  for (auto& slot : slots) results.push_back(std::move(*slot));
  return results;
}

std::vector<RerankResult> generator_top1(const Dataset& dataset, const BeamSet& beams) {
  std::vector<RerankResult> results;
  results.reserve(dataset.size());
  for (const auto& example : dataset) {
    const auto& beam = beam_for(beams, example.id());
    if (beam.empty()) throw EmptyBeam("example " + example.id() + " has an empty beam");
    results.push_back({example.id(), beam.top().lf, beam.top().rank, false, {}, std::nullopt});
  }
  return results;
}

}  // namespace semrerank
