#include "semrerank/pairgen.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "parallel.hpp"
#include "semrerank/errors.hpp"

namespace semrerank {

std::string_view to_string(PairSource source) {
  switch (source) {
    case PairSource::gold_positive:
      return "gold_positive";
    case PairSource::beam_negative:
      return "beam_negative";
    case PairSource::beam_beam_negative:
      return "beam_beam_negative";
  }
  return "unknown";
}

PairSource parse_pair_source(std::string_view name) {
  if (name == "gold_positive") return PairSource::gold_positive;
  if (name == "beam_negative") return PairSource::beam_negative;
  if (name == "beam_beam_negative") return PairSource::beam_beam_negative;
  throw std::invalid_argument("unknown pair source '" + std::string(name) + "'");
}

namespace {

struct DistinctCandidate {
  std::string text;
  bool is_gold = false;
};

}  // namespace

std::vector<PairExample> generate_pairs(const Utterance& utterance, const LfTree& gold,
                                        const Beam& beam, ProcessingMethod method,
                                        const Resources& resources,
                                        const PairGenOptions& options) {
  if (beam.empty()) throw EmptyBeam("cannot generate pairs for " + utterance.id + ": empty beam");
  require_resources(method, resources);

  const auto gold_text = process_one(gold, method, resources);
  const auto gold_form = normalize(gold);

  // Processed candidates, one per normal form, in rank order. EXCLUDED
  // candidates never take part.
  std::vector<DistinctCandidate> distinct;
  std::set<std::vector<std::string>> seen_forms;
  for (const auto& candidate : beam) {
    auto text = process_one(candidate.lf, method, resources);
    if (!text) continue;
    auto form = normalize(candidate.lf);
    if (!seen_forms.insert(form.tokens).second) continue;
    distinct.push_back({std::move(*text), form.tokens == gold_form.tokens});
  }

  std::vector<PairExample> raw;
  if (gold_text) raw.push_back({utterance.text, *gold_text, 1, PairSource::gold_positive});
  for (const auto& candidate : distinct) {
    if (candidate.is_gold) continue;
    // A wrong candidate rendered exactly like the gold would contradict the
    // positive pair.
    if (gold_text && candidate.text == *gold_text) continue;
    raw.push_back({utterance.text, candidate.text, 0, PairSource::beam_negative});
  }
  for (std::size_t i = 0; options.beam_beam_pairs && i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (!options.gold_in_beam_pairs && (distinct[i].is_gold || distinct[j].is_gold)) continue;
      raw.push_back({distinct[i].text, distinct[j].text, 0, PairSource::beam_beam_negative});
    }
  }

  std::vector<PairExample> out;
  out.reserve(raw.size());
  std::set<std::tuple<std::string, std::string, int>> keys;
  for (auto& pair : raw) {
    if (pair.text_a == pair.text_b) continue;
    auto a = pair.text_a;
    auto b = pair.text_b;
    if (pair.source == PairSource::beam_beam_negative && b < a) std::swap(a, b);
    if (!keys.emplace(std::move(a), std::move(b), pair.label).second) continue;
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<PairExample> generate_dataset(const Dataset& dataset, const BeamSet& beams,
                                          ProcessingMethod method, const Resources& resources,
                                          const PairGenOptions& options, unsigned jobs) {
  require_resources(method, resources);
  for (const auto& example : dataset) beam_for(beams, example.id());

  std::vector<std::vector<PairExample>> per_example(dataset.size());
  detail::parallel_for(dataset.size(), jobs, [&](std::size_t i) {
    const auto& example = dataset[i];
    per_example[i] = generate_pairs(example.utterance, example.gold_lf,
                                    beam_for(beams, example.id()), method, resources, options);
  });

  std::vector<PairExample> corpus;
  for (auto& pairs : per_example) {
    for (auto& pair : pairs) corpus.push_back(std::move(pair));
  }
  return corpus;
}

void shuffle_pairs(std::vector<PairExample>& pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = pairs.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(pairs[i - 1], pairs[j]);
  }
}

}  // namespace semrerank
