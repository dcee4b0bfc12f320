#pragma once

// Synthetic corpora for the demo pipeline and for tests: Overnight-style
// filter queries over eight domains with generator-like beams, the demo
// template grammar and entity lexicon that cover them, and a separable
// sentence-pair corpus for the baseline critic.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semrerank/data.hpp"
#include "semrerank/pairgen.hpp"

namespace semrerank {

struct SyntheticConfig {
  std::size_t examples = 200;
  std::size_t beam_size = 10;
  // Exact fractions, rounded to whole examples: the gold sits somewhere in
  // the beam for `gold_in_beam`, at rank 1 for `top1_correct`.
  double gold_in_beam = 0.95;
  double top1_correct = 0.70;
  std::uint64_t seed = 2020;
  std::string id_prefix = "ex";
};

struct SyntheticCorpus {
  Dataset dataset;
  BeamSet beams;
};

// Throws std::invalid_argument for impossible configurations.
SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config);

// The eight Overnight domain names, in the usual column order.
const std::vector<std::string>& overnight_domains();

const std::string& demo_grammar_text();
const std::string& demo_lexicon_text();

// Balanced pairs of pseudo-word sentences: positives keep at least 60% of
// the first sentence's tokens, negatives at most 20%.
std::vector<PairExample> make_separable_pairs(std::size_t count, std::uint64_t seed);

}  // namespace semrerank
