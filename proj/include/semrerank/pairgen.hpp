#pragma once

// Labeled sentence pairs for training the critic: the utterance with its
// processed gold form (label 1), the utterance with each incorrect beam
// candidate (label 0), and every pair of distinct beam candidates (label 0).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semrerank/data.hpp"
#include "semrerank/preprocess.hpp"

namespace semrerank {

enum class PairSource { gold_positive, beam_negative, beam_beam_negative };

std::string_view to_string(PairSource source);
PairSource parse_pair_source(std::string_view name);

struct PairExample {
  std::string text_a;
  std::string text_b;
  int label = 0;
  PairSource source = PairSource::beam_negative;

  friend bool operator==(const PairExample&, const PairExample&) = default;
};

struct PairGenOptions {
  // Pair the gold-equivalent candidate with the other candidates as
  // beam-beam negatives. On by default; off drops those pairs.
  bool gold_in_beam_pairs = true;
  // Emit beam-beam negatives at all. Overlap-feature critics cannot use
  // them: near-identical candidate renderings labelled 0 teach such a model
  // that overlap means mismatch.
  bool beam_beam_pairs = true;
};

std::vector<PairExample> generate_pairs(const Utterance& utterance, const LfTree& gold,
                                        const Beam& beam, ProcessingMethod method,
                                        const Resources& resources,
                                        const PairGenOptions& options = {});

// Per-example outputs concatenated in dataset order. `jobs` > 1 processes
// examples on worker threads; the output is identical to jobs = 1.
std::vector<PairExample> generate_dataset(const Dataset& dataset, const BeamSet& beams,
                                          ProcessingMethod method, const Resources& resources,
                                          const PairGenOptions& options = {}, unsigned jobs = 1);

// Deterministic Fisher-Yates shuffle driven by mt19937_64.
void shuffle_pairs(std::vector<PairExample>& pairs, std::uint64_t seed);

}  // namespace semrerank
