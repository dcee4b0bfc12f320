#pragma once

// JSON Lines readers and writers.
//
//   dataset:   {"id", "utterance", "gold_lf", "domain", "formalism"}
//   beams:     {"id", "candidates": [{"lf", "rank", "score"?}, ...]}
//   results:   {"id", "chosen_lf", "chosen_rank", "reranked", "fallback_reason", "scores"}
//   pairs:     {"text_a", "text_b", "label", "source"}
//   processed: {"candidate_id", "method", "text"}   ("EXCLUDED" for no text)
//
// Readers throw DataError naming the file and line.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semrerank/data.hpp"
#include "semrerank/pairgen.hpp"
#include "semrerank/rerank.hpp"

namespace semrerank {

inline constexpr std::string_view kExcludedMarker = "EXCLUDED";

Dataset read_dataset(std::istream& in, const std::string& source);
Dataset load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const Dataset& dataset);

// Beam forms are parsed with the formalism of the matching dataset example;
// ids absent from the dataset are ignored.
BeamSet read_beams(std::istream& in, const std::string& source, const Dataset& dataset);
BeamSet load_beams(const std::filesystem::path& path, const Dataset& dataset);
void write_beams(std::ostream& out, const Dataset& dataset, const BeamSet& beams);

void write_results(std::ostream& out, std::span<const RerankResult> results);
std::vector<RerankResult> read_results(std::istream& in, const std::string& source, const Dataset& dataset);
std::vector<RerankResult> load_results(const std::filesystem::path& path, const Dataset& dataset);

void write_pairs(std::ostream& out, std::span<const PairExample> pairs);
std::vector<PairExample> read_pairs(std::istream& in, const std::string& source);
std::vector<PairExample> load_pairs(const std::filesystem::path& path);

void write_processed(std::ostream& out, const std::string& example_id,
                     std::span<const ProcessedCandidate> candidates);

}  // namespace semrerank
