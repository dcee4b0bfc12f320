#include "semrerank/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "semrerank/errors.hpp"

namespace semrerank {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot open ") + what + " file: " + path.string());
  return in;
}

// Calls fn(json, line_number) for every non-blank line; wraps any failure in
// a DataError carrying source:line.
template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError(source + ":" + std::to_string(number) + ": " + e.what());
    } catch (const SyntaxError& e) {
      throw DataError(source + ":" + std::to_string(number) + ": syntax error: " + e.what());
    } catch (const Error& e) {
      throw DataError(source + ":" + std::to_string(number) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw DataError(source + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

const json& field(const json& record, const char* key) {
  if (!record.is_object() || !record.contains(key)) {
    throw DataError(std::string("missing field \"") + key + "\"");
  }
  return record.at(key);
}

std::string string_field(const json& record, const char* key) {
  const auto& value = field(record, key);
  if (!value.is_string()) throw DataError(std::string("field \"") + key + "\" must be a string");
  return value.get<std::string>();
}

const DatasetExample& example_for(const Dataset& dataset, const std::string& id) {
  const auto* example = dataset.find(id);
  if (example == nullptr) throw DataError("id " + id + " is not in the dataset");
  return *example;
}

void write_line(std::ostream& out, const ordered_json& record) {
  out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

}  // namespace

Dataset read_dataset(std::istream& in, const std::string& source) {
  std::vector<DatasetExample> examples;
  for_each_record(in, source, [&](const json& record) {
    const auto formalism = parse_formalism(string_field(record, "formalism"));
    Utterance utterance{string_field(record, "id"), string_field(record, "utterance"),
                        string_field(record, "domain")};
    examples.push_back({std::move(utterance), parse(string_field(record, "gold_lf"), formalism)});
  });
  try {
    return Dataset(std::move(examples));
  } catch (const DataError& e) {
    throw DataError(source + ": " + e.what());
  }
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto in = open_input(path, "dataset");
  return read_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (const auto& example : dataset) {
    ordered_json record;
    record["id"] = example.id();
    record["utterance"] = example.utterance.text;
    record["gold_lf"] = serialize(example.gold_lf);
    record["domain"] = example.domain();
    record["formalism"] = std::string(to_string(example.gold_lf.formalism()));
    write_line(out, record);
  }
}

BeamSet read_beams(std::istream& in, const std::string& source, const Dataset& dataset) {
  BeamSet beams;
  for_each_record(in, source, [&](const json& record) {
    const auto id = string_field(record, "id");
    const auto* example = dataset.find(id);
    if (example == nullptr) return;
    const auto& list = field(record, "candidates");
    if (!list.is_array()) throw DataError("\"candidates\" must be an array");
    std::vector<BeamCandidate> candidates;
    for (const auto& item : list) {
      const auto& rank = field(item, "rank");
      if (!rank.is_number_integer()) throw DataError("candidate rank must be an integer");
      std::optional<double> score;
      if (item.contains("score") && !item.at("score").is_null()) {
        if (!item.at("score").is_number()) throw DataError("candidate score must be a number");
        score = item.at("score").get<double>();
      }
      candidates.push_back({parse(string_field(item, "lf"), example->gold_lf.formalism()),
                            rank.get<int>(), score});
    }
    if (!beams.emplace(id, Beam(std::move(candidates))).second) {
      throw DataError("duplicate beam for id " + id);
    }
  });
  return beams;
}

BeamSet load_beams(const std::filesystem::path& path, const Dataset& dataset) {
  auto in = open_input(path, "beam");
  return read_beams(in, path.string(), dataset);
}

void write_beams(std::ostream& out, const Dataset& dataset, const BeamSet& beams) {
  for (const auto& example : dataset) {
    auto it = beams.find(example.id());
    if (it == beams.end()) continue;
    ordered_json candidates = ordered_json::array();
    for (const auto& candidate : it->second) {
      ordered_json item;
      item["lf"] = serialize(candidate.lf);
      item["rank"] = candidate.rank;
      if (candidate.generator_score) item["score"] = *candidate.generator_score;
      candidates.push_back(std::move(item));
    }
    ordered_json record;
    record["id"] = example.id();
    record["candidates"] = std::move(candidates);
    write_line(out, record);
  }
}

void write_results(std::ostream& out, std::span<const RerankResult> results) {
  for (const auto& result : results) {
    ordered_json scores = ordered_json::array();
    for (const auto& s : result.scores) {
      if (s.score) {
        scores.push_back(s.score->value());
      } else {
        scores.push_back(std::string(kExcludedMarker));
      }
    }
    ordered_json record;
    record["id"] = result.id;
    record["chosen_lf"] = serialize(result.chosen);
    record["chosen_rank"] = result.chosen_rank;
    record["reranked"] = result.reranked;
    record["fallback_reason"] =
        result.fallback_reason ? ordered_json(std::string(to_string(*result.fallback_reason))) : ordered_json(nullptr);
    record["scores"] = std::move(scores);
    write_line(out, record);
  }
}

std::vector<RerankResult> read_results(std::istream& in, const std::string& source, const Dataset& dataset) {
  std::vector<RerankResult> results;
  for_each_record(in, source, [&](const json& record) {
    const auto id = string_field(record, "id");
    const auto& example = example_for(dataset, id);
    const auto& reranked = field(record, "reranked");
    if (!reranked.is_boolean()) throw DataError("\"reranked\" must be a boolean");
    RerankResult result{id, parse(string_field(record, "chosen_lf"), example.gold_lf.formalism()), 1,
                        reranked.get<bool>(), {}, std::nullopt};
    if (record.contains("chosen_rank") && record.at("chosen_rank").is_number_integer()) {
      result.chosen_rank = record.at("chosen_rank").get<int>();
    }
    if (record.contains("fallback_reason") && !record.at("fallback_reason").is_null()) {
      result.fallback_reason = parse_fallback_reason(string_field(record, "fallback_reason"));
    }
    if (record.contains("scores")) {
      const auto& scores = record.at("scores");
      if (!scores.is_array()) throw DataError("\"scores\" must be an array");
      int rank = 1;
      for (const auto& s : scores) {
        if (s.is_number()) {
          result.scores.push_back({rank, Score(s.get<double>())});
        } else if (s.is_string() && s.get<std::string>() == kExcludedMarker) {
          result.scores.push_back({rank, std::nullopt});
        } else {
          throw DataError("bad score entry " + s.dump());
        }
        ++rank;
      }
    }
    results.push_back(std::move(result));
  });
  return results;
}

std::vector<RerankResult> load_results(const std::filesystem::path& path, const Dataset& dataset) {
  auto in = open_input(path, "results");
  return read_results(in, path.string(), dataset);
}

void write_pairs(std::ostream& out, std::span<const PairExample> pairs) {
  for (const auto& pair : pairs) {
    ordered_json record;
    record["text_a"] = pair.text_a;
    record["text_b"] = pair.text_b;
    record["label"] = pair.label;
    record["source"] = std::string(to_string(pair.source));
    write_line(out, record);
  }
}

std::vector<PairExample> read_pairs(std::istream& in, const std::string& source) {
  std::vector<PairExample> pairs;
  for_each_record(in, source, [&](const json& record) {
    const auto& label = field(record, "label");
    if (!label.is_number_integer() || (label.get<int>() != 0 && label.get<int>() != 1)) {
      throw DataError("\"label\" must be 0 or 1");
    }
    PairSource origin = label.get<int>() == 1 ? PairSource::gold_positive : PairSource::beam_negative;
    if (record.contains("source")) origin = parse_pair_source(string_field(record, "source"));
    pairs.push_back({string_field(record, "text_a"), string_field(record, "text_b"), label.get<int>(), origin});
  });
  return pairs;
}

std::vector<PairExample> load_pairs(const std::filesystem::path& path) {
  auto in = open_input(path, "pairs");
  return read_pairs(in, path.string());
}

void write_processed(std::ostream& out, const std::string& example_id,
                     std::span<const ProcessedCandidate> candidates) {
  for (const auto& candidate : candidates) {
    ordered_json record;
    record["candidate_id"] = example_id + "#" + std::to_string(candidate.rank);
    record["method"] = std::string(to_string(candidate.method));
    record["text"] = candidate.text ? *candidate.text : std::string(kExcludedMarker);
    write_line(out, record);
  }
}

}  // namespace semrerank
