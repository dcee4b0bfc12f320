#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semrerank/lf.hpp"

namespace semrerank {

struct Utterance {
  std::string id;
  std::string text;
  std::string domain;
};

struct BeamCandidate {
  LfTree lf;
  int rank = 1;
  std::optional<double> generator_score;
};

// Generator output for one utterance, kept sorted by rank. Ranks must be
// unique and contiguous from 1 (InvalidBeam otherwise). An empty beam is
// representable; operations that need a candidate throw EmptyBeam.
class Beam {
 public:
  Beam() = default;
  explicit Beam(std::vector<BeamCandidate> candidates);

  const std::vector<BeamCandidate>& candidates() const noexcept { return candidates_; }
  std::size_t size() const noexcept { return candidates_.size(); }
  bool empty() const noexcept { return candidates_.empty(); }
  const BeamCandidate& top() const;

  // The first k candidates by rank.
  Beam truncated(std::size_t k) const;

  auto begin() const noexcept { return candidates_.begin(); }
  auto end() const noexcept { return candidates_.end(); }

 private:
  std::vector<BeamCandidate> candidates_;
};

struct DatasetExample {
  Utterance utterance;
  LfTree gold_lf;

  const std::string& id() const noexcept { return utterance.id; }
  const std::string& domain() const noexcept { return utterance.domain; }
};

// Examples in file order; ids unique, utterance texts non-empty.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<DatasetExample> examples);

  const std::vector<DatasetExample>& examples() const noexcept { return examples_; }
  std::size_t size() const noexcept { return examples_.size(); }
  bool empty() const noexcept { return examples_.empty(); }
  const DatasetExample& operator[](std::size_t i) const { return examples_[i]; }
  const DatasetExample* find(const std::string& id) const;

  auto begin() const noexcept { return examples_.begin(); }
  auto end() const noexcept { return examples_.end(); }

 private:
  std::vector<DatasetExample> examples_;
  std::map<std::string, std::size_t> index_;
};

using BeamSet = std::map<std::string, Beam>;

// Throws MissingBeam when the example has no entry.
const Beam& beam_for(const BeamSet& beams, const std::string& id);

}  // namespace semrerank
