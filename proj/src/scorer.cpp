#include "semrerank/scorer.hpp"

#include <sstream>

#include "semrerank/errors.hpp"

namespace semrerank {

Score::Score(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << "score " << value << " outside [0, 1]";
    throw ScoreRangeError(msg.str());
  }
}

std::vector<Score> Scorer::score_batch(std::span<const TextPair> pairs) const {
  const auto raw = raw_scores(pairs);
  if (raw.size() != pairs.size()) {
    throw ScoreRangeError(describe() + " returned " + std::to_string(raw.size()) + " scores for " +
                          std::to_string(pairs.size()) + " pairs");
  }
  std::vector<Score> out;
  out.reserve(raw.size());
  for (double value : raw) out.emplace_back(value);
  return out;
}

std::string ConstantScorer::describe() const {
  std::ostringstream out;
  out << "constant:" << value_;
  return out.str();
}

std::vector<double> ConstantScorer::raw_scores(std::span<const TextPair> pairs) const {
  return std::vector<double>(pairs.size(), value_);
}

std::vector<double> OracleScorer::raw_scores(std::span<const TextPair> pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(pair.second == gold_ ? 1.0 : 0.0);
  return out;
}

double pair_accuracy(const Scorer& scorer, std::span<const PairExample> pairs) {
  if (pairs.empty()) return 0.0;
  std::vector<TextPair> texts;
  texts.reserve(pairs.size());
  for (const auto& pair : pairs) texts.emplace_back(pair.text_a, pair.text_b);
  const auto scores = scorer.score_batch(texts);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int predicted = scores[i].value() > 0.5 ? 1 : 0;
    if (predicted == pairs[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

}  // namespace semrerank
