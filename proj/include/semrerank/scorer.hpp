#pragma once

// The critic contract: sentence pairs in, similarity scores in [0, 1] out.

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semrerank/pairgen.hpp"

namespace semrerank {

// A similarity score. Construction rejects values outside [0, 1] (and NaN)
// with ScoreRangeError; nothing is ever clamped.
class Score {
 public:
  explicit Score(double value);
  double value() const noexcept { return value_; }
  friend auto operator<=>(const Score&, const Score&) = default;

 private:
  double value_;
};

using TextPair = std::pair<std::string, std::string>;

class Scorer {
 public:
  virtual ~Scorer() = default;

  // One score per pair, in order. Implementations must be safe to call
  // concurrently.
  std::vector<Score> score_batch(std::span<const TextPair> pairs) const;
  virtual std::string describe() const = 0;

 protected:
  virtual std::vector<double> raw_scores(std::span<const TextPair> pairs) const = 0;
};

class ConstantScorer final : public Scorer {
 public:
  explicit ConstantScorer(double value) : value_(value) {}
  std::string describe() const override;

 protected:
  std::vector<double> raw_scores(std::span<const TextPair> pairs) const override;

 private:
  double value_;
};

// 1.0 when the second text equals the gold processed text, else 0.0.
class OracleScorer final : public Scorer {
 public:
  explicit OracleScorer(std::string gold_text) : gold_(std::move(gold_text)) {}
  std::string describe() const override { return "oracle"; }

 protected:
  std::vector<double> raw_scores(std::span<const TextPair> pairs) const override;

 private:
  std::string gold_;
};

// ---------------------------------------------------------------------------
// Baseline: logistic regression over four symmetric overlap features.

inline constexpr std::size_t kFeatureCount = 4;
using FeatureVector = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "token_jaccard", "char3_jaccard", "length_ratio", "shared_rare_fraction"};

struct BaselineConfig {
  std::uint64_t seed = 13;
  int epochs = 400;
  double learning_rate = 1.0;
  // A token is "common" when it occurs in more than this fraction of the
  // training texts; every other token counts as rare.
  double common_df_fraction = 0.05;
  // Reweight classes so each contributes half of the loss.
  bool balance_classes = true;

  friend bool operator==(const BaselineConfig&, const BaselineConfig&) = default;
};

struct BaselineModel {
  static constexpr int kFormatVersion = 1;

  BaselineConfig config;
  FeatureVector weights{};
  double bias = 0.0;
  std::vector<std::string> common_tokens;  // sorted

  bool is_common(std::string_view token) const;
  friend bool operator==(const BaselineModel&, const BaselineModel&) = default;
};

// Lowercased tokens, split on whitespace and ASCII punctuation.
std::vector<std::string> feature_tokens(std::string_view text);
FeatureVector pair_features(std::string_view a, std::string_view b, const BaselineModel& model);
double baseline_probability(const FeatureVector& features, const BaselineModel& model);

// Full-batch gradient descent on (optionally class-balanced) log-loss.
// Deterministic for a fixed config. Throws DegenerateCorpus unless both
// labels occur.
BaselineModel train_baseline(std::span<const PairExample> corpus, const BaselineConfig& config = {});

// Versioned text format; doubles are stored as hex floats so a reload is
// bit-exact.
std::string format_model(const BaselineModel& model);
BaselineModel parse_model(std::string_view text);
void save_model(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel load_model(const std::filesystem::path& path);

class BaselineScorer final : public Scorer {
 public:
  explicit BaselineScorer(BaselineModel model) : model_(std::move(model)) {}
  const BaselineModel& model() const noexcept { return model_; }
  std::string describe() const override { return "baseline"; }

 protected:
  std::vector<double> raw_scores(std::span<const TextPair> pairs) const override;

 private:
  BaselineModel model_;
};

// Fraction of pairs whose thresholded score (> 0.5) matches the label.
double pair_accuracy(const Scorer& scorer, std::span<const PairExample> pairs);

// ---------------------------------------------------------------------------
// Remote critic over HTTP: POST <base>/score with {"pairs": [[a, b], ...]},
// expecting {"scores": [s, ...]} of the same length with every s in [0, 1].

struct RemoteScorerOptions {
  std::size_t max_batch = 64;
  std::chrono::milliseconds timeout{30000};
};

class RemoteScorer final : public Scorer {
 public:
  // url: http://host[:port][/prefix]
  explicit RemoteScorer(std::string url, RemoteScorerOptions options = {});
  std::string describe() const override { return "remote:" + url_; }

  const std::string& host() const noexcept { return host_; }
  int port() const noexcept { return port_; }
  const std::string& score_path() const noexcept { return path_; }

 protected:
  std::vector<double> raw_scores(std::span<const TextPair> pairs) const override;

 private:
  std::vector<double> request(std::span<const TextPair> pairs) const;

  std::string url_;
  std::string host_;
  int port_ = 80;
  std::string path_;
  RemoteScorerOptions options_;
};

// Request body and response parsing, shared with tests and the service side.
std::string encode_score_request(std::span<const TextPair> pairs);
// Throws RemoteProtocolError on malformed bodies, wrong lengths or
// out-of-range scores.
std::vector<double> decode_score_response(std::string_view body, std::size_t expected);

}  // namespace semrerank
