#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "semrerank/errors.hpp"
#include "semrerank/scorer.hpp"

namespace semrerank {
namespace {

constexpr std::string_view kModelMagic = "semrerank-baseline-model";

bool separator(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  return std::isspace(u) != 0 || std::ispunct(u) != 0;
}

template <typename Set>
double jaccard(const Set& a, const Set& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t shared = 0;
  for (const auto& item : a) shared += b.count(item);
  const std::size_t total = a.size() + b.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(total);
}

std::set<std::string> char_trigrams(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  std::set<std::string> grams;
  if (joined.empty()) return grams;
  if (joined.size() < 3) {
    grams.insert(joined);
    return grams;
  }
  for (std::size_t i = 0; i + 3 <= joined.size(); ++i) grams.insert(joined.substr(i, 3));
  return grams;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::string hex(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%a", value);
  return buffer;
}

double parse_double(const std::string& text, const char* field) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw DataError(std::string("model file: bad value for ") + field + ": " + text);
  }
  return value;
}

}  // namespace

std::vector<std::string> feature_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (separator(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool BaselineModel::is_common(std::string_view token) const {
  return std::binary_search(common_tokens.begin(), common_tokens.end(), token,
                            [](std::string_view a, std::string_view b) { return a < b; });
}

FeatureVector pair_features(std::string_view a, std::string_view b, const BaselineModel& model) {
  const auto tokens_a = feature_tokens(a);
  const auto tokens_b = feature_tokens(b);
  const std::set<std::string> set_a(tokens_a.begin(), tokens_a.end());
  const std::set<std::string> set_b(tokens_b.begin(), tokens_b.end());

  FeatureVector f{};
  f[0] = jaccard(set_a, set_b);
  f[1] = jaccard(char_trigrams(tokens_a), char_trigrams(tokens_b));
  const auto shorter = std::min(tokens_a.size(), tokens_b.size());
  const auto longer = std::max(tokens_a.size(), tokens_b.size());
  f[2] = longer == 0 ? 1.0 : static_cast<double>(shorter) / static_cast<double>(longer);

  std::set<std::string> rare_a;
  std::set<std::string> rare_b;
  for (const auto& t : set_a) {
    if (!model.is_common(t)) rare_a.insert(t);
  }
  for (const auto& t : set_b) {
    if (!model.is_common(t)) rare_b.insert(t);
  }
  if (rare_a.empty() && rare_b.empty()) {
    f[3] = set_a == set_b ? 1.0 : 0.0;
  } else {
    f[3] = jaccard(rare_a, rare_b);
  }
  return f;
}

double baseline_probability(const FeatureVector& features, const BaselineModel& model) {
  double z = model.bias;
  for (std::size_t i = 0; i < kFeatureCount; ++i) z += model.weights[i] * features[i];
  return sigmoid(z);
}

BaselineModel train_baseline(std::span<const PairExample> corpus, const BaselineConfig& config) {
  std::size_t positives = 0;
  for (const auto& pair : corpus) positives += pair.label == 1 ? 1 : 0;
  if (positives == 0 || positives == corpus.size()) {
    throw DegenerateCorpus("training corpus needs both labels; got " + std::to_string(positives) +
                           " positives out of " + std::to_string(corpus.size()));
  }
  if (config.epochs < 0 || !(config.learning_rate > 0)) {
    throw std::invalid_argument("epochs must be >= 0 and learning rate > 0");
  }

  BaselineModel model;
  model.config = config;

  // Document frequency over distinct texts.
  std::set<std::string_view> texts;
  for (const auto& pair : corpus) {
    texts.insert(pair.text_a);
    texts.insert(pair.text_b);
  }
  std::map<std::string, std::size_t> df;
  for (auto text : texts) {
    const auto tokens = feature_tokens(text);
    for (const auto& t : std::set<std::string>(tokens.begin(), tokens.end())) ++df[t];
  }
  const double cutoff = config.common_df_fraction * static_cast<double>(texts.size());
  for (const auto& [token, count] : df) {
    if (static_cast<double>(count) > cutoff) model.common_tokens.push_back(token);
  }

  std::vector<FeatureVector> features;
  features.reserve(corpus.size());
  for (const auto& pair : corpus) features.push_back(pair_features(pair.text_a, pair.text_b, model));

  const auto negatives = corpus.size() - positives;
  const double total = static_cast<double>(corpus.size());
  const double w_pos = config.balance_classes ? total / (2.0 * static_cast<double>(positives)) : 1.0;
  const double w_neg = config.balance_classes ? total / (2.0 * static_cast<double>(negatives)) : 1.0;

  std::mt19937_64 rng(config.seed);
  for (auto& w : model.weights) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    w = (unit - 0.5) * 0.02;
  }
  model.bias = 0.0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    FeatureVector grad{};
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const double y = corpus[i].label == 1 ? 1.0 : 0.0;
      const double weight = corpus[i].label == 1 ? w_pos : w_neg;
      const double residual = (baseline_probability(features[i], model) - y) * weight;
      for (std::size_t k = 0; k < kFeatureCount; ++k) grad[k] += residual * features[i][k];
      grad_bias += residual;
    }
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      model.weights[k] -= config.learning_rate * grad[k] / total;
    }
    model.bias -= config.learning_rate * grad_bias / total;
  }
  return model;
}

std::vector<double> BaselineScorer::raw_scores(std::span<const TextPair> pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(baseline_probability(pair_features(a, b, model_), model_));
  return out;
}

std::string format_model(const BaselineModel& model) {
  std::ostringstream out;
  out << kModelMagic << ' ' << BaselineModel::kFormatVersion << '\n';
  out << "seed " << model.config.seed << '\n';
  out << "epochs " << model.config.epochs << '\n';
  out << "learning_rate " << hex(model.config.learning_rate) << '\n';
  out << "common_df_fraction " << hex(model.config.common_df_fraction) << '\n';
  out << "balance_classes " << (model.config.balance_classes ? 1 : 0) << '\n';
  out << "features";
  for (auto name : kFeatureNames) out << ' ' << name;
  out << '\n';
  out << "weights";
  for (double w : model.weights) out << ' ' << hex(w);
  out << '\n';
  out << "bias " << hex(model.bias) << '\n';
  out << "common_tokens " << model.common_tokens.size() << '\n';
  for (const auto& token : model.common_tokens) out << token << '\n';
  return out.str();
}

BaselineModel parse_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto expect = [&](const char* key) {
    std::string word;
    if (!(in >> word) || word != key) {
      throw DataError(std::string("model file: expected '") + key + "'");
    }
  };
  auto next = [&](const char* field) {
    std::string word;
    if (!(in >> word)) throw DataError(std::string("model file: missing value for ") + field);
    return word;
  };

  expect(std::string(kModelMagic).c_str());
  const auto version = next("version");
  if (version != std::to_string(BaselineModel::kFormatVersion)) {
    throw DataError("model file: unsupported version " + version);
  }
  BaselineModel model;
  expect("seed");
  model.config.seed = std::stoull(next("seed"));
  expect("epochs");
  model.config.epochs = std::stoi(next("epochs"));
  expect("learning_rate");
  model.config.learning_rate = parse_double(next("learning_rate"), "learning_rate");
  expect("common_df_fraction");
  model.config.common_df_fraction = parse_double(next("common_df_fraction"), "common_df_fraction");
  expect("balance_classes");
  model.config.balance_classes = next("balance_classes") == "1";
  expect("features");
  for (auto name : kFeatureNames) {
    if (next("features") != name) throw DataError("model file: unexpected feature list");
  }
  expect("weights");
  for (auto& w : model.weights) w = parse_double(next("weights"), "weights");
  expect("bias");
  model.bias = parse_double(next("bias"), "bias");
  expect("common_tokens");
  const auto count = std::stoull(next("common_tokens"));
  model.common_tokens.reserve(count);
  for (std::size_t i = 0; i < count; ++i) model.common_tokens.push_back(next("common token"));
  if (!std::is_sorted(model.common_tokens.begin(), model.common_tokens.end())) {
    throw DataError("model file: common tokens are not sorted");
  }
  return model;
}

void save_model(const BaselineModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out << format_model(model);
  if (!out) throw DataError("failed writing model file: " + path.string());
}

BaselineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_model(buffer.str());
  } catch (const std::logic_error& e) {  // stoull / stoi
    throw DataError("model file " + path.string() + ": " + e.what());
  }
}

}  // namespace semrerank
