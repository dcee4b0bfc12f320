#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "semrerank/errors.hpp"
#include "semrerank/scorer.hpp"
#include "semrerank/synthetic.hpp"

using namespace semrerank;

namespace {

std::vector<double> values(const Scorer& scorer, const std::vector<TextPair>& pairs) {
  std::vector<double> out;
  for (const auto& s : scorer.score_batch(pairs)) out.push_back(s.value());
  return out;
}

// Class-weighted mean log-loss, computed here from the model's probability.
double weighted_loss(const BaselineModel& model, const std::vector<PairExample>& corpus) {
  double positives = 0;
  for (const auto& p : corpus) positives += p.label;
  const double n = static_cast<double>(corpus.size());
  double loss = 0;
  for (const auto& p : corpus) {
    const double prob = baseline_probability(pair_features(p.text_a, p.text_b, model), model);
    const double w = p.label == 1 ? n / (2 * positives) : n / (2 * (n - positives));
    loss -= w * (p.label == 1 ? std::log(prob) : std::log(1 - prob));
  }
  return loss / n;
}

struct Failing final : Scorer {
  std::vector<double> reply;
  std::string describe() const override { return "failing"; }
  std::vector<double> raw_scores(std::span<const TextPair>) const override { return reply; }
};

}  // namespace

TEST_SUITE("contract") {
  TEST_CASE("scores outside [0, 1] are rejected, never clamped") {
    CHECK(Score(0.0).value() == 0.0);
    CHECK(Score(1.0).value() == 1.0);
    CHECK_THROWS_AS(Score(1.0000001), ScoreRangeError);
    CHECK_THROWS_AS(Score(-1e-12), ScoreRangeError);
    CHECK_THROWS_AS(Score(std::numeric_limits<double>::quiet_NaN()), ScoreRangeError);
    CHECK_THROWS_AS(Score(std::numeric_limits<double>::infinity()), ScoreRangeError);
  }

  TEST_CASE("score_batch checks length and range") {
    const std::vector<TextPair> pairs{{"a", "b"}, {"c", "d"}};
    Failing short_reply;
    short_reply.reply = {0.5};
    CHECK_THROWS_AS(short_reply.score_batch(pairs), ScoreRangeError);
    Failing out_of_range;
    out_of_range.reply = {0.5, 1.5};
    CHECK_THROWS_AS(out_of_range.score_batch(pairs), ScoreRangeError);
    CHECK_THROWS_AS(ConstantScorer(2.0).score_batch(pairs), ScoreRangeError);
  }

  TEST_CASE("constant and oracle scorers") {
    const std::vector<TextPair> pairs{{"q", "gold text"}, {"q", "other"}, {"q", "gold text "}};
    CHECK(values(ConstantScorer(0.7), pairs) == std::vector<double>{0.7, 0.7, 0.7});
    CHECK(values(OracleScorer("gold text"), pairs) == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(ConstantScorer(0.7).score_batch({}).empty());
  }
}

TEST_SUITE("baseline features") {
  TEST_CASE("tokenization") {
    CHECK(feature_tokens("Hello, World!") == std::vector<std::string>{"hello", "world"});
    CHECK(feature_tokens("( _to $0 st_petersburg:_ci )") ==
          std::vector<std::string>{"to", "0", "st", "petersburg", "ci"});
    CHECK(feature_tokens("  ").empty());
  }

  TEST_CASE("hand-computed values") {
    BaselineModel model;
    // {the, red, cube} vs {red, cube, now}: 2 shared of 4.
    auto f = pair_features("the red cube", "red cube now", model);
    CHECK(f[0] == doctest::Approx(0.5));
    CHECK(f[2] == doctest::Approx(1.0));
    CHECK(f[3] == doctest::Approx(0.5));  // nothing is common, so every token is rare
    // "abcd" vs "abce": trigrams {abc, bcd} and {abc, bce}.
    f = pair_features("abcd", "abce", model);
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(1.0 / 3.0));
    // Length ratio 2/4.
    f = pair_features("a b", "a b c d", model);
    CHECK(f[2] == doctest::Approx(0.5));
    CHECK(f[0] == doctest::Approx(0.5));
  }

  TEST_CASE("rare-token overlap ignores common tokens") {
    BaselineModel model;
    model.common_tokens = {"a", "the"};
    auto f = pair_features("the cat", "the dog", model);
    CHECK(f[0] == doctest::Approx(1.0 / 3.0));
    CHECK(f[3] == doctest::Approx(0.0));
    CHECK(pair_features("the", "the", model)[3] == 1.0);
    CHECK(pair_features("the", "a", model)[3] == 0.0);
    CHECK(pair_features("the cat", "a cat", model)[3] == 1.0);
  }

  TEST_CASE("features and scores are symmetric") {
    const auto pairs = make_separable_pairs(200, 3);
    const auto model = train_baseline(pairs);
    const BaselineScorer scorer(model);
    for (const auto& p : pairs) {
      CHECK(pair_features(p.text_a, p.text_b, model) == pair_features(p.text_b, p.text_a, model));
      const auto ab = values(scorer, {{p.text_a, p.text_b}});
      const auto ba = values(scorer, {{p.text_b, p.text_a}});
      CHECK(ab == ba);
    }
  }
}

TEST_SUITE("baseline training") {
  TEST_CASE("separable corpus is learned") {
    const auto train = make_separable_pairs(1000, 1);
    const auto held_out = make_separable_pairs(1000, 2);
    const auto model = train_baseline(train);
    CHECK(pair_accuracy(BaselineScorer(model), held_out) >= 0.9);
    // Identical strings maximize every feature.
    CHECK(values(BaselineScorer(model), {{"a b c", "a b c"}})[0] > 0.5);
  }

  TEST_CASE("training reduces the weighted loss") {
    const auto corpus = make_separable_pairs(300, 4);
    BaselineConfig config;
    config.epochs = 0;
    const auto start = train_baseline(corpus, config);
    CHECK(start.bias == 0.0);
    for (double w : start.weights) CHECK(std::abs(w) <= 0.01);
    config.epochs = 50;
    const auto trained = train_baseline(corpus, config);
    CHECK(weighted_loss(trained, corpus) < weighted_loss(start, corpus));
  }

  TEST_CASE("deterministic under a fixed seed; the seed matters") {
    const auto corpus = make_separable_pairs(300, 5);
    BaselineConfig config;
    config.seed = 21;
    const auto a = train_baseline(corpus, config);
    const auto b = train_baseline(corpus, config);
    CHECK(format_model(a) == format_model(b));
    config.seed = 22;
    config.epochs = 0;
    const auto c = train_baseline(corpus, config);
    config.seed = 21;
    const auto d = train_baseline(corpus, config);
    CHECK(c.weights != d.weights);
  }

  TEST_CASE("common tokens come from document frequency") {
    std::vector<PairExample> corpus;
    for (int i = 0; i < 20; ++i) {
      corpus.push_back({"the item" + std::to_string(i), "the thing" + std::to_string(i), i % 2, PairSource::beam_negative});
    }
    BaselineConfig config;
    config.common_df_fraction = 0.5;
    config.epochs = 1;
    const auto model = train_baseline(corpus, config);
    CHECK(model.common_tokens == std::vector<std::string>{"the"});
  }

  TEST_CASE("degenerate corpora") {
    const std::vector<PairExample> only_negative{{"a", "b", 0, PairSource::beam_negative}};
    CHECK_THROWS_AS(train_baseline(only_negative), DegenerateCorpus);
    CHECK_THROWS_AS(train_baseline({}), DegenerateCorpus);
  }
}

TEST_SUITE("model files") {
  TEST_CASE("round trip is bit-exact") {
    const auto model = train_baseline(make_separable_pairs(200, 6));
    const auto text = format_model(model);
    const auto back = parse_model(text);
    CHECK(back == model);
    CHECK(format_model(back) == text);

    const auto path = std::filesystem::temp_directory_path() / "semrerank_test_model.txt";
    save_model(model, path);
    CHECK(load_model(path) == model);
    std::filesystem::remove(path);
  }

  TEST_CASE("bad files") {
    CHECK_THROWS_AS(parse_model("not a model"), DataError);
    auto text = format_model(BaselineModel{});
    CHECK_THROWS_AS(parse_model(text.replace(text.find(" 1\n"), 3, " 9\n")), DataError);
    CHECK_THROWS_AS(load_model("/nonexistent/model.txt"), DataError);
  }
}
