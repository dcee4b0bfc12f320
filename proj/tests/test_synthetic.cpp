#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "semrerank/io.hpp"
#include "semrerank/preprocess.hpp"
#include "semrerank/synthetic.hpp"

using namespace semrerank;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SEMRERANK_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Counts {
  std::size_t top1 = 0;
  std::size_t in_beam = 0;
};

Counts count(const SyntheticCorpus& corpus) {
  Counts c;
  for (const auto& example : corpus.dataset) {
    const auto& beam = beam_for(corpus.beams, example.id());
    if (lf_equal(beam.top().lf, example.gold_lf)) ++c.top1;
    for (const auto& candidate : beam) {
      if (lf_equal(candidate.lf, example.gold_lf)) {
        ++c.in_beam;
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("default rates are exact") {
    const auto corpus = make_synthetic_corpus({});
    REQUIRE(corpus.dataset.size() == 200);
    const auto c = count(corpus);
    CHECK(c.top1 == 140);
    CHECK(c.in_beam == 190);
    for (const auto& [id, beam] : corpus.beams) CHECK(beam.size() == 10);
  }

  TEST_CASE("other sizes and rates") {
    SyntheticConfig config;
    config.examples = 37;
    config.beam_size = 25;
    config.gold_in_beam = 0.5;
    config.top1_correct = 0.25;
    const auto c = count(make_synthetic_corpus(config));
    CHECK(c.top1 == 9);      // round(9.25)
    CHECK(c.in_beam == 19);  // round(18.5)
  }

  TEST_CASE("beams hold distinct forms and domains are the Overnight eight") {
    const auto corpus = make_synthetic_corpus({});
    std::set<std::string> domains;
    for (const auto& example : corpus.dataset) {
      domains.insert(example.domain());
      std::set<std::string> forms;
      for (const auto& c : beam_for(corpus.beams, example.id())) forms.insert(normalize(c.lf).text());
      CHECK(forms.size() == 10);
    }
    CHECK(domains == std::set<std::string>(overnight_domains().begin(), overnight_domains().end()));
    CHECK(overnight_domains().size() == 8);
  }

  TEST_CASE("deterministic per seed") {
    auto dump = [](const SyntheticConfig& config) {
      const auto corpus = make_synthetic_corpus(config);
      std::ostringstream out;
      write_dataset(out, corpus.dataset);
      write_beams(out, corpus.dataset, corpus.beams);
      return out.str();
    };
    SyntheticConfig config;
    CHECK(dump(config) == dump(config));
    SyntheticConfig other = config;
    other.seed = 2021;
    CHECK(dump(config) != dump(other));
  }

  TEST_CASE("impossible configurations") {
    SyntheticConfig config;
    config.beam_size = 0;
    CHECK_THROWS_AS(make_synthetic_corpus(config), std::invalid_argument);
    config.beam_size = 10;
    config.top1_correct = 0.99;
    CHECK_THROWS_AS(make_synthetic_corpus(config), std::invalid_argument);
    config.top1_correct = 0.5;
    config.beam_size = 1;
    CHECK_THROWS_AS(make_synthetic_corpus(config), std::invalid_argument);
  }
}

TEST_SUITE("resources") {
  TEST_CASE("shipped data files match the built-in texts") {
    CHECK(slurp("demo_grammar.txt") == demo_grammar_text());
    CHECK(slurp("demo_lexicon.tsv") == demo_lexicon_text());
    CHECK_NOTHROW(EntityLexicon::parse(slurp("atis_lexicon.tsv")));
  }

  TEST_CASE("the lexicon names every synthetic entity") {
    const auto lexicon = EntityLexicon::parse(demo_lexicon_text());
    const auto corpus = make_synthetic_corpus({});
    for (const auto& example : corpus.dataset) {
      for (const auto& c : beam_for(corpus.beams, example.id())) {
        const auto text = naturalize(c.lf, lexicon);
        CHECK(text.find('.') == std::string::npos);
      }
    }
  }
}

TEST_SUITE("separable pairs") {
  TEST_CASE("balanced and within the overlap bounds") {
    const auto pairs = make_separable_pairs(500, 3);
    REQUIRE(pairs.size() == 500);
    std::size_t positives = 0;
    for (const auto& p : pairs) {
      const auto a = words(p.text_a);
      const auto b = words(p.text_b);
      CHECK(a.size() >= 8);
      CHECK(a.size() <= 12);
      const std::multiset<std::string> in_b(b.begin(), b.end());
      std::size_t shared = 0;
      for (const auto& w : std::set<std::string>(a.begin(), a.end())) shared += in_b.count(w) > 0;
      const double fraction = static_cast<double>(shared) / static_cast<double>(a.size());
      if (p.label == 1) {
        ++positives;
        CHECK(fraction >= 0.6);
      } else {
        CHECK(fraction <= 0.2);
      }
    }
    CHECK(positives == 250);
    CHECK(make_separable_pairs(500, 3) == pairs);
    CHECK(make_separable_pairs(500, 4) != pairs);
  }
}
