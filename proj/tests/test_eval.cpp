#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "semrerank/errors.hpp"
#include "semrerank/eval.hpp"
#include "semrerank/synthetic.hpp"

using namespace semrerank;

namespace {

LfTree lf(int i) { return parse("answer(state(stateid('s" + std::to_string(i) + "')))", Formalism::funql); }

RerankResult chose(const std::string& id, int form) { return {id, lf(form), 1, false, {}, std::nullopt}; }

// n examples in `domain`; the first `correct` get their gold chosen.
void add_domain(std::vector<DatasetExample>& examples, std::vector<RerankResult>& results, BeamSet& beams,
                const std::string& domain, int n, int correct) {
  for (int i = 0; i < n; ++i) {
    const auto id = domain + std::to_string(i);
    const int gold = static_cast<int>(examples.size());
    examples.push_back({{id, "q " + id, domain}, lf(gold)});
    results.push_back(chose(id, i < correct ? gold : gold + 100000));
    beams.emplace(id, Beam({{lf(gold), 1, std::nullopt}}));
  }
}

// Oracle@k counted directly from the beams.
double count_oracle(const SyntheticCorpus& corpus, int k) {
  int hits = 0;
  for (const auto& example : corpus.dataset) {
    for (const auto& c : beam_for(corpus.beams, example.id())) {
      if (c.rank <= k && lf_equal(c.lf, example.gold_lf)) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(corpus.dataset.size());
}

}  // namespace

TEST_SUITE("accuracy") {
  TEST_CASE("seven of ten") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "geo", 10, 7);
    const Dataset dataset(std::move(examples));
    CHECK(top1_accuracy(results, dataset) == doctest::Approx(0.7));
    // Arrival order does not matter.
    std::reverse(results.begin(), results.end());
    CHECK(top1_accuracy(results, dataset) == doctest::Approx(0.7));
  }

  TEST_CASE("all and none") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "a", 4, 4);
    const Dataset all(examples);
    CHECK(top1_accuracy(results, all) == 1.0);
    examples.clear();
    results.clear();
    beams.clear();
    add_domain(examples, results, beams, "a", 4, 0);
    CHECK(top1_accuracy(results, Dataset(examples)) == 0.0);
  }

  TEST_CASE("equivalent forms count as correct") {
    const Dataset dataset({{{"x", "q", "atis"},
                            parse("(_lambda $0 e (_and (_flight $0) (_to $0 boston:_ci)))", Formalism::lambda)}});
    const std::vector<RerankResult> results{
        {"x", parse("(_lambda $v e (_and (_to $v boston:_ci) (_flight $v)))", Formalism::lambda), 1, false, {},
         std::nullopt}};
    CHECK(top1_accuracy(results, dataset) == 1.0);
  }

  TEST_CASE("missing result") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "geo", 3, 3);
    results.pop_back();
    CHECK_THROWS_AS(top1_accuracy(results, Dataset(examples)), MissingResult);
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("monotone in k and anchored at the generator") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
      SyntheticConfig config;
      config.examples = 120;
      config.beam_size = 25;
      config.seed = seed;
      config.gold_in_beam = 0.9;
      config.top1_correct = 0.5;
      const auto corpus = make_synthetic_corpus(config);
      double previous = 0.0;
      for (int k = 1; k <= 25; ++k) {
        const double value = oracle_at_k(corpus.beams, corpus.dataset, k);
        CHECK(value == count_oracle(corpus, k));
        CHECK(value >= previous);
        previous = value;
      }
      CHECK(oracle_at_k(corpus.beams, corpus.dataset, 1) ==
            top1_accuracy(generator_top1(corpus.dataset, corpus.beams), corpus.dataset));
      CHECK(oracle_at_k(corpus.beams, corpus.dataset, 25) == doctest::Approx(0.9));
      CHECK(oracle_at_k(corpus.beams, corpus.dataset, 1000) == oracle_at_k(corpus.beams, corpus.dataset, 25));
    }
  }

  TEST_CASE("argument checks") {
    SyntheticConfig config;
    config.examples = 5;
    const auto corpus = make_synthetic_corpus(config);
    CHECK_THROWS_AS(oracle_at_k(corpus.beams, corpus.dataset, 0), std::invalid_argument);
    CHECK_THROWS_AS(oracle_at_k({}, corpus.dataset, 1), MissingBeam);
    CHECK(oracle_at_k({}, Dataset{}, 1) == 0.0);
  }
}

TEST_SUITE("reports") {
  TEST_CASE("macro and micro") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "alpha", 10, 10);
    add_domain(examples, results, beams, "beta", 30, 15);
    const Dataset dataset(std::move(examples));
    ReportOptions options;
    options.ks = {1};
    const auto report = make_report(dataset, beams, results, options);
    CHECK(report.macro_accuracy == doctest::Approx(0.75));
    CHECK(report.micro_accuracy == doctest::Approx(0.625));
    CHECK(report.domains.at("alpha").accuracy == 1.0);
    CHECK(report.domains.at("beta").correct == 15);
    CHECK(report.examples == 40);
    CHECK(report.metric == kMetricLabel);
    CHECK(report.oracle.at(1) == 1.0);
  }

  TEST_CASE("single domain: macro equals micro") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "only", 9, 4);
    const auto report = make_report(Dataset(examples), beams, results, {{1}, {}});
    CHECK(report.macro_accuracy == report.micro_accuracy);
  }

  TEST_CASE("expected but empty domains are listed and left out of the macro") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "blocks", 4, 2);
    add_domain(examples, results, beams, "zzz", 2, 2);
    ReportOptions options;
    options.ks = {1};
    options.expected_domains = {"basketball", "blocks"};
    const auto report = make_report(Dataset(examples), beams, results, options);
    CHECK(report.empty_domains == std::vector<std::string>{"basketball"});
    CHECK(report.domain_order == std::vector<std::string>{"basketball", "blocks", "zzz"});
    CHECK(report.macro_accuracy == doctest::Approx(0.75));
  }

  TEST_CASE("reports do not depend on result order") {
    SyntheticConfig config;
    config.examples = 60;
    const auto corpus = make_synthetic_corpus(config);
    auto results = generator_top1(corpus.dataset, corpus.beams);
    ReportOptions options;
    options.expected_domains = overnight_domains();
    const auto a = report_to_json(make_report(corpus.dataset, corpus.beams, results, options));
    std::shuffle(results.begin(), results.end(), std::mt19937(5));
    const auto b = report_to_json(make_report(corpus.dataset, corpus.beams, results, options));
    CHECK(a == b);
    CHECK(a["micro_accuracy"] <= a["oracle"]["10"]);
  }

  TEST_CASE("table layout") {
    std::vector<DatasetExample> examples;
    std::vector<RerankResult> results;
    BeamSet beams;
    add_domain(examples, results, beams, "alpha", 10, 10);
    add_domain(examples, results, beams, "beta", 30, 15);
    const Dataset dataset(std::move(examples));
    ReportOptions options;
    options.ks = {1};
    std::vector<std::pair<std::string, EvalReport>> rows;
    rows.emplace_back("Generator", make_report(dataset, beams, results, options));
    const auto table = format_table(rows);
    CHECK(table ==
          "Method    | alpha  beta | Avg.  Micro\n"
          "-------------------------------------\n"
          "Generator | 100.0  50.0 | 75.0   62.5\n");
    const auto json = table_to_json(rows);
    CHECK(json["columns"] == nlohmann::json::array({"alpha", "beta"}));
    CHECK(json["rows"][0]["avg"] == 0.75);
  }
}
