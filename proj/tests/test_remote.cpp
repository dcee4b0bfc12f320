#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>

#include "mock_critic.hpp"
#include "semrerank/errors.hpp"
#include "semrerank/scorer.hpp"

using namespace semrerank;
using nlohmann::json;

namespace {

double by_length(const std::string& a, const std::string& b) {
  return static_cast<double>(a.size() % 7 + b.size() % 3) / 10.0;
}

std::vector<TextPair> make_pairs(std::size_t n) {
  std::vector<TextPair> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({"utterance " + std::to_string(i), std::string(i % 11, 'x')});
  return out;
}

std::vector<double> values(const Scorer& scorer, const std::vector<TextPair>& pairs) {
  std::vector<double> out;
  for (const auto& s : scorer.score_batch(pairs)) out.push_back(s.value());
  return out;
}

RemoteScorerOptions quick() {
  RemoteScorerOptions options;
  options.timeout = std::chrono::milliseconds(2000);
  return options;
}

}  // namespace

TEST_SUITE("wire format") {
  TEST_CASE("request body") {
    const std::vector<TextPair> pairs{{"a \"b\"", "c"}, {"", "\xC3\xA9"}};
    const auto body = json::parse(encode_score_request(pairs));
    CHECK(body == json{{"pairs", json::array({json::array({"a \"b\"", "c"}), json::array({"", "\xC3\xA9"})})}});
    CHECK(json::parse(encode_score_request({})) == json{{"pairs", json::array()}});
  }

  TEST_CASE("response decoding") {
    CHECK(decode_score_response(R"({"scores": [0, 0.25, 1]})", 3) == std::vector<double>{0.0, 0.25, 1.0});
    CHECK(decode_score_response(R"({"scores": [], "extra": 1})", 0).empty());
    CHECK_THROWS_AS(decode_score_response("not json", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"([0.5])", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"score": [0.5]})", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"scores": [0.5]})", 2), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"scores": [1.5]})", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"scores": [-0.1]})", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"scores": ["0.5"]})", 1), RemoteProtocolError);
    CHECK_THROWS_AS(decode_score_response(R"({"scores": [null]})", 1), RemoteProtocolError);
  }

  TEST_CASE("urls") {
    RemoteScorer plain("http://localhost:8080");
    CHECK(plain.host() == "localhost");
    CHECK(plain.port() == 8080);
    CHECK(plain.score_path() == "/score");
    RemoteScorer prefixed("http://example.org/critic/v1/");
    CHECK(prefixed.port() == 80);
    CHECK(prefixed.score_path() == "/critic/v1/score");
    CHECK(prefixed.describe() == "remote:http://example.org/critic/v1/");
    CHECK_THROWS_AS(RemoteScorer("https://x"), std::invalid_argument);
    CHECK_THROWS_AS(RemoteScorer("http://:80"), std::invalid_argument);
    CHECK_THROWS_AS(RemoteScorer("http://x:0"), std::invalid_argument);
    CHECK_THROWS_AS(RemoteScorer("http://x:12ab"), std::invalid_argument);
    RemoteScorerOptions zero;
    zero.max_batch = 0;
    CHECK_THROWS_AS(RemoteScorer("http://x", zero), std::invalid_argument);
  }
}

TEST_SUITE("against a mock critic") {
  TEST_CASE("scores come back in order") {
    mock::Critic critic(by_length);
    RemoteScorer scorer(critic.url(), quick());
    const auto pairs = make_pairs(10);
    std::vector<double> expected;
    for (const auto& [a, b] : pairs) expected.push_back(by_length(a, b));
    CHECK(values(scorer, pairs) == expected);
    REQUIRE(critic.requests().size() == 1);
    CHECK(critic.requests()[0] == json::parse(encode_score_request(pairs)));
  }

  TEST_CASE("path prefix") {
    mock::Critic critic(by_length, "/api");
    RemoteScorer scorer(critic.url("/api"), quick());
    CHECK(values(scorer, make_pairs(2)).size() == 2);
    RemoteScorer wrong(critic.url(), quick());
    CHECK_THROWS_AS(wrong.score_batch(make_pairs(2)), RemoteProtocolError);
  }

  TEST_CASE("large inputs are split into batches of at most 64") {
    mock::Critic critic(by_length);
    RemoteScorer scorer(critic.url(), quick());
    const auto pairs = make_pairs(150);
    const auto scores = values(scorer, pairs);
    REQUIRE(scores.size() == 150);
    for (std::size_t i = 0; i < pairs.size(); ++i) CHECK(scores[i] == by_length(pairs[i].first, pairs[i].second));
    const auto requests = critic.requests();
    REQUIRE(requests.size() == 3);
    CHECK(requests[0]["pairs"].size() == 64);
    CHECK(requests[1]["pairs"].size() == 64);
    CHECK(requests[2]["pairs"].size() == 22);

    RemoteScorerOptions small = quick();
    small.max_batch = 5;
    mock::Critic other(by_length);
    CHECK(values(RemoteScorer(other.url(), small), make_pairs(12)).size() == 12);
    CHECK(other.requests().size() == 3);
  }

  TEST_CASE("empty input makes no request") {
    mock::Critic critic(by_length);
    RemoteScorer scorer(critic.url(), quick());
    CHECK(scorer.score_batch({}).empty());
    CHECK(critic.requests().empty());
  }

  TEST_CASE("bad replies are protocol errors") {
    mock::Critic critic(by_length);
    RemoteScorer scorer(critic.url(), quick());
    const auto pairs = make_pairs(3);

    critic.set_hook([](const json&) { return mock::Reply{500, R"({"scores": [0.1, 0.2, 0.3]})"}; });
    CHECK_THROWS_AS(scorer.score_batch(pairs), RemoteProtocolError);
    critic.set_hook([](const json&) { return mock::Reply{200, "{"}; });
    CHECK_THROWS_AS(scorer.score_batch(pairs), RemoteProtocolError);
    critic.set_hook([](const json&) { return mock::Reply{200, R"({"scores": [0.1, 0.2]})"}; });
    CHECK_THROWS_AS(scorer.score_batch(pairs), RemoteProtocolError);
    critic.set_hook([](const json&) { return mock::Reply{200, R"({"scores": [0.1, 0.2, 1.01]})"}; });
    CHECK_THROWS_AS(scorer.score_batch(pairs), RemoteProtocolError);
    // Protocol errors are library errors, so callers can catch the base.
    CHECK_THROWS_AS(scorer.score_batch(pairs), Error);
  }

  TEST_CASE("a failing later batch fails the whole call") {
    mock::Critic critic(by_length);
    std::atomic<int> calls{0};
    critic.set_hook([&](const json&) -> std::optional<mock::Reply> {
      if (calls++ == 1) return mock::Reply{503, ""};
      return std::nullopt;
    });
    RemoteScorer scorer(critic.url(), quick());
    CHECK_THROWS_AS(scorer.score_batch(make_pairs(100)), RemoteProtocolError);
  }

  TEST_CASE("unreachable service") {
    int port = 0;
    {
      mock::Critic critic(by_length);
      port = critic.port();
    }
    RemoteScorer scorer("http://127.0.0.1:" + std::to_string(port), quick());
    CHECK_THROWS_AS(scorer.score_batch(make_pairs(1)), RemoteUnavailable);
  }

  TEST_CASE("concurrent callers") {
    mock::Critic critic(by_length);
    const RemoteScorer scorer(critic.url(), quick());
    const auto pairs = make_pairs(20);
    const auto expected = values(scorer, pairs);
    std::vector<std::thread> threads;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&] {
        if (values(scorer, pairs) != expected) ++mismatches;
      });
    }
    for (auto& t : threads) t.join();
    CHECK(mismatches == 0);
  }
}
