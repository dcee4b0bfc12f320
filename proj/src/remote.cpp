#include <cmath>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "semrerank/errors.hpp"
#include "semrerank/scorer.hpp"

namespace semrerank {

using json = nlohmann::json;

std::string encode_score_request(std::span<const TextPair> pairs) {
  json list = json::array();
  for (const auto& [a, b] : pairs) list.push_back(json::array({a, b}));
  return json{{"pairs", std::move(list)}}.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<double> decode_score_response(std::string_view body, std::size_t expected) {
  json reply;
  try {
    reply = json::parse(body);
  } catch (const json::exception& e) {
    throw RemoteProtocolError(std::string("malformed reply: ") + e.what());
  }
  if (!reply.is_object() || !reply.contains("scores") || !reply["scores"].is_array()) {
    throw RemoteProtocolError("reply has no \"scores\" array");
  }
  const auto& scores = reply["scores"];
  if (scores.size() != expected) {
    throw RemoteProtocolError("reply has " + std::to_string(scores.size()) + " scores for " +
                              std::to_string(expected) + " pairs");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& s : scores) {
    if (!s.is_number()) throw RemoteProtocolError("non-numeric score " + s.dump());
    const auto value = s.get<double>();
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
      throw RemoteProtocolError("score " + s.dump() + " outside [0, 1]");
    }
    out.push_back(value);
  }
  return out;
}

RemoteScorer::RemoteScorer(std::string url, RemoteScorerOptions options)
    : url_(std::move(url)), options_(options) {
  constexpr std::string_view scheme = "http://";
  std::string_view rest = url_;
  if (rest.substr(0, scheme.size()) != scheme) {
    throw std::invalid_argument("remote scorer url must start with http://: " + url_);
  }
  rest.remove_prefix(scheme.size());
  const auto slash = rest.find('/');
  auto authority = rest.substr(0, slash);
  std::string prefix = slash == std::string_view::npos ? "" : std::string(rest.substr(slash));
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/score";

  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    host_ = std::string(authority.substr(0, colon));
    const auto port_text = std::string(authority.substr(colon + 1));
    try {
      std::size_t used = 0;
      port_ = std::stoi(port_text, &used);
      if (used != port_text.size() || port_ <= 0 || port_ > 65535) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad port in remote scorer url: " + url_);
    }
  } else {
    host_ = std::string(authority);
  }
  if (host_.empty()) throw std::invalid_argument("remote scorer url has no host: " + url_);
  if (options_.max_batch == 0) throw std::invalid_argument("max_batch must be >= 1");
}

std::vector<double> RemoteScorer::request(std::span<const TextPair> pairs) const {
  httplib::Client client(host_, port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  auto response = client.Post(path_, encode_score_request(pairs), "application/json");
  if (!response) {
    throw RemoteUnavailable("remote scorer " + url_ + " unreachable: " +
                            httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw RemoteProtocolError("remote scorer " + url_ + " answered HTTP " +
                              std::to_string(response->status));
  }
  return decode_score_response(response->body, pairs.size());
}

std::vector<double> RemoteScorer::raw_scores(std::span<const TextPair> pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (std::size_t start = 0; start < pairs.size(); start += options_.max_batch) {
    const auto count = std::min(options_.max_batch, pairs.size() - start);
    auto chunk = request(pairs.subspan(start, count));
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  return out;
}

}  // namespace semrerank
