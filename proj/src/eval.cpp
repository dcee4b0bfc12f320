#include "semrerank/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "semrerank/errors.hpp"

namespace semrerank {

using json = nlohmann::json;

namespace {

std::map<std::string, const RerankResult*> index_results(std::span<const RerankResult> results) {
  std::map<std::string, const RerankResult*> by_id;
  for (const auto& r : results) by_id.emplace(r.id, &r);
  return by_id;
}

const RerankResult& result_for(const std::map<std::string, const RerankResult*>& by_id,
                               const std::string& id) {
  auto it = by_id.find(id);
  if (it == by_id.end()) throw MissingResult(id);
  return *it->second;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool gold_within(const Beam& beam, const NormalForm& gold, int k) {
  for (const auto& candidate : beam) {
    if (candidate.rank > k) break;
    if (normalize(candidate.lf).tokens == gold.tokens) return true;
  }
  return false;
}

}  // namespace

double top1_accuracy(std::span<const RerankResult> results, const Dataset& dataset) {
  const auto by_id = index_results(results);
  std::size_t correct = 0;
  for (const auto& example : dataset) {
    if (lf_equal(result_for(by_id, example.id()).chosen, example.gold_lf)) ++correct;
  }
  return ratio(correct, dataset.size());
}

double oracle_at_k(const BeamSet& beams, const Dataset& dataset, int k) {
  if (k < 1) throw std::invalid_argument("oracle@k needs k >= 1");
  std::size_t hits = 0;
  for (const auto& example : dataset) {
    if (gold_within(beam_for(beams, example.id()), normalize(example.gold_lf), k)) ++hits;
  }
  return ratio(hits, dataset.size());
}

EvalReport make_report(const Dataset& dataset, const BeamSet& beams,
                       std::span<const RerankResult> results, const ReportOptions& options) {
  for (int k : options.ks) {
    if (k < 1) throw std::invalid_argument("oracle@k needs k >= 1");
  }
  const auto by_id = index_results(results);

  EvalReport report;
  for (const auto& example : dataset) {
    const auto& result = result_for(by_id, example.id());
    auto& stats = report.domains[example.domain()];
    ++stats.examples;
    ++report.examples;
    if (result.reranked) ++report.reranked;
    if (lf_equal(result.chosen, example.gold_lf)) {
      ++stats.correct;
      ++report.correct;
    }
  }

  double macro_sum = 0.0;
  for (auto& [domain, stats] : report.domains) {
    stats.accuracy = ratio(stats.correct, stats.examples);
    macro_sum += stats.accuracy;
  }
  report.macro_accuracy = report.domains.empty() ? 0.0 : macro_sum / static_cast<double>(report.domains.size());
  report.micro_accuracy = ratio(report.correct, report.examples);

  std::set<std::string> placed;
  for (const auto& domain : options.expected_domains) {
    if (!placed.insert(domain).second) continue;
    report.domain_order.push_back(domain);
    if (!report.domains.contains(domain)) report.empty_domains.push_back(domain);
  }
  for (const auto& [domain, stats] : report.domains) {
    if (placed.insert(domain).second) report.domain_order.push_back(domain);
  }

  for (int k : options.ks) report.oracle[k] = oracle_at_k(beams, dataset, k);
  return report;
}

json report_to_json(const EvalReport& report) {
  json domains = json::object();
  for (const auto& [domain, stats] : report.domains) {
    domains[domain] = {{"examples", stats.examples}, {"correct", stats.correct}, {"accuracy", stats.accuracy}};
  }
  json oracle = json::object();
  for (const auto& [k, value] : report.oracle) oracle[std::to_string(k)] = value;
  return {{"metric", report.metric},
          {"examples", report.examples},
          {"correct", report.correct},
          {"reranked", report.reranked},
          {"micro_accuracy", report.micro_accuracy},
          {"macro_accuracy", report.macro_accuracy},
          {"domains", std::move(domains)},
          {"domain_order", report.domain_order},
          {"oracle", std::move(oracle)},
          {"empty_domains", report.empty_domains}};
}

namespace {

std::string percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.1f", 100.0 * value);
  return buffer;
}

std::vector<std::string> table_columns(std::span<const std::pair<std::string, EvalReport>> rows) {
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const auto& [label, report] : rows) {
    for (const auto& domain : report.domain_order) {
      if (seen.insert(domain).second) columns.push_back(domain);
    }
  }
  return columns;
}

}  // namespace

std::string format_table(std::span<const std::pair<std::string, EvalReport>> rows) {
  const auto columns = table_columns(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Method"};
  header.insert(header.end(), columns.begin(), columns.end());
  header.emplace_back("Avg.");
  header.emplace_back("Micro");
  cells.push_back(header);
  for (const auto& [label, report] : rows) {
    std::vector<std::string> line{label};
    for (const auto& domain : columns) {
      auto it = report.domains.find(domain);
      line.push_back(it == report.domains.end() ? "-" : percent(it->second.accuracy));
    }
    line.push_back(percent(report.macro_accuracy));
    line.push_back(percent(report.micro_accuracy));
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& line = cells[r];
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c == 0) {
        out << line[c] << std::string(widths[c] - line[c].size(), ' ');
      } else {
        out << (c == 1 || c == line.size() - 2 ? " | " : "  ");
        out << std::string(widths[c] - line[c].size(), ' ') << line[c];
      }
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c == 0 ? 0 : (c == 1 || c == widths.size() - 2 ? 3 : 2));
      out << std::string(total, '-') << '\n';
    }
  }
  return out.str();
}

json table_to_json(std::span<const std::pair<std::string, EvalReport>> rows) {
  const auto columns = table_columns(rows);
  json out_rows = json::array();
  for (const auto& [label, report] : rows) {
    json domains = json::object();
    for (const auto& domain : columns) {
      auto it = report.domains.find(domain);
      domains[domain] = it == report.domains.end() ? json(nullptr) : json(it->second.accuracy);
    }
    out_rows.push_back({{"label", label},
                        {"domains", std::move(domains)},
                        {"avg", report.macro_accuracy},
                        {"micro", report.micro_accuracy},
                        {"report", report_to_json(report)}});
  }
  return {{"columns", columns}, {"rows", std::move(out_rows)}};
}

}  // namespace semrerank
