#include "semrerank/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "semrerank/errors.hpp"
#include "semrerank/io.hpp"
#include "semrerank/lf.hpp"
#include "semrerank/pairgen.hpp"
#include "semrerank/synthetic.hpp"

namespace semrerank {
namespace {

std::ifstream open_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path.string());
  return in;
}

// Writes to the file when a path is given, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw DataError("cannot write file: " + path);
    stream_ = &file_;
    path_ = path;
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw DataError("error while writing " + path_);
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
  std::string path_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  Sink sink(path.string(), std::cout);
  sink.stream() << text;
  sink.close();
}

struct LoadedResources {
  std::optional<EntityLexicon> lexicon;
  std::optional<TemplateGrammar> grammar;

  LoadedResources(const std::string& lexicon_path, const std::string& grammar_path) {
    if (!lexicon_path.empty()) lexicon = EntityLexicon::load(lexicon_path);
    if (!grammar_path.empty()) grammar = TemplateGrammar::load(grammar_path);
  }
  Resources view() const {
    return {lexicon ? &*lexicon : nullptr, grammar ? &*grammar : nullptr};
  }
};

BeamSet truncate_beams(BeamSet beams, std::size_t beam_size) {
  if (beam_size == 0) return beams;
  for (auto& [id, beam] : beams) beam = beam.truncated(beam_size);
  return beams;
}

std::string fixed(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

const std::map<std::string, ProcessingMethod>& method_names() {
  static const std::map<std::string, ProcessingMethod> names = {
      {"raw", ProcessingMethod::raw},
      {"entity_names", ProcessingMethod::entity_names},
      {"templated", ProcessingMethod::templated}};
  return names;
}

const std::map<std::string, RerankRule>& rule_names() {
  static const std::map<std::string, RerankRule> names = {
      {"always", RerankRule::always}, {"th1", RerankRule::th1}, {"th2", RerankRule::th2}, {"th3", RerankRule::th3}};
  return names;
}

void add_resource_options(CLI::App* cmd, std::string& lexicon, std::string& grammar) {
  cmd->add_option("--lexicon", lexicon, "Entity lexicon TSV (token<TAB>phrase)");
  cmd->add_option("--grammar", grammar, "Template grammar file");
}

void add_method_option(CLI::App* cmd, std::string& method) {
  cmd->add_option("--method", method, "Candidate processing: raw, entity_names or templated")
      ->check(CLI::IsMember(method_names()));
}

// ---------------------------------------------------------------------------

struct NormalizeArgs {
  std::string input;
  std::string formalism;
  std::string out;
  std::vector<std::string> unordered;
};

void cmd_normalize(const NormalizeArgs& a, std::ostream& out) {
  const auto formalism = parse_formalism(a.formalism);
  auto config = LfConfig::defaults(formalism);
  if (!a.unordered.empty()) config.unordered = {a.unordered.begin(), a.unordered.end()};

  auto in = open_read(a.input);
  Sink sink(a.out, out);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      sink.stream() << '\n';
      continue;
    }
    try {
      sink.stream() << normalize(parse(line, formalism, config), config).text() << '\n';
    } catch (const Error& e) {
      throw DataError(a.input + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  sink.close();
}

struct CorpusArgs {
  std::string dataset;
  std::string beams;
  std::string method = "raw";
  std::string lexicon;
  std::string grammar;
  std::size_t beam_size = 0;
  std::string out;
  unsigned jobs = 1;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& a) {
  cmd->add_option("--dataset", a.dataset, "Dataset JSON Lines")->required();
  cmd->add_option("--beams", a.beams, "Beam JSON Lines")->required();
  add_method_option(cmd, a.method);
  add_resource_options(cmd, a.lexicon, a.grammar);
  cmd->add_option("--beam-size", a.beam_size, "Keep the top k candidates (0 = all)");
  cmd->add_option("--out", a.out, "Output file (default: standard output)");
}

void cmd_process(const CorpusArgs& a, std::ostream& out) {
  const auto method = parse_method(a.method);
  const LoadedResources loaded(a.lexicon, a.grammar);
  const auto resources = loaded.view();
  require_resources(method, resources);
  const auto dataset = load_dataset(a.dataset);
  const auto beams = truncate_beams(load_beams(a.beams, dataset), a.beam_size);
  Sink sink(a.out, out);
  for (const auto& example : dataset) {
    const auto processed = process(beam_for(beams, example.id()), method, resources);
    write_processed(sink.stream(), example.id(), processed);
  }
  sink.close();
}

struct PairArgs {
  CorpusArgs corpus;
  bool no_gold_beam_pairs = false;
  bool no_beam_beam = false;
  std::optional<std::uint64_t> shuffle_seed;
};

void cmd_gen_pairs(const PairArgs& a, std::ostream& out) {
  const auto method = parse_method(a.corpus.method);
  const LoadedResources loaded(a.corpus.lexicon, a.corpus.grammar);
  const auto dataset = load_dataset(a.corpus.dataset);
  const auto beams = truncate_beams(load_beams(a.corpus.beams, dataset), a.corpus.beam_size);
  PairGenOptions options;
  options.gold_in_beam_pairs = !a.no_gold_beam_pairs;
  options.beam_beam_pairs = !a.no_beam_beam;
  auto pairs = generate_dataset(dataset, beams, method, loaded.view(), options, a.corpus.jobs);
  if (a.shuffle_seed) shuffle_pairs(pairs, *a.shuffle_seed);
  Sink sink(a.corpus.out, out);
  write_pairs(sink.stream(), pairs);
  sink.close();
}

struct TrainArgs {
  std::string pairs;
  std::string model;
  std::string eval_pairs;
  BaselineConfig config;
  bool no_balance = false;
};

void cmd_train(const TrainArgs& a, std::ostream& out) {
  auto config = a.config;
  config.balance_classes = !a.no_balance;
  const auto corpus = load_pairs(a.pairs);
  const auto model = train_baseline(corpus, config);
  save_model(model, a.model);
  const BaselineScorer scorer(model);
  out << "pairs " << corpus.size() << '\n';
  out << "train_accuracy " << fixed(pair_accuracy(scorer, corpus)) << '\n';
  if (!a.eval_pairs.empty()) {
    const auto held_out = load_pairs(a.eval_pairs);
    out << "eval_accuracy " << fixed(pair_accuracy(scorer, held_out)) << '\n';
  }
}

struct RerankArgs {
  CorpusArgs corpus;
  std::string rule = "always";
  std::string scorer = "oracle";
  double floor = 0.5;
  double margin = 0.001;
};

void cmd_rerank(const RerankArgs& a, std::ostream& out, std::ostream& err) {
  RerankPolicy policy;
  policy.method = parse_method(a.corpus.method);
  policy.rule = parse_rule(a.rule);
  policy.score_floor = a.floor;
  policy.margin = a.margin;
  policy.validate();
  const LoadedResources loaded(a.corpus.lexicon, a.corpus.grammar);
  const auto resources = loaded.view();
  require_resources(policy.method, resources);
  const auto provider = make_scorer_provider(a.scorer, policy.method, resources);

  const auto dataset = load_dataset(a.corpus.dataset);
  const auto beams = truncate_beams(load_beams(a.corpus.beams, dataset), a.corpus.beam_size);
  const auto results = rerank_dataset(dataset, beams, policy, provider, resources, a.corpus.jobs);

  Sink sink(a.corpus.out, out);
  write_results(sink.stream(), results);
  sink.close();
  const auto reranked = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.reranked; });
  err << "reranked " << reranked << " of " << results.size() << " examples\n";
}

struct EvaluateArgs {
  std::string dataset;
  std::string beams;
  std::vector<std::string> results;
  std::vector<int> ks{1, 10, 25};
  std::vector<std::string> domains;
  bool overnight = false;
  bool generator_row = false;
  std::string json;
};

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto dataset = load_dataset(a.dataset);
  const auto beams = load_beams(a.beams, dataset);
  ReportOptions options;
  options.ks = a.ks;
  options.expected_domains = a.overnight ? overnight_domains() : a.domains;

  std::vector<std::pair<std::string, EvalReport>> rows;
  if (a.generator_row) {
    rows.emplace_back("Generator", make_report(dataset, beams, generator_top1(dataset, beams), options));
  }
  for (const auto& spec : a.results) {
    // label=path, or just path (labelled by its stem)
    std::string label;
    std::string path = spec;
    if (const auto eq = spec.find('='); eq != std::string::npos) {
      label = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    } else {
      label = std::filesystem::path(spec).stem().string();
    }
    rows.emplace_back(label, make_report(dataset, beams, load_results(path, dataset), options));
  }
  if (rows.empty()) throw std::invalid_argument("nothing to evaluate: give --results or --generator");

  out << "metric: " << kMetricLabel << '\n';
  out << format_table(rows);
  for (const auto& [k, value] : rows.front().second.oracle) {
    out << "oracle@" << k << ' ' << fixed(value) << '\n';
  }
  for (const auto& domain : rows.front().second.empty_domains) {
    out << "warning: no examples for domain " << domain << '\n';
  }
  if (!a.json.empty()) write_text(a.json, table_to_json(rows).dump(2) + "\n");
}

struct OracleArgs {
  std::string dataset;
  std::string beams;
  std::vector<int> ks{1, 10, 25};
};

void cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const auto dataset = load_dataset(a.dataset);
  const auto beams = load_beams(a.beams, dataset);
  out << "generator_top1 " << fixed(top1_accuracy(generator_top1(dataset, beams), dataset)) << '\n';
  for (int k : a.ks) out << "oracle@" << k << ' ' << fixed(oracle_at_k(beams, dataset, k)) << '\n';
}

struct DemoArgs {
  DemoOptions options;
  std::string method = "templated";
  std::string out_dir;
  std::string scorer;
};

void cmd_demo(const DemoArgs& a, std::ostream& out) {
  auto options = a.options;
  options.method = parse_method(a.method);
  if (!a.out_dir.empty()) options.out_dir = a.out_dir;
  if (!a.scorer.empty()) options.scorer = a.scorer;
  out << run_demo(options).text;
}

std::string usage_for(const CLI::App& app) {
  for (const auto* sub : app.get_subcommands()) return sub->help();
  return app.help();
}

}  // namespace

ScorerProvider make_scorer_provider(const std::string& spec, ProcessingMethod method,
                                    const Resources& resources) {
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  const auto arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (spec == "oracle") return oracle_scorers(method, resources);
  if (colon != std::string::npos && !arg.empty()) {
    if (kind == "baseline") return fixed_scorer(std::make_shared<BaselineScorer>(load_model(arg)));
    if (kind == "remote") return fixed_scorer(std::make_shared<RemoteScorer>(arg));
    if (kind == "constant") {
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != arg.size() || !(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("constant scorer needs a value in [0, 1], got '" + arg + "'");
      }
      return fixed_scorer(std::make_shared<ConstantScorer>(value));
    }
  }
  throw std::invalid_argument("unknown scorer '" + spec +
                              "' (expected oracle, constant:<v>, baseline:<path> or remote:<url>)");
}

DemoOutcome run_demo(const DemoOptions& options) {
  SyntheticConfig test_config;
  test_config.examples = options.examples;
  test_config.beam_size = options.beam_size;
  test_config.seed = options.seed;
  test_config.id_prefix = "test";
  SyntheticConfig train_config = test_config;
  train_config.examples = options.train_examples;
  train_config.seed = options.seed + 1;
  train_config.id_prefix = "train";
  const auto train = make_synthetic_corpus(train_config);
  const auto test = make_synthetic_corpus(test_config);

  const auto grammar = TemplateGrammar::parse(demo_grammar_text());
  const auto lexicon = EntityLexicon::parse(demo_lexicon_text(), "<demo lexicon>");
  const Resources resources{&lexicon, &grammar};

  // The baseline only sees utterance-candidate pairs; see PairGenOptions.
  PairGenOptions pair_options;
  pair_options.beam_beam_pairs = false;
  auto pairs = generate_dataset(train.dataset, train.beams, options.method, resources, pair_options, options.jobs);
  shuffle_pairs(pairs, options.seed);
  DemoOutcome outcome;
  outcome.model = train_baseline(pairs);
  const auto critic = std::make_shared<BaselineScorer>(outcome.model);
  const auto held_out =
      generate_dataset(test.dataset, test.beams, options.method, resources, pair_options, options.jobs);
  outcome.critic_pair_accuracy = pair_accuracy(*critic, held_out);

  const auto provider = options.scorer ? make_scorer_provider(*options.scorer, options.method, resources)
                                       : fixed_scorer(critic);
  ReportOptions report_options;
  report_options.ks = {1, static_cast<int>(options.beam_size)};
  report_options.expected_domains = overnight_domains();

  std::map<std::string, std::vector<RerankResult>> outputs;
  auto add_row = [&](const std::string& label, const std::string& key, std::vector<RerankResult> results) {
    outcome.rows.emplace_back(label, make_report(test.dataset, test.beams, results, report_options));
    outputs.emplace(key, std::move(results));
  };
  add_row("Generator", "generator", generator_top1(test.dataset, test.beams));
  for (auto rule : {RerankRule::always, RerankRule::th1, RerankRule::th2, RerankRule::th3}) {
    RerankPolicy policy;
    policy.method = options.method;
    policy.rule = rule;
    auto label = std::string(to_string(rule));
    std::transform(label.begin(), label.end(), label.begin(), [](unsigned char c) { return std::toupper(c); });
    add_row("G-R " + label, std::string(to_string(rule)),
            rerank_dataset(test.dataset, test.beams, policy, provider, resources, options.jobs));
  }
  {
    RerankPolicy policy;
    policy.method = options.method;
    add_row("Oracle critic", "oracle",
            rerank_dataset(test.dataset, test.beams, policy, oracle_scorers(options.method, resources),
                           resources, options.jobs));
  }

  std::ostringstream text;
  text << "synthetic corpus: " << options.train_examples << " training / " << options.examples
       << " test examples, beam size " << options.beam_size << ", seed " << options.seed << '\n';
  text << "method: " << to_string(options.method) << ", critic: "
       << (options.scorer ? *options.scorer : std::string("baseline")) << ", metric: " << kMetricLabel << "\n\n";
  text << format_table(outcome.rows) << '\n';
  for (const auto& [k, value] : outcome.rows.front().second.oracle) {
    text << "oracle@" << k << "  " << fixed(value) << '\n';
  }
  text << "baseline pairs  " << pairs.size() << " train, " << held_out.size()
       << " held out (utterance-candidate pairs only)\n";
  text << "baseline held-out pair accuracy  " << fixed(outcome.critic_pair_accuracy) << '\n';
  for (const auto& [label, report] : outcome.rows) {
    if (label.rfind("G-R", 0) == 0) text << "reranked (" << label << ")  " << report.reranked << '\n';
  }
  outcome.text = text.str();

  if (options.out_dir) {
    const auto& dir = *options.out_dir;
    std::filesystem::create_directories(dir);
    auto emit = [&](const std::string& name, auto&& writer) {
      Sink sink((dir / name).string(), std::cout);
      writer(sink.stream());
      sink.close();
    };
    emit("train.dataset.jsonl", [&](std::ostream& o) { write_dataset(o, train.dataset); });
    emit("train.beams.jsonl", [&](std::ostream& o) { write_beams(o, train.dataset, train.beams); });
    emit("test.dataset.jsonl", [&](std::ostream& o) { write_dataset(o, test.dataset); });
    emit("test.beams.jsonl", [&](std::ostream& o) { write_beams(o, test.dataset, test.beams); });
    emit("grammar.txt", [&](std::ostream& o) { o << demo_grammar_text(); });
    emit("lexicon.tsv", [&](std::ostream& o) { o << demo_lexicon_text(); });
    emit("train.pairs.jsonl", [&](std::ostream& o) { write_pairs(o, pairs); });
    save_model(outcome.model, dir / "baseline.model");
    for (const auto& [key, results] : outputs) {
      emit("results." + key + ".jsonl", [&](std::ostream& o) { write_results(o, results); });
    }
    emit("report.txt", [&](std::ostream& o) { o << outcome.text; });
    emit("report.json", [&](std::ostream& o) { o << table_to_json(outcome.rows).dump(2) << '\n'; });
  }
  return outcome;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rerank semantic parser beams with a sentence-similarity critic.", "semrerank"};
  app.set_config("--config", "", "Read flags from a TOML/INI file; the command line wins");
  app.require_subcommand(1);
  app.fallthrough();

  std::function<void()> action;

  NormalizeArgs normalize_args;
  auto* normalize_cmd = app.add_subcommand("normalize", "Print the normal form of each logical form in a file");
  normalize_cmd->add_option("input", normalize_args.input, "Logical forms, one per line")->required();
  normalize_cmd->add_option("--formalism", normalize_args.formalism, "funql, lambda or overnight")
      ->required()
      ->check(CLI::IsMember({"funql", "lambda", "overnight", "geo", "atis"}));
  normalize_cmd->add_option("--unordered", normalize_args.unordered, "Override the unordered functors")
      ->delimiter(',');
  normalize_cmd->add_option("--out", normalize_args.out, "Output file (default: standard output)");
  normalize_cmd->callback([&] { action = [&] { cmd_normalize(normalize_args, out); }; });

  CorpusArgs process_args;
  auto* process_cmd = app.add_subcommand("process", "Turn beam candidates into critic input text");
  add_corpus_options(process_cmd, process_args);
  process_cmd->callback([&] { action = [&] { cmd_process(process_args, out); }; });

  PairArgs pair_args;
  auto* pairs_cmd = app.add_subcommand("gen-pairs", "Generate labelled sentence pairs for training a critic");
  add_corpus_options(pairs_cmd, pair_args.corpus);
  pairs_cmd->add_flag("--no-gold-beam-pairs", pair_args.no_gold_beam_pairs,
                      "Leave out beam-beam pairs that involve the gold candidate");
  pairs_cmd->add_flag("--no-beam-beam", pair_args.no_beam_beam, "Leave out beam-beam pairs altogether");
  pairs_cmd->add_option("--shuffle-seed", pair_args.shuffle_seed, "Shuffle the pairs with this seed");
  pairs_cmd->add_option("--jobs", pair_args.corpus.jobs, "Worker threads")->check(CLI::PositiveNumber);
  pairs_cmd->callback([&] { action = [&] { cmd_gen_pairs(pair_args, out); }; });

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train the baseline critic");
  train_cmd->add_option("--pairs", train_args.pairs, "Training pairs JSON Lines")->required();
  train_cmd->add_option("--model", train_args.model, "Where to write the model")->required();
  train_cmd->add_option("--eval-pairs", train_args.eval_pairs, "Held-out pairs to report accuracy on");
  train_cmd->add_option("--seed", train_args.config.seed, "Initialization seed");
  train_cmd->add_option("--epochs", train_args.config.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--learning-rate", train_args.config.learning_rate)->check(CLI::PositiveNumber);
  train_cmd->add_option("--common-df", train_args.config.common_df_fraction,
                        "Document-frequency fraction above which a token is common")
      ->check(CLI::Range(0.0, 1.0));
  train_cmd->add_flag("--no-balance", train_args.no_balance, "Do not reweight classes");
  train_cmd->callback([&] { action = [&] { cmd_train(train_args, out); }; });

  RerankArgs rerank_args;
  auto* rerank_cmd = app.add_subcommand("rerank", "Rerank beams with a critic");
  add_corpus_options(rerank_cmd, rerank_args.corpus);
  rerank_cmd->add_option("--rule", rerank_args.rule, "always, th1, th2 or th3")
      ->check(CLI::IsMember(rule_names(), CLI::ignore_case));
  rerank_cmd->add_option("--scorer", rerank_args.scorer, "oracle, constant:<v>, baseline:<model> or remote:<url>");
  rerank_cmd->add_option("--floor", rerank_args.floor, "TH1 score floor");
  rerank_cmd->add_option("--margin", rerank_args.margin, "TH2 margin");
  rerank_cmd->add_option("--jobs", rerank_args.corpus.jobs, "Worker threads")->check(CLI::PositiveNumber);
  rerank_cmd->callback([&] { action = [&] { cmd_rerank(rerank_args, out, err); }; });

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Accuracy and oracle report for result files");
  evaluate_cmd->add_option("--dataset", evaluate_args.dataset)->required();
  evaluate_cmd->add_option("--beams", evaluate_args.beams)->required();
  evaluate_cmd->add_option("--results", evaluate_args.results, "Result files, optionally label=path");
  evaluate_cmd->add_flag("--generator", evaluate_args.generator_row, "Add a row for the generator's top-1");
  evaluate_cmd->add_option("--k", evaluate_args.ks, "Oracle cut-offs")->delimiter(',');
  evaluate_cmd->add_option("--domains", evaluate_args.domains, "Expected domains, in column order")
      ->delimiter(',');
  evaluate_cmd->add_flag("--overnight", evaluate_args.overnight, "Expect the eight Overnight domains");
  evaluate_cmd->add_option("--json", evaluate_args.json, "Also write the table as JSON");
  evaluate_cmd->callback([&] { action = [&] { cmd_evaluate(evaluate_args, out); }; });

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Top-k oracle accuracy of a beam file");
  oracle_cmd->add_option("--dataset", oracle_args.dataset)->required();
  oracle_cmd->add_option("--beams", oracle_args.beams)->required();
  oracle_cmd->add_option("--k", oracle_args.ks, "Cut-offs")->delimiter(',');
  oracle_cmd->callback([&] { action = [&] { cmd_oracle(oracle_args, out); }; });

  DemoArgs demo_args;
  auto* demo_cmd = app.add_subcommand("demo", "Run the full pipeline on a synthetic corpus");
  demo_cmd->add_option("--examples", demo_args.options.examples, "Test examples")->check(CLI::PositiveNumber);
  demo_cmd->add_option("--train-examples", demo_args.options.train_examples, "Training examples")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--beam-size", demo_args.options.beam_size)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--seed", demo_args.options.seed);
  add_method_option(demo_cmd, demo_args.method);
  demo_cmd->add_option("--scorer", demo_args.scorer, "Critic for the G-R rows (default: trained baseline)");
  demo_cmd->add_option("--out-dir", demo_args.out_dir, "Write the corpus, model, results and report here");
  demo_cmd->add_option("--jobs", demo_args.options.jobs, "Worker threads")->check(CLI::PositiveNumber);
  demo_cmd->callback([&] { action = [&] { cmd_demo(demo_args, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_code::ok;
    }
    err << "error: " << e.what() << "\n\n" << usage_for(app);
    return exit_code::usage;
  }

  try {
    if (action) action();
    return exit_code::ok;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << usage_for(app);
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::data;
  }
}

}  // namespace semrerank
