#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "semrerank/cli.hpp"
#include "semrerank/errors.hpp"
#include "semrerank/eval.hpp"
#include "semrerank/lf.hpp"
#include "semrerank/pairgen.hpp"
#include "semrerank/preprocess.hpp"
#include "semrerank/rerank.hpp"
#include "semrerank/scorer.hpp"
#include "semrerank/synthetic.hpp"

namespace py = pybind11;
using namespace semrerank;

namespace {

LfTree parse_as(const std::string& text, const std::string& formalism) {
  return parse(text, parse_formalism(formalism));
}

Beam beam_from(const std::vector<std::string>& forms, Formalism formalism) {
  std::vector<BeamCandidate> candidates;
  int rank = 1;
  for (const auto& text : forms) candidates.push_back({parse(text, formalism), rank++, std::nullopt});
  return Beam(std::move(candidates));
}

Resources resources_of(const EntityLexicon* lexicon, const TemplateGrammar* grammar) {
  return {lexicon, grammar};
}

py::dict report_dict(const EvalReport& report) {
  py::dict domains;
  for (const auto& [name, stats] : report.domains) domains[py::str(name)] = stats.accuracy;
  py::dict oracle;
  for (const auto& [k, value] : report.oracle) oracle[py::int_(k)] = value;
  py::dict out;
  out["metric"] = report.metric;
  out["domains"] = domains;
  out["macro_accuracy"] = report.macro_accuracy;
  out["micro_accuracy"] = report.micro_accuracy;
  out["oracle"] = oracle;
  out["examples"] = report.examples;
  out["reranked"] = report.reranked;
  return out;
}

}  // namespace

PYBIND11_MODULE(_semrerank, m) {
  m.doc() = "Critic-based reranking of semantic parser beams";

  static py::exception<Error> base(m, "SemrerankError", PyExc_RuntimeError);
  static py::exception<SyntaxError> syntax(m, "LfSyntaxError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SyntaxError& e) {
      py::set_error(syntax, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  // logical forms
  m.def("normalize", [](const std::string& text, const std::string& formalism) {
    return normalize(parse_as(text, formalism)).text();
  }, py::arg("lf"), py::arg("formalism"), "Normal form of a logical form, as text.");
  m.def("canonicalize", [](const std::string& text, const std::string& formalism) {
    return serialize(canonicalize(parse_as(text, formalism)));
  }, py::arg("lf"), py::arg("formalism"));
  m.def("serialize", [](const std::string& text, const std::string& formalism) {
    return serialize(parse_as(text, formalism));
  }, py::arg("lf"), py::arg("formalism"), "Parse and re-print in the standard spacing.");
  m.def("lf_equal", [](const std::string& a, const std::string& b, const std::string& formalism) {
    return lf_equal(parse_as(a, formalism), parse_as(b, formalism));
  }, py::arg("a"), py::arg("b"), py::arg("formalism"));

  // preprocessing
  py::class_<EntityLexicon>(m, "EntityLexicon")
      .def(py::init<>())
      .def_static("parse", [](const std::string& text) { return EntityLexicon::parse(text); })
      .def_static("load", [](const std::string& path) { return EntityLexicon::load(path); })
      .def("add", &EntityLexicon::add)
      .def("lookup", [](const EntityLexicon& lex, const std::string& token) -> std::optional<std::string> {
        auto hit = lex.lookup(token);
        if (!hit) return std::nullopt;
        return std::string(*hit);
      })
      .def("__len__", &EntityLexicon::size);

  py::class_<TemplateGrammar>(m, "TemplateGrammar")
      .def_static("parse", [](const std::string& text) { return TemplateGrammar::parse(text); })
      .def_static("load", [](const std::string& path) { return TemplateGrammar::load(path); })
      .def_static("demo", [] { return TemplateGrammar::parse(demo_grammar_text()); })
      .def("expand", [](const TemplateGrammar& g, const std::string& text, const std::string& formalism) {
        return expand_template(parse_as(text, formalism), g);
      }, py::arg("lf"), py::arg("formalism"), "Canonical utterance, or None when no rule applies.")
      .def("__len__", [](const TemplateGrammar& g) { return g.rules().size(); });

  m.def("naturalize_token", [](const std::string& token, const EntityLexicon* lexicon) {
    return naturalize_token(token, lexicon ? *lexicon : EntityLexicon{});
  }, py::arg("token"), py::arg("lexicon") = nullptr);
  m.def("process", [](const std::string& text, const std::string& formalism, const std::string& method,
                      const EntityLexicon* lexicon, const TemplateGrammar* grammar) {
    return process_one(parse_as(text, formalism), parse_method(method), resources_of(lexicon, grammar));
  }, py::arg("lf"), py::arg("formalism"), py::arg("method") = "raw", py::arg("lexicon") = nullptr,
        py::arg("grammar") = nullptr, "Critic input text, or None for an EXCLUDED candidate.");

  // pair generation
  m.def("generate_pairs", [](const std::string& utterance, const std::string& gold,
                             const std::vector<std::string>& beam, const std::string& formalism,
                             const std::string& method, const EntityLexicon* lexicon,
                             const TemplateGrammar* grammar, bool gold_in_beam_pairs) {
    const auto f = parse_formalism(formalism);
    PairGenOptions options;
    options.gold_in_beam_pairs = gold_in_beam_pairs;
    const auto pairs = generate_pairs({"example", utterance, ""}, parse(gold, f), beam_from(beam, f),
                                      parse_method(method), resources_of(lexicon, grammar), options);
    py::list out;
    for (const auto& p : pairs) {
      out.append(py::make_tuple(p.text_a, p.text_b, p.label, std::string(to_string(p.source))));
    }
    return out;
  }, py::arg("utterance"), py::arg("gold"), py::arg("beam"), py::arg("formalism"),
        py::arg("method") = "raw", py::arg("lexicon") = nullptr, py::arg("grammar") = nullptr,
        py::arg("gold_in_beam_pairs") = true, "List of (text_a, text_b, label, source).");

  // baseline critic
  py::class_<BaselineModel>(m, "BaselineModel")
      .def_static("load", [](const std::string& path) { return load_model(path); })
      .def_static("from_text", [](const std::string& text) { return parse_model(text); })
      .def("save", [](const BaselineModel& model, const std::string& path) { save_model(model, path); })
      .def("to_text", &format_model)
      .def_property_readonly("weights", [](const BaselineModel& model) {
        return std::vector<double>(model.weights.begin(), model.weights.end());
      })
      .def_readonly("bias", &BaselineModel::bias)
      .def("score", [](const BaselineModel& model, const std::string& a, const std::string& b) {
        return baseline_probability(pair_features(a, b, model), model);
      }, py::arg("a"), py::arg("b"));

  m.def("train_baseline", [](const std::vector<std::tuple<std::string, std::string, int>>& pairs,
                             std::uint64_t seed, int epochs) {
    std::vector<PairExample> corpus;
    for (const auto& [a, b, label] : pairs) {
      corpus.push_back({a, b, label, label == 1 ? PairSource::gold_positive : PairSource::beam_negative});
    }
    BaselineConfig config;
    config.seed = seed;
    config.epochs = epochs;
    py::gil_scoped_release release;
    return train_baseline(corpus, config);
  }, py::arg("pairs"), py::arg("seed") = 13, py::arg("epochs") = 400);

  m.def("separable_pairs", [](std::size_t count, std::uint64_t seed) {
    py::list out;
    for (const auto& p : make_separable_pairs(count, seed)) out.append(py::make_tuple(p.text_a, p.text_b, p.label));
    return out;
  }, py::arg("count"), py::arg("seed") = 7);

  // reranking and evaluation
  m.def("rule_permits", [](const std::vector<double>& scores, const std::string& rule, double floor, double margin) {
    RerankPolicy policy;
    policy.rule = parse_rule(rule);
    policy.score_floor = floor;
    policy.margin = margin;
    policy.validate();
    return rule_permits(scores, policy);
  }, py::arg("scores"), py::arg("rule"), py::arg("floor") = 0.5, py::arg("margin") = 0.001);

  m.def("rerank", [](const std::string& utterance, const std::vector<std::string>& beam,
                     const std::string& formalism, const std::vector<double>& scores, const std::string& rule) {
    // Scores given directly, one per candidate.
    struct Fixed final : Scorer {
      std::vector<double> values;
      std::string describe() const override { return "fixed"; }
      std::vector<double> raw_scores(std::span<const TextPair> pairs) const override {
        if (pairs.size() != values.size()) throw std::invalid_argument("need one score per candidate");
        return values;
      }
    } scorer;
    scorer.values = scores;
    RerankPolicy policy;
    policy.rule = parse_rule(rule);
    const auto result = rerank_one({"example", utterance, ""}, beam_from(beam, parse_formalism(formalism)),
                                   policy, scorer, {});
    py::dict out;
    out["chosen"] = serialize(result.chosen);
    out["chosen_rank"] = result.chosen_rank;
    out["reranked"] = result.reranked;
    out["fallback_reason"] =
        result.fallback_reason ? py::object(py::str(std::string(to_string(*result.fallback_reason)))) : py::none();
    return out;
  }, py::arg("utterance"), py::arg("beam"), py::arg("formalism"), py::arg("scores"), py::arg("rule") = "always");

  m.def("synthetic_oracle", [](std::size_t examples, std::size_t beam_size, std::uint64_t seed) {
    SyntheticConfig config;
    config.examples = examples;
    config.beam_size = beam_size;
    config.seed = seed;
    const auto corpus = make_synthetic_corpus(config);
    py::dict out;
    out["generator_top1"] = top1_accuracy(generator_top1(corpus.dataset, corpus.beams), corpus.dataset);
    for (int k : {1, static_cast<int>(beam_size)}) {
      out[py::str("oracle@" + std::to_string(k))] = oracle_at_k(corpus.beams, corpus.dataset, k);
    }
    return out;
  }, py::arg("examples") = 200, py::arg("beam_size") = 10, py::arg("seed") = 2020);

  m.def("run_demo", [](std::size_t examples, std::size_t train_examples, std::uint64_t seed) {
    DemoOptions options;
    options.examples = examples;
    options.train_examples = train_examples;
    options.seed = seed;
    DemoOutcome outcome;
    {
      py::gil_scoped_release release;
      outcome = run_demo(options);
    }
    py::dict rows;
    for (const auto& [label, report] : outcome.rows) rows[py::str(label)] = report_dict(report);
    py::dict out;
    out["rows"] = rows;
    out["critic_pair_accuracy"] = outcome.critic_pair_accuracy;
    out["text"] = outcome.text;
    return out;
  }, py::arg("examples") = 200, py::arg("train_examples") = 400, py::arg("seed") = 2020);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command line in-process; returns (exit code, stdout, stderr).");
}
