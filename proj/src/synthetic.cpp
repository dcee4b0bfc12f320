#include "semrerank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace semrerank {
namespace {

struct Term {
  std::string token;
  std::string phrase;
  std::vector<std::string> said_as;  // how utterances refer to it
};

struct DomainTable {
  std::string name;
  Term type;
  std::vector<Term> properties;
  std::vector<Term> values;
};

const std::vector<DomainTable>& domain_tables() {
  static const std::vector<DomainTable> tables = {
      {"basketball",
       {"type.player", "player", {"players", "player", "basketball players"}},
       {{"num_points", "number of points", {"points", "number of points", "scoring"}},
        {"num_assists", "number of assists", {"assists", "number of assists"}},
        {"num_rebounds", "number of rebounds", {"rebounds", "number of rebounds"}}},
       {{"3", "3", {"3", "three"}},
        {"5", "5", {"5", "five"}},
        {"10", "10", {"10", "ten"}},
        {"12", "12", {"12", "twelve"}}}},
      {"blocks",
       {"type.block", "block", {"blocks", "block"}},
       {{"color", "color", {"color", "colour"}},
        {"shape", "shape", {"shape", "form"}},
        {"height", "height", {"height", "tallness"}}},
       {{"en.color.red", "red", {"red"}},
        {"en.color.green", "green", {"green"}},
        {"en.shape.cube", "cube", {"cube", "a cube"}},
        {"en.shape.pyramid", "pyramid", {"pyramid", "a pyramid"}}}},
      {"calendar",
       {"type.meeting", "meeting", {"meetings", "meeting"}},
       {{"date", "date", {"date", "day"}},
        {"end_time", "end time", {"end time", "ending time"}},
        {"start_time", "start time", {"start time", "starting time"}}},
       {{"en.date.jan_2", "jan 2", {"january 2", "jan 2"}},
        {"en.date.jan_3", "jan 3", {"january 3", "jan 3"}},
        {"en.time.10am", "10 am", {"10 am", "ten am"}},
        {"en.time.3pm", "3 pm", {"3 pm", "three pm"}}}},
      {"housing",
       {"type.housing_unit", "housing unit", {"housing", "housing units", "apartments"}},
       {{"monthly_rent", "monthly rent", {"rent", "monthly rent"}},
        {"size", "size", {"size", "area"}},
        {"posting_date", "posting date", {"posting date", "listing date"}}},
       {{"en.address.123_sesame_street", "123 sesame street", {"123 sesame street"}},
        {"en.address.900_mission_ave", "900 mission ave", {"900 mission ave", "900 mission avenue"}},
        {"1500", "1500", {"1500"}},
        {"800", "800", {"800"}}}},
      {"publications",
       {"type.article", "article", {"articles", "papers"}},
       {{"venue", "venue", {"venue", "journal"}},
        {"publication_year", "publication year", {"year", "publication year"}},
        {"num_citations", "number of citations", {"citations", "number of citations"}}},
       {{"en.venue.annals_of_statistics", "annals of statistics", {"annals of statistics"}},
        {"en.venue.computational_linguistics", "computational linguistics", {"computational linguistics"}},
        {"2004", "2004", {"2004"}},
        {"2010", "2010", {"2010"}}}},
      {"recipes",
       {"type.recipe", "recipe", {"recipes", "dishes"}},
       {{"preparation_time", "preparation time", {"preparation time", "prep time"}},
        {"cooking_time", "cooking time", {"cooking time", "cook time"}},
        {"cuisine", "cuisine", {"cuisine", "style"}}},
       {{"en.recipe.rice_pudding", "rice pudding", {"rice pudding"}},
        {"en.recipe.quiche", "quiche", {"quiche"}},
        {"30", "30", {"30", "thirty"}},
        {"45", "45", {"45", "forty five"}}}},
      {"restaurants",
       {"type.restaurant", "restaurant", {"restaurants", "places to eat"}},
       {{"star_rating", "star rating", {"rating", "stars"}},
        {"price_rating", "price rating", {"price", "price rating"}},
        {"neighborhood", "neighborhood", {"neighborhood", "area"}}},
       {{"en.neighborhood.midtown", "midtown", {"midtown"}},
        {"en.neighborhood.chelsea", "chelsea", {"chelsea"}},
        {"3", "3", {"3", "three"}},
        {"5", "5", {"5", "five"}}}},
      {"social",
       {"type.person", "person", {"people", "persons"}},
       {{"birthdate", "birthdate", {"birthdate", "birthday"}},
        {"start_date", "start date", {"start date", "joining date"}},
        {"height", "height", {"height"}}},
       {{"en.person.alice", "alice", {"alice"}},
        {"en.person.bob", "bob", {"bob"}},
        {"2004", "2004", {"2004"}},
        {"2005", "2005", {"2005"}}}},
  };
  return tables;
}

const std::vector<Term>& comparators() {
  static const std::vector<Term> list = {
      {"=", "equal to", {"equal to", "exactly"}},
      {"!=", "not", {"not", "other than"}},
      {"<", "smaller than", {"smaller than", "less than", "below"}},
      {">", "larger than", {"larger than", "more than", "above"}},
      {"<=", "at most", {"at most", "no more than"}},
      {">=", "at least", {"at least", "no less than"}},
  };
  return list;
}

const std::vector<std::string>& utterance_templates() {
  static const std::vector<std::string> list = {
      "{t} whose {p} is {c} {v}", "show me {t} with {p} {c} {v}", "which {t} have {p} {c} {v}",
      "find {t} where the {p} is {c} {v}", "list {t} whose {p} is {c} {v}",
  };
  return list;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string replace_all(std::string text, std::string_view key, const std::string& value) {
  for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

struct Query {
  std::size_t property = 0;
  std::size_t comparator = 0;
  std::size_t value = 0;

  std::size_t distance(const Query& other) const {
    return (property != other.property) + (comparator != other.comparator) + (value != other.value);
  }
  friend bool operator==(const Query&, const Query&) = default;
};

LfTree query_form(const DomainTable& domain, const Query& q) {
  const auto text = "(filter " + domain.type.token + " " + domain.properties[q.property].token + " " +
                    comparators()[q.comparator].token + " " + domain.values[q.value].token + ")";
  return parse(text, Formalism::overnight);
}

// The canonical phrase three times in five, otherwise a paraphrase.
const std::string& mention(const Term& term, Rng& rng) {
  if (rng.below(5) < 3) return term.phrase;
  return rng.pick(term.said_as);
}

std::string query_utterance(const DomainTable& domain, const Query& q, Rng& rng) {
  auto text = rng.pick(utterance_templates());
  text = replace_all(text, "{t}", mention(domain.type, rng));
  text = replace_all(text, "{p}", mention(domain.properties[q.property], rng));
  text = replace_all(text, "{c}", mention(comparators()[q.comparator], rng));
  text = replace_all(text, "{v}", mention(domain.values[q.value], rng));
  return text;
}

std::string pad(std::size_t i) {
  auto s = std::to_string(i);
  return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

}  // namespace

const std::vector<std::string>& overnight_domains() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : domain_tables()) out.push_back(d.name);
    return out;
  }();
  return names;
}

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config) {
  if (config.beam_size == 0) throw std::invalid_argument("beam size must be >= 1");
  if (!(config.gold_in_beam >= 0 && config.gold_in_beam <= 1 && config.top1_correct >= 0 &&
        config.top1_correct <= config.gold_in_beam)) {
    throw std::invalid_argument("need 0 <= top1_correct <= gold_in_beam <= 1");
  }
  const auto n = config.examples;
  const auto in_beam = static_cast<std::size_t>(std::llround(config.gold_in_beam * static_cast<double>(n)));
  const auto at_top = static_cast<std::size_t>(std::llround(config.top1_correct * static_cast<double>(n)));
  if (config.beam_size == 1 && in_beam > at_top) {
    throw std::invalid_argument("a beam of size 1 cannot hold the gold below rank 1");
  }

  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  enum class Placement { top, lower, absent };
  std::vector<Placement> placement(n, Placement::absent);
  for (std::size_t k = 0; k < n; ++k) {
    placement[order[k]] = k < at_top ? Placement::top : (k < in_beam ? Placement::lower : Placement::absent);
  }

  std::vector<DatasetExample> examples;
  BeamSet beams;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& domain = domain_tables()[i % domain_tables().size()];
    const Query gold{rng.below(domain.properties.size()), rng.below(comparators().size()),
                     rng.below(domain.values.size())};

    std::vector<Query> others;
    for (std::size_t p = 0; p < domain.properties.size(); ++p) {
      for (std::size_t c = 0; c < comparators().size(); ++c) {
        for (std::size_t v = 0; v < domain.values.size(); ++v) {
          Query q{p, c, v};
          if (!(q == gold)) others.push_back(q);
        }
      }
    }
    if (others.size() < config.beam_size) throw std::invalid_argument("beam size exceeds distinct forms");
    rng.shuffle(others);
    std::stable_sort(others.begin(), others.end(), [&](const Query& a, const Query& b) {
      return a.distance(gold) < b.distance(gold);
    });

    std::vector<Query> ranked(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(config.beam_size));
    if (placement[i] == Placement::top) {
      ranked.pop_back();
      ranked.insert(ranked.begin(), gold);
    } else if (placement[i] == Placement::lower) {
      ranked.pop_back();
      const auto at = 1 + rng.below(config.beam_size - 1);
      ranked.insert(ranked.begin() + static_cast<std::ptrdiff_t>(at), gold);
    }

    const auto id = config.id_prefix + "-" + pad(i);
    std::vector<BeamCandidate> candidates;
    for (std::size_t r = 0; r < ranked.size(); ++r) {
      candidates.push_back({query_form(domain, ranked[r]), static_cast<int>(r + 1),
                            -0.25 * static_cast<double>(r)});
    }
    beams.emplace(id, Beam(std::move(candidates)));
    examples.push_back({{id, query_utterance(domain, gold, rng), domain.name}, query_form(domain, gold)});
  }
  return {Dataset(std::move(examples)), std::move(beams)};
}

const std::string& demo_grammar_text() {
  static const std::string text = [] {
    std::ostringstream out;
    out << "# Demo template grammar: one rule per line, `pattern => template`.\n"
           "# Slots are $1..$k; `:lit` takes a literal verbatim, `:atom` any leaf.\n"
           "# The first rule matching functor, arity and slot types wins.\n"
           "\n"
           "# superlatives\n"
           "arg max($1, $2) => $1 that has the largest $2\n"
           "arg min($1, $2) => $1 that has the smallest $2\n"
           "\n"
           "# filters\n"
           "filter($1, $2, $3, $4:lit) => $1 whose $2 is $3 $4\n"
           "filter($1, $2, $3, $4) => $1 whose $2 is $3 $4\n"
           "property_of($1, $2) => $1 of $2\n"
           "cites($1) => that cites $1\n"
           "cited_by($1) => that $1 cites\n"
           "\n"
           "# infix forms: Type.Meeting ⊓ EndTime. != 10\n"
           "and($1, $2) => $1 $2\n"
           "or($1, $2) => $1 or $2\n"
           "!=($1, $2:lit) => whose $1 is not $2\n"
           "\n"
           "# comparators\n";
    for (const auto& c : comparators()) out << c.token << " => " << c.phrase << '\n';
    out << "\n# entities and properties\n"
           "Type.Meeting => meeting\n"
           "EndTime. => end time\n"
           "numRebounds => number of rebounds\n"
           "en.article.multivariate_data_analysis => multivariate data analysis\n";
    std::set<std::string> seen{"Type.Meeting", "EndTime.", "numRebounds",
                               "en.article.multivariate_data_analysis"};
    for (const auto& d : domain_tables()) {
      std::vector<const Term*> terms{&d.type};
      for (const auto& p : d.properties) terms.push_back(&p);
      for (const auto& v : d.values) terms.push_back(&v);
      for (const auto* t : terms) {
        if (is_numeric_token(t->token) || !seen.insert(t->token).second) continue;
        out << t->token << " => " << t->phrase << '\n';
      }
    }
    return out.str();
  }();
  return text;
}

const std::string& demo_lexicon_text() {
  static const std::string text = [] {
    std::map<std::string, std::string> entries = {
        {"en.location.greenberg_cafe", "greenberg cafe"},
        {"numRebounds", "number of rebounds"},
        {"Type.Meeting", "meeting"},
        {"EndTime.", "end time"},
        {"st_petersburg:_ci", "st. petersburg"},
        {"charlotte:_ci", "charlotte"},
    };
    for (const auto& d : domain_tables()) {
      entries.emplace(d.type.token, d.type.phrase);
      for (const auto& p : d.properties) entries.emplace(p.token, p.phrase);
      for (const auto& v : d.values) {
        if (!is_numeric_token(v.token)) entries.emplace(v.token, v.phrase);
      }
    }
    std::ostringstream out;
    out << "# token<TAB>phrase\n";
    for (const auto& [token, phrase] : entries) out << token << '\t' << phrase << '\n';
    return out.str();
  }();
  return text;
}

std::vector<PairExample> make_separable_pairs(std::size_t count, std::uint64_t seed) {
  static const std::vector<std::string> syllables = {"ka", "lo", "mi", "nu", "pe", "ra", "si", "to",
                                                     "va", "ze", "bo", "du", "fi", "ga", "he", "jo"};
  std::vector<std::string> vocabulary;
  for (const auto& a : syllables) {
    for (const auto& b : syllables) {
      for (const auto& c : {"n", "r", "s"}) vocabulary.push_back(a + b + c);
    }
  }

  Rng rng(seed);
  auto fresh_words = [&](std::size_t k, const std::set<std::string>& avoid) {
    std::vector<std::string> out;
    std::set<std::string> used = avoid;
    while (out.size() < k) {
      const auto& w = rng.pick(vocabulary);
      if (used.insert(w).second) out.push_back(w);
    }
    return out;
  };
  auto join = [](const std::vector<std::string>& words) {
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
    return s;
  };

  std::vector<PairExample> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t length = 8 + rng.below(5);
    const auto base = fresh_words(length, {});
    const std::set<std::string> base_set(base.begin(), base.end());
    std::vector<std::size_t> positions(length);
    for (std::size_t k = 0; k < length; ++k) positions[k] = k;
    rng.shuffle(positions);

    std::vector<std::string> other;
    const bool positive = i % 2 == 0;
    if (positive) {
      const auto min_keep = static_cast<std::size_t>(std::ceil(0.6 * static_cast<double>(length)));
      const auto keep = min_keep + rng.below(length - min_keep + 1);
      other = base;
      const auto replacements = fresh_words(length - keep, base_set);
      for (std::size_t k = 0; k < replacements.size(); ++k) other[positions[k]] = replacements[k];
    } else {
      const auto max_copy = static_cast<std::size_t>(std::floor(0.2 * static_cast<double>(length)));
      const auto copy = rng.below(max_copy + 1);
      other = fresh_words(length, base_set);
      for (std::size_t k = 0; k < copy; ++k) other[positions[k]] = base[positions[k]];
    }
    pairs.push_back({join(base), join(other), positive ? 1 : 0,
                     positive ? PairSource::gold_positive : PairSource::beam_negative});
  }
  return pairs;
}

}  // namespace semrerank
