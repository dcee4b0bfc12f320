#pragma once

// Turning candidate logical forms into text for the critic: raw
// serialization, entity names, or template expansion to a canonical
// utterance.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semrerank/data.hpp"
#include "semrerank/lf.hpp"

namespace semrerank {

enum class ProcessingMethod { raw, entity_names, templated };

std::string_view to_string(ProcessingMethod method);
ProcessingMethod parse_method(std::string_view name);

// token -> natural-language phrase. Phrases are non-empty and lowercase.
class EntityLexicon {
 public:
  // Throws LexiconError on duplicate keys or invalid phrases.
  void add(std::string token, std::string phrase);
  std::optional<std::string_view> lookup(std::string_view token) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return entries_; }

  // TSV, one `token<TAB>phrase` per line; blank lines and '#' lines ignored.
  static EntityLexicon parse(std::string_view text, const std::string& source = "<lexicon>");
  static EntityLexicon load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

enum class SlotType {
  any,      // expanded recursively through the grammar
  literal,  // must be a literal; its text is inserted verbatim
  atom,     // any leaf; its token is inserted verbatim
};

struct TemplateRule {
  std::string functor;
  std::vector<SlotType> slots;
  // Alternating pieces of the template: text, or a 0-based slot reference.
  struct Piece {
    std::string text;
    int slot = -1;
  };
  std::vector<Piece> pieces;
  std::size_t line = 0;

  bool matches(const LfNode& node) const;
};

// Ordered rules `pattern => template`; the first rule matching a node's
// functor, arity and slot types wins. Example:
//   arg max($1, $2) => $1 that has the largest $2
//   !=($1, $2:lit) => whose $1 is not $2
//   type.player => player
class TemplateGrammar {
 public:
  // Throws GrammarError for malformed rules or unbound slot references.
  static TemplateGrammar parse(std::string_view text);
  static TemplateGrammar load(const std::filesystem::path& path);

  const std::vector<TemplateRule>& rules() const noexcept { return rules_; }
  const TemplateRule* match(const LfNode& node) const;

 private:
  std::vector<TemplateRule> rules_;
};

struct Resources {
  const EntityLexicon* lexicon = nullptr;
  const TemplateGrammar* grammar = nullptr;
};

std::string process_raw(const LfTree& lf);

// Lexicon lookup first; otherwise tokens with a leading underscore lose it
// and their inner underscores become spaces ("_departure_time" ->
// "departure time"). Everything else passes through.
std::string naturalize_token(std::string_view token, const EntityLexicon& lexicon);
std::string naturalize(const LfTree& lf, const EntityLexicon& lexicon);
// Same rules over a whitespace-tokenized string.
std::string naturalize_text(std::string_view text, const EntityLexicon& lexicon);

// nullopt when some subtree has no matching rule (the candidate is EXCLUDED).
std::optional<std::string> expand_template(const LfTree& lf, const TemplateGrammar& grammar);

// nullopt = EXCLUDED. Throws MissingResource if the method needs a resource
// that is absent.
std::optional<std::string> process_one(const LfTree& lf, ProcessingMethod method,
                                       const Resources& resources);

struct ProcessedCandidate {
  int rank = 0;
  ProcessingMethod method = ProcessingMethod::raw;
  std::optional<std::string> text;

  bool excluded() const noexcept { return !text.has_value(); }
};

std::vector<ProcessedCandidate> process(const Beam& beam, ProcessingMethod method,
                                        const Resources& resources);

void require_resources(ProcessingMethod method, const Resources& resources);

}  // namespace semrerank
