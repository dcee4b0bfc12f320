#include "semrerank/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "semrerank/errors.hpp"

namespace semrerank {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Splits on whitespace and rejoins with single spaces.
std::string squeeze(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot open ") + what + " file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string_view to_string(ProcessingMethod method) {
  switch (method) {
    case ProcessingMethod::raw:
      return "raw";
    case ProcessingMethod::entity_names:
      return "entity_names";
    case ProcessingMethod::templated:
      return "templated";
  }
  return "unknown";
}

ProcessingMethod parse_method(std::string_view name) {
  if (name == "raw") return ProcessingMethod::raw;
  if (name == "entity_names" || name == "entity-names") return ProcessingMethod::entity_names;
  if (name == "templated") return ProcessingMethod::templated;
  throw std::invalid_argument("unknown processing method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// EntityLexicon

void EntityLexicon::add(std::string token, std::string phrase) {
  if (token.empty()) throw LexiconError("empty lexicon token");
  phrase = squeeze(phrase);
  if (phrase.empty()) throw LexiconError("empty phrase for token " + token);
  if (std::any_of(phrase.begin(), phrase.end(),
                  [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; })) {
    throw LexiconError("phrase for token " + token + " is not lowercase: " + phrase);
  }
  if (!entries_.emplace(token, std::move(phrase)).second) {
    throw LexiconError("duplicate lexicon token " + token);
  }
}

std::optional<std::string_view> EntityLexicon::lookup(std::string_view token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

EntityLexicon EntityLexicon::parse(std::string_view text, const std::string& source) {
  EntityLexicon lexicon;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = lines[i];
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw LexiconError(source + ":" + std::to_string(i + 1) + ": expected token<TAB>phrase");
    }
    try {
      lexicon.add(std::string(trim(line.substr(0, tab))), std::string(line.substr(tab + 1)));
    } catch (const LexiconError& e) {
      throw LexiconError(source + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return lexicon;
}

EntityLexicon EntityLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path, "lexicon"), path.string());
}

// ---------------------------------------------------------------------------
// TemplateGrammar

bool TemplateRule::matches(const LfNode& node) const {
  if (node.token != functor || node.children.size() != slots.size()) return false;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& child = node.children[i];
    if (slots[i] == SlotType::literal && child.kind != NodeKind::literal) return false;
    if (slots[i] == SlotType::atom && !child.is_atom()) return false;
  }
  return true;
}

namespace {

std::size_t find_arrow(std::string_view line) {
  for (std::size_t pos = line.find("=>"); pos != std::string_view::npos;
       pos = line.find("=>", pos + 1)) {
    const bool before = pos == 0 || is_space(line[pos - 1]);
    const bool after = pos + 2 == line.size() || is_space(line[pos + 2]);
    if (before && after) return pos;
  }
  return std::string_view::npos;
}

SlotType parse_slot(std::string_view text, std::size_t expected, std::size_t line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '$') {
    throw GrammarError("expected slot $" + std::to_string(expected) + ", found '" +
                       std::string(text) + "'", line);
  }
  std::size_t i = 1;
  std::size_t index = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    index = index * 10 + static_cast<std::size_t>(text[i] - '0');
    ++i;
  }
  if (i == 1 || index != expected) {
    throw GrammarError("pattern slots must be numbered $1..$k in order; expected $" +
                       std::to_string(expected), line);
  }
  if (i == text.size()) return SlotType::any;
  if (text[i] != ':') throw GrammarError("malformed slot '" + std::string(text) + "'", line);
  auto type = text.substr(i + 1);
  if (type == "any") return SlotType::any;
  if (type == "lit" || type == "literal") return SlotType::literal;
  if (type == "atom") return SlotType::atom;
  throw GrammarError("unknown slot type '" + std::string(type) + "'", line);
}

void parse_pattern(std::string_view pattern, TemplateRule& rule) {
  auto open = pattern.find('(');
  if (open == std::string_view::npos) {
    rule.functor = std::string(pattern);
    if (pattern.find(')') != std::string_view::npos || pattern.find(',') != std::string_view::npos) {
      throw GrammarError("malformed pattern '" + std::string(pattern) + "'", rule.line);
    }
  } else {
    rule.functor = std::string(trim(pattern.substr(0, open)));
    if (pattern.back() != ')') {
      throw GrammarError("pattern must end with ')': '" + std::string(pattern) + "'", rule.line);
    }
    auto inner = pattern.substr(open + 1, pattern.size() - open - 2);
    if (trim(inner).empty()) {
      throw GrammarError("empty argument list; write the functor alone", rule.line);
    }
    std::size_t start = 0;
    while (true) {
      auto comma = inner.find(',', start);
      auto piece = inner.substr(start, comma == std::string_view::npos ? inner.size() - start
                                                                        : comma - start);
      rule.slots.push_back(parse_slot(piece, rule.slots.size() + 1, rule.line));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (rule.functor.empty()) throw GrammarError("pattern has no functor", rule.line);
}

void parse_template(std::string_view text, TemplateRule& rule) {
  std::string pending;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '(' || c == ')') {
      throw GrammarError("templates may not contain parentheses", rule.line);
    }
    if (c != '$') {
      pending += c;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    std::size_t index = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      index = index * 10 + static_cast<std::size_t>(text[j] - '0');
      ++j;
    }
    if (j == i + 1) throw GrammarError("stray '$' in template", rule.line);
    if (index == 0 || index > rule.slots.size()) {
      throw GrammarError("template references unbound slot $" + std::to_string(index), rule.line);
    }
    if (!pending.empty()) rule.pieces.push_back({std::move(pending), -1});
    pending.clear();
    rule.pieces.push_back({"", static_cast<int>(index - 1)});
    i = j;
  }
  if (!pending.empty()) rule.pieces.push_back({std::move(pending), -1});
}

}  // namespace

TemplateGrammar TemplateGrammar::parse(std::string_view text) {
  TemplateGrammar grammar;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    TemplateRule rule;
    rule.line = i + 1;
    auto arrow = find_arrow(line);
    if (arrow == std::string_view::npos) throw GrammarError("expected 'pattern => template'", rule.line);
    parse_pattern(trim(line.substr(0, arrow)), rule);
    parse_template(trim(line.substr(arrow + 2)), rule);
    grammar.rules_.push_back(std::move(rule));
  }
  return grammar;
}

TemplateGrammar TemplateGrammar::load(const std::filesystem::path& path) {
  return parse(read_file(path, "grammar"));
}

const TemplateRule* TemplateGrammar::match(const LfNode& node) const {
  for (const auto& rule : rules_) {
    if (rule.matches(node)) return &rule;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Methods

std::string process_raw(const LfTree& lf) { return serialize(lf); }

std::string naturalize_token(std::string_view token, const EntityLexicon& lexicon) {
  if (token == "(" || token == ")" || token == ",") return std::string(token);
  if (auto phrase = lexicon.lookup(token)) return std::string(*phrase);
  if (token.size() > 1 && token.front() == '_') {
    std::string spaced(token.substr(1));
    std::replace(spaced.begin(), spaced.end(), '_', ' ');
    auto out = squeeze(spaced);
    if (!out.empty()) return out;
  }
  return std::string(token);
}

namespace {

template <typename Tokens>
std::string naturalize_tokens(const Tokens& tokens, const EntityLexicon& lexicon) {
  std::string out;
  for (const auto& token : tokens) {
    auto word = naturalize_token(token, lexicon);
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

std::string naturalize(const LfTree& lf, const EntityLexicon& lexicon) {
  return naturalize_tokens(surface_tokens(lf), lexicon);
}

std::string naturalize_text(std::string_view text, const EntityLexicon& lexicon) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return naturalize_tokens(tokens, lexicon);
}

namespace {

bool expand_node(const LfNode& node, const TemplateGrammar& grammar, std::string& out) {
  const TemplateRule* rule = grammar.match(node);
  if (rule == nullptr) return false;
  for (const auto& piece : rule->pieces) {
    if (piece.slot < 0) {
      out += piece.text;
      continue;
    }
    const auto& child = node.children[static_cast<std::size_t>(piece.slot)];
    if (rule->slots[static_cast<std::size_t>(piece.slot)] == SlotType::any) {
      if (!expand_node(child, grammar, out)) return false;
    } else {
      out += child.token;
    }
  }
  return true;
}

}  // namespace

std::optional<std::string> expand_template(const LfTree& lf, const TemplateGrammar& grammar) {
  std::string out;
  if (!expand_node(lf.root(), grammar, out)) return std::nullopt;
  return squeeze(out);
}

void require_resources(ProcessingMethod method, const Resources& resources) {
  if (method == ProcessingMethod::entity_names && resources.lexicon == nullptr) {
    throw MissingResource("entity_names processing needs an entity lexicon");
  }
  if (method == ProcessingMethod::templated && resources.grammar == nullptr) {
    throw MissingResource("templated processing needs a template grammar");
  }
}

std::optional<std::string> process_one(const LfTree& lf, ProcessingMethod method,
                                       const Resources& resources) {
  require_resources(method, resources);
  switch (method) {
    case ProcessingMethod::raw:
      return process_raw(lf);
    case ProcessingMethod::entity_names:
      return naturalize(lf, *resources.lexicon);
    case ProcessingMethod::templated:
      return expand_template(lf, *resources.grammar);
  }
  return std::nullopt;
}

std::vector<ProcessedCandidate> process(const Beam& beam, ProcessingMethod method,
                                        const Resources& resources) {
  require_resources(method, resources);
  std::vector<ProcessedCandidate> out;
  out.reserve(beam.size());
  for (const auto& candidate : beam) {
    out.push_back({candidate.rank, method, process_one(candidate.lf, method, resources)});
  }
  return out;
}

}  // namespace semrerank
