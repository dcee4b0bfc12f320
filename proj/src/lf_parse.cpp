#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "semrerank/errors.hpp"
#include "semrerank/lf.hpp"

namespace semrerank {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_control(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u < 0x20 && !is_space(c)) || u == 0x7f;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  void advance(std::size_t n = 1) { pos_ += n; }
  std::string_view text() const { return text_; }

  void skip_space() {
    while (!eof() && is_space(peek())) ++pos_;
    if (!eof() && is_control(peek())) fail("unexpected control character");
  }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
    throw SyntaxError(message, pos);
  }

  void expect_end() {
    skip_space();
    if (!eof()) fail(std::string("unexpected trailing input '") + peek() + "'");
  }

  // Reads a quoted string starting at the current quote character; supports
  // backslash escapes for the quote character and the backslash itself.
  std::string read_quoted() {
    const char quote = peek();
    const std::size_t start = pos_;
    advance();
    std::string value;
    while (true) {
      if (eof()) fail_at("unterminated string", start);
      char c = peek();
      if (c == quote) {
        advance();
        return value;
      }
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        c = peek();
      }
      value += c;
      advance();
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

LfNode make_atom(std::string token, NodeKind fallback) {
  if (is_numeric_token(token)) return LfNode::literal(std::move(token));
  return {fallback, std::move(token), {}};
}

// FunQL: name | name '(' term (',' term)* ')' | quoted literal. Unquoted
// names may contain inner spaces ("new york"), which collapse to one space.
class FunqlParser {
 public:
  explicit FunqlParser(std::string_view text) : in_(text) {}

  LfTree run() {
    LfNode root = term();
    in_.expect_end();
    return {Formalism::funql, std::move(root)};
  }

 private:
  static bool structural(char c) { return c == '(' || c == ')' || c == ',' || c == '\'' || c == '"'; }

  LfNode term() {
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    const char c = in_.peek();
    if (c == '\'' || c == '"') return LfNode::literal(in_.read_quoted());
    if (structural(c)) in_.fail(std::string("unexpected '") + c + "'");

    std::string name;
    bool pending_space = false;
    while (!in_.eof() && !structural(in_.peek())) {
      const char ch = in_.peek();
      if (is_control(ch)) in_.fail("unexpected control character");
      if (is_space(ch)) {
        pending_space = true;
      } else {
        if (pending_space && !name.empty()) name += ' ';
        pending_space = false;
        name += ch;
      }
      in_.advance();
    }

    if (!in_.eof() && in_.peek() == '(') {
      in_.advance();
      std::vector<LfNode> args;
      in_.skip_space();
      if (!in_.eof() && in_.peek() == ')') {
        in_.advance();
        return LfNode::entity(std::move(name));
      }
      while (true) {
        args.push_back(term());
        in_.skip_space();
        if (in_.eof()) in_.fail("unexpected end of input");
        if (in_.peek() == ',') {
          in_.advance();
          continue;
        }
        if (in_.peek() == ')') {
          in_.advance();
          break;
        }
        in_.fail(std::string("expected ',' or ')' but found '") + in_.peek() + "'");
      }
      return LfNode::apply(std::move(name), std::move(args));
    }
    return make_atom(std::move(name), NodeKind::entity);
  }

  Cursor in_;
};

// Lambda calculus: s-expressions over whitespace-separated words. Words
// starting with '$' are variables; a configured binder applied to a variable
// becomes a binder node.
class LambdaParser {
 public:
  LambdaParser(std::string_view text, const LfConfig& config) : in_(text), config_(config) {}

  LfTree run() {
    LfNode root = term();
    in_.expect_end();
    return {Formalism::lambda, std::move(root)};
  }

 private:
  std::string word() {
    const std::size_t start = in_.pos();
    while (!in_.eof()) {
      const char c = in_.peek();
      if (is_space(c) || c == '(' || c == ')') break;
      if (c == ',') in_.fail("unexpected ','");
      if (is_control(c)) in_.fail("unexpected control character");
      in_.advance();
    }
    return std::string(in_.text().substr(start, in_.pos() - start));
  }

  LfNode term() {
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    const char c = in_.peek();
    if (c == ')') in_.fail("unexpected ')'");
    if (c == ',') in_.fail("unexpected ','");
    if (c != '(') {
      std::string w = word();
      if (w.front() == '$') return LfNode::variable(std::move(w));
      return make_atom(std::move(w), NodeKind::entity);
    }
    in_.advance();
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    if (in_.peek() == '(' || in_.peek() == ')') in_.fail("expected functor");
    std::string head = word();
    std::vector<LfNode> args;
    while (true) {
      in_.skip_space();
      if (in_.eof()) in_.fail("unexpected end of input");
      if (in_.peek() == ')') {
        in_.advance();
        break;
      }
      args.push_back(term());
    }
    if (!args.empty() && args.front().kind == NodeKind::variable && config_.binders.contains(head)) {
      return {NodeKind::binder, std::move(head), std::move(args)};
    }
    return LfNode::apply(std::move(head), std::move(args));
  }

  Cursor in_;
  const LfConfig& config_;
};

// Overnight-style expressions. Accepts prefix s-expressions, call notation
// with (possibly multi-word) functors such as "arg max(a, b)", and the infix
// operators ⊓ (and), ⊔ (or) and the comparisons, e.g.
// "Type.Meeting ⊓ EndTime. != 10" reads as (and Type.Meeting (!= EndTime. 10)).
class OvernightParser {
 public:
  explicit OvernightParser(std::string_view text) : in_(text) {}

  LfTree run() {
    LfNode root = disjunction();
    in_.expect_end();
    return {Formalism::overnight, std::move(root)};
  }

 private:
  static constexpr std::string_view kMeet = "\xE2\x8A\x93";  // ⊓
  static constexpr std::string_view kJoin = "\xE2\x8A\x94";  // ⊔

  static bool is_comparison(std::string_view w) {
    return w == "!=" || w == "=" || w == "<" || w == ">" || w == "<=" || w == ">=";
  }
  static bool is_operator(std::string_view w) { return w == kMeet || w == kJoin || is_comparison(w); }

  static bool word_char(char c) {
    return !is_space(c) && c != '(' && c != ')' && c != ',' && c != '"';
  }

  std::string_view peek_word() {
    in_.skip_space();
    std::size_t end = in_.pos();
    const auto text = in_.text();
    while (end < text.size() && word_char(text[end])) {
      if (is_control(text[end])) in_.fail_at("unexpected control character", end);
      ++end;
    }
    return text.substr(in_.pos(), end - in_.pos());
  }

  std::string take_word() {
    std::string w(peek_word());
    in_.advance(w.size());
    return w;
  }

  LfNode chain(std::string_view op, const char* functor, LfNode (OvernightParser::*next)()) {
    std::vector<LfNode> items;
    items.push_back((this->*next)());
    while (peek_word() == op) {
      in_.advance(op.size());
      items.push_back((this->*next)());
    }
    if (items.size() == 1) return std::move(items.front());
    return LfNode::apply(functor, std::move(items));
  }

  LfNode disjunction() { return chain(kJoin, "or", &OvernightParser::conjunction); }
  LfNode conjunction() { return chain(kMeet, "and", &OvernightParser::comparison); }

  LfNode comparison() {
    LfNode lhs = primary();
    const auto w = peek_word();
    if (!is_comparison(w)) return lhs;
    std::string op = take_word();
    LfNode rhs = primary();
    return LfNode::apply(std::move(op), {std::move(lhs), std::move(rhs)});
  }

  LfNode primary() {
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    const char c = in_.peek();
    if (c == '(') return sexpr();
    if (c == '"') return LfNode::literal(in_.read_quoted());
    if (c == ')' || c == ',') in_.fail(std::string("unexpected '") + c + "'");

    if (is_operator(peek_word())) in_.fail("unexpected operator '" + std::string(peek_word()) + "'");
    std::vector<std::string> words{take_word()};
    std::size_t second_word_at = 0;
    while (true) {
      const auto w = peek_word();
      if (w.empty() || is_operator(w)) break;
      if (words.size() == 1) second_word_at = in_.pos();
      words.push_back(take_word());
    }
    in_.skip_space();
    if (!in_.eof() && in_.peek() == '(') {
      std::string name;
      for (const auto& w : words) name += (name.empty() ? "" : " ") + w;
      return call(std::move(name));
    }
    if (words.size() > 1) in_.fail_at("juxtaposed atoms without an operator", second_word_at);
    return make_atom(std::move(words.front()), NodeKind::entity);
  }

  LfNode call(std::string name) {
    in_.advance();  // '('
    in_.skip_space();
    if (!in_.eof() && in_.peek() == ')') {
      if (name.find(' ') != std::string::npos) in_.fail("multi-word functor '" + name + "' needs arguments");
      in_.advance();
      return LfNode::entity(std::move(name));
    }
    std::vector<LfNode> args;
    while (true) {
      args.push_back(disjunction());
      in_.skip_space();
      if (in_.eof()) in_.fail("unexpected end of input");
      if (in_.peek() == ',') {
        in_.advance();
        continue;
      }
      if (in_.peek() == ')') {
        in_.advance();
        break;
      }
      in_.fail(std::string("expected ',' or ')' but found '") + in_.peek() + "'");
    }
    return LfNode::apply(std::move(name), std::move(args));
  }

  LfNode sexpr_item() {
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    const char c = in_.peek();
    if (c == '(') return sexpr();
    if (c == '"') return LfNode::literal(in_.read_quoted());
    if (c == ',') in_.fail("unexpected ','");
    return make_atom(take_word(), NodeKind::entity);
  }

  LfNode sexpr() {
    in_.advance();  // '('
    in_.skip_space();
    if (in_.eof()) in_.fail("unexpected end of input");
    std::string head;
    bool quoted = false;
    const char c = in_.peek();
    if (c == '"') {
      head = in_.read_quoted();
      quoted = true;
    } else if (c == '(' || c == ')' || c == ',') {
      in_.fail("expected functor");
    } else {
      head = take_word();
    }
    std::vector<LfNode> args;
    while (true) {
      in_.skip_space();
      if (in_.eof()) in_.fail("unexpected end of input");
      if (in_.peek() == ')') {
        in_.advance();
        break;
      }
      args.push_back(sexpr_item());
    }
    if (quoted && args.empty()) in_.fail("quoted functor '" + head + "' needs arguments");
    return LfNode::apply(std::move(head), std::move(args));
  }

  Cursor in_;
};

}  // namespace

LfTree parse(std::string_view text, Formalism formalism, const LfConfig& config) {
  switch (formalism) {
    case Formalism::funql:
      return FunqlParser(text).run();
    case Formalism::lambda:
      return LambdaParser(text, config).run();
    case Formalism::overnight:
      return OvernightParser(text).run();
  }
  throw SyntaxError("unknown formalism", 0);
}

LfTree parse(std::string_view text, Formalism formalism) {
  return parse(text, formalism, LfConfig::defaults(formalism));
}

}  // namespace semrerank
