#include "semrerank/lf.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "lf_internal.hpp"

namespace semrerank {

std::string_view to_string(Formalism formalism) {
  switch (formalism) {
    case Formalism::funql:
      return "funql";
    case Formalism::lambda:
      return "lambda";
    case Formalism::overnight:
      return "overnight";
  }
  return "unknown";
}

Formalism parse_formalism(std::string_view name) {
  if (name == "funql" || name == "geo") return Formalism::funql;
  if (name == "lambda" || name == "atis") return Formalism::lambda;
  if (name == "overnight") return Formalism::overnight;
  throw std::invalid_argument("unknown formalism '" + std::string(name) + "'");
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::application:
      return "application";
    case NodeKind::variable:
      return "variable";
    case NodeKind::entity:
      return "entity";
    case NodeKind::literal:
      return "literal";
    case NodeKind::binder:
      return "binder";
  }
  return "unknown";
}

LfNode LfNode::apply(std::string functor, std::vector<LfNode> children) {
  if (children.empty()) return entity(std::move(functor));
  return {NodeKind::application, std::move(functor), std::move(children)};
}

LfNode LfNode::binder(std::string functor, std::string var, std::vector<LfNode> rest) {
  std::vector<LfNode> children;
  children.reserve(rest.size() + 1);
  children.push_back(variable(std::move(var)));
  for (auto& child : rest) children.push_back(std::move(child));
  return {NodeKind::binder, std::move(functor), std::move(children)};
}

std::size_t LfNode::depth() const noexcept {
  std::size_t deepest = 0;
  for (const auto& child : children) deepest = std::max(deepest, child.depth());
  return deepest + 1;
}

std::size_t LfNode::size() const noexcept {
  std::size_t total = 1;
  for (const auto& child : children) total += child.size();
  return total;
}

const LfConfig& LfConfig::defaults(Formalism formalism) {
  static const LfConfig funql{};
  static const LfConfig lambda{
      {"_lambda", "lambda", "_exists", "exists", "_forall", "forall", "_argmax", "argmax",
       "_argmin", "argmin", "_count", "count", "_sum", "sum", "_max", "_min", "_the", "the"},
      {"_and", "_or"}};
  static const LfConfig overnight{{}, {"and", "or"}};
  switch (formalism) {
    case Formalism::funql:
      return funql;
    case Formalism::lambda:
      return lambda;
    case Formalism::overnight:
      return overnight;
  }
  return funql;
}

std::string NormalForm::text() const {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

bool is_numeric_token(std::string_view token) noexcept {
  std::size_t i = 0;
  if (i < token.size() && (token[i] == '-' || token[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i, ++digits;
  if (i < token.size() && token[i] == '.') {
    ++i;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < token.size() && (token[i] == 'e' || token[i] == 'E')) {
    ++i;
    if (i < token.size() && (token[i] == '-' || token[i] == '+')) ++i;
    std::size_t exp_digits = 0;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == token.size();
}

namespace detail {

std::string quote(std::string_view text, char quote_char) {
  std::string out(1, quote_char);
  for (char c : text) {
    if (c == quote_char || c == '\\') out += '\\';
    out += c;
  }
  out += quote_char;
  return out;
}

namespace {

bool needs_overnight_quotes(std::string_view token) {
  if (token.empty()) return true;
  return std::any_of(token.begin(), token.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
           c == '"';
  });
}

}  // namespace

std::string atom_text(const LfNode& node, Formalism formalism) {
  if (node.kind == NodeKind::literal && !is_numeric_token(node.token)) {
    switch (formalism) {
      case Formalism::funql:
        return quote(node.token, '\'');
      case Formalism::overnight:
        return quote(node.token, '"');
      case Formalism::lambda:
        break;
    }
  }
  return node.token;
}

std::string head_text(const LfNode& node, Formalism formalism) {
  if (formalism == Formalism::overnight && needs_overnight_quotes(node.token)) {
    return quote(node.token, '"');
  }
  return node.token;
}

std::string compose(const std::string& head, const std::vector<std::string>& children,
                    Formalism formalism) {
  std::string out;
  if (formalism == Formalism::funql) {
    out = head + " (";
    for (std::size_t i = 0; i < children.size(); ++i) {
      out += i == 0 ? " " : " , ";
      out += children[i];
    }
    out += " )";
  } else {
    out = "( " + head;
    for (const auto& child : children) {
      out += ' ';
      out += child;
    }
    out += " )";
  }
  return out;
}

}  // namespace detail

namespace {

void emit(const LfNode& node, Formalism formalism, std::vector<std::string>& out) {
  if (node.is_atom()) {
    out.push_back(detail::atom_text(node, formalism));
    return;
  }
  if (formalism == Formalism::funql) {
    out.push_back(detail::head_text(node, formalism));
    out.emplace_back("(");
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i > 0) out.emplace_back(",");
      emit(node.children[i], formalism, out);
    }
    out.emplace_back(")");
    return;
  }
  out.emplace_back("(");
  out.push_back(detail::head_text(node, formalism));
  for (const auto& child : node.children) emit(child, formalism, out);
  out.emplace_back(")");
}

}  // namespace

std::vector<std::string> surface_tokens(const LfTree& tree) {
  std::vector<std::string> out;
  emit(tree.root(), tree.formalism(), out);
  return out;
}

std::string serialize(const LfTree& tree) {
  return NormalForm{surface_tokens(tree), tree.formalism()}.text();
}

}  // namespace semrerank
