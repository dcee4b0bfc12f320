#pragma once

// Logical forms: parsing, serialization, normalization and exact-match
// equality for FunQL, lambda-calculus and Overnight-style expressions.

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semrerank {

enum class Formalism { funql, lambda, overnight };

std::string_view to_string(Formalism formalism);
// Throws std::invalid_argument for unknown names.
Formalism parse_formalism(std::string_view name);

enum class NodeKind { application, variable, entity, literal, binder };

std::string_view to_string(NodeKind kind);

struct LfNode {
  NodeKind kind = NodeKind::entity;
  std::string token;
  std::vector<LfNode> children;

  static LfNode entity(std::string token) { return {NodeKind::entity, std::move(token), {}}; }
  static LfNode literal(std::string token) { return {NodeKind::literal, std::move(token), {}}; }
  static LfNode variable(std::string token) { return {NodeKind::variable, std::move(token), {}}; }
  // A functor applied to nothing is just its name; it comes back as an entity.
  static LfNode apply(std::string functor, std::vector<LfNode> children);
  // binder(functor, var, rest...) -> binder node whose first child is `var`.
  static LfNode binder(std::string functor, std::string var, std::vector<LfNode> rest);

  bool is_atom() const noexcept { return children.empty(); }
  std::size_t depth() const noexcept;
  std::size_t size() const noexcept;

  friend bool operator==(const LfNode&, const LfNode&) = default;
};

class LfTree {
 public:
  LfTree(Formalism formalism, LfNode root) : formalism_(formalism), root_(std::move(root)) {}

  Formalism formalism() const noexcept { return formalism_; }
  const LfNode& root() const noexcept { return root_; }

  friend bool operator==(const LfTree&, const LfTree&) = default;

 private:
  Formalism formalism_;
  LfNode root_;
};

// Which functors bind a variable and which take their arguments unordered.
struct LfConfig {
  std::set<std::string, std::less<>> binders;
  std::set<std::string, std::less<>> unordered;

  static const LfConfig& defaults(Formalism formalism);
};

struct NormalForm {
  std::vector<std::string> tokens;
  Formalism formalism = Formalism::funql;

  std::string text() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

// Throws SyntaxError (with the byte offset) on malformed input.
LfTree parse(std::string_view text, Formalism formalism);
LfTree parse(std::string_view text, Formalism formalism, const LfConfig& config);

// Surface tokens, e.g. {"answer", "(", "state", ...}. serialize() joins them
// with single spaces; parse(serialize(t)) == t for every tree parse() can
// produce.
std::vector<std::string> surface_tokens(const LfTree& tree);
std::string serialize(const LfTree& tree);

// True when the token would be read back as a numeric literal.
bool is_numeric_token(std::string_view token) noexcept;

// Sorts unordered arguments and renames bound variables to $0, $1, ... in
// pre-order. Throws UnboundVariable for free variables in lambda forms.
LfTree canonicalize(const LfTree& tree);
LfTree canonicalize(const LfTree& tree, const LfConfig& config);
NormalForm normalize(const LfTree& tree);
NormalForm normalize(const LfTree& tree, const LfConfig& config);

// Exact match on normal forms. Throws FormalismMismatch.
bool lf_equal(const LfTree& a, const LfTree& b);
bool lf_equal(const LfTree& a, const LfTree& b, const LfConfig& config);

}  // namespace semrerank
