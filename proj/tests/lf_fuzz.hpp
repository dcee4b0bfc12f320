#pragma once

// Test-side helpers for logical forms: a random tree generator per
// formalism, variant makers (argument shuffles, variable renames, small
// mutations) and a brute-force equivalence check that tries every
// permutation of unordered arguments. The oracle shares no code with the
// library's normalizer.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semrerank/lf.hpp"

namespace fuzz {

using semrerank::Formalism;
using semrerank::LfConfig;
using semrerank::LfNode;
using semrerank::LfTree;
using semrerank::NodeKind;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(int percent) { return below(100) < static_cast<std::size_t>(percent); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// generators

class Generator {
 public:
  Generator(Formalism formalism, std::uint64_t seed) : formalism_(formalism), rng_(seed) {}

  LfTree tree() {
    std::vector<std::string> scope;
    switch (formalism_) {
      case Formalism::funql:
        return {formalism_, funql(0)};
      case Formalism::lambda:
        return {formalism_, lambda_binder(0, scope)};
      case Formalism::overnight:
        return {formalism_, overnight(0)};
    }
    return {formalism_, LfNode::entity("x")};
  }

  Rng& rng() { return rng_; }

 private:
  static constexpr std::size_t kMaxDepth = 5;

  LfNode funql(std::size_t depth) {
    static const std::vector<std::string> functors = {"answer", "state", "city", "next_to_2", "loc_1",
                                                      "largest", "count", "exclude", "intersection",
                                                      "population_1", "river", "most"};
    static const std::vector<std::string> atoms = {"all", "texas", "new york", "cityid", "usa"};
    static const std::vector<std::string> literals = {"texas", "austin tx", "new york", "mississippi",
                                                      "it's", "a,b"};
    if (depth >= kMaxDepth || rng_.chance(30)) {
      switch (rng_.below(3)) {
        case 0:
          return LfNode::entity(rng_.pick(atoms));
        case 1:
          return LfNode::literal(rng_.pick(literals));
        default:
          return LfNode::literal(std::to_string(rng_.below(5000)));
      }
    }
    std::vector<LfNode> children;
    const auto arity = 1 + rng_.below(3);
    for (std::size_t i = 0; i < arity; ++i) children.push_back(funql(depth + 1));
    return LfNode::apply(rng_.pick(functors), std::move(children));
  }

  std::string lambda_var(std::vector<std::string>& scope) {
    // Occasionally reuse an in-scope name to exercise shadowing.
    if (!scope.empty() && rng_.chance(10)) return rng_.pick(scope);
    static const std::vector<std::string> names = {"$0", "$1", "$2", "$3", "$x", "$y", "$v9"};
    return rng_.pick(names);
  }

  LfNode lambda_binder(std::size_t depth, std::vector<std::string>& scope) {
    static const std::vector<std::string> binders = {"_lambda", "_exists", "_argmax", "_the", "_count"};
    const auto var = lambda_var(scope);
    scope.push_back(var);
    std::vector<LfNode> rest;
    if (rng_.chance(50)) rest.push_back(LfNode::entity("e"));
    rest.push_back(lambda_formula(depth + 1, scope));
    if (rng_.chance(20)) rest.push_back(lambda_formula(depth + 1, scope));
    scope.pop_back();
    return LfNode::binder(rng_.pick(binders), var, std::move(rest));
  }

  LfNode lambda_term(std::vector<std::string>& scope) {
    static const std::vector<std::string> entities = {"st_petersburg:_ci", "charlotte:_ci", "boston:_ci",
                                                      "dl:_al", "ci0", "1200:_ti"};
    if (!scope.empty() && rng_.chance(65)) return LfNode::variable(rng_.pick(scope));
    if (rng_.chance(15)) return LfNode::literal(std::to_string(rng_.below(3000)));
    return LfNode::entity(rng_.pick(entities));
  }

  LfNode lambda_formula(std::size_t depth, std::vector<std::string>& scope) {
    static const std::vector<std::string> predicates = {"_flight", "_from", "_to", "_airline",
                                                        "_departure_time", "_fare_amount", ">", "="};
    static const std::vector<std::string> connectives = {"_and", "_or", "_and", "_not"};
    if (depth >= kMaxDepth || rng_.chance(35)) {
      std::vector<LfNode> args;
      const auto arity = 1 + rng_.below(2);
      for (std::size_t i = 0; i < arity; ++i) args.push_back(lambda_term(scope));
      return LfNode::apply(rng_.pick(predicates), std::move(args));
    }
    if (rng_.chance(25)) return lambda_binder(depth, scope);
    const auto& head = rng_.pick(connectives);
    const auto arity = head == "_not" ? 1 : 2 + rng_.below(3);
    std::vector<LfNode> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(lambda_formula(depth + 1, scope));
    // Duplicated conjuncts make ties in the sort.
    if (arity > 1 && rng_.chance(15)) args.back() = args.front();
    return LfNode::apply(head, std::move(args));
  }

  LfNode overnight(std::size_t depth) {
    static const std::vector<std::string> functors = {"and", "or", "filter", "arg max", "count",
                                                      "!=", "<=", "property_of", "and"};
    static const std::vector<std::string> atoms = {"type.player", "numRebounds", "Type.Meeting", "EndTime.",
                                                   "en.location.greenberg_cafe", "en.person.alice"};
    static const std::vector<std::string> literals = {"10 am", "alice", "jan 2", "x\"y"};
    if (depth >= kMaxDepth || rng_.chance(30)) {
      switch (rng_.below(3)) {
        case 0:
          return LfNode::entity(rng_.pick(atoms));
        case 1:
          return LfNode::literal(rng_.pick(literals));
        default:
          return LfNode::literal(std::to_string(rng_.below(100)));
      }
    }
    const auto& head = rng_.pick(functors);
    const auto arity = 1 + rng_.below(head == "and" || head == "or" ? 4 : 3);
    std::vector<LfNode> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(overnight(depth + 1));
    if (arity > 1 && rng_.chance(10)) args.back() = args.front();
    return LfNode::apply(head, std::move(args));
  }

  Formalism formalism_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// variants

inline void shuffle_unordered(LfNode& node, const LfConfig& config, Rng& rng) {
  for (auto& child : node.children) shuffle_unordered(child, config, rng);
  if (node.kind == NodeKind::application && config.unordered.contains(node.token)) {
    std::shuffle(node.children.begin(), node.children.end(), rng.engine());
  }
}

// Renames every binder to a fresh name, rewriting its bound occurrences.
inline void rename_binders(LfNode& node, std::vector<std::pair<std::string, std::string>>& scope,
                           std::size_t& counter, const std::string& prefix) {
  if (node.kind == NodeKind::variable) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == node.token) {
        node.token = it->second;
        break;
      }
    }
    return;
  }
  if (node.kind == NodeKind::binder) {
    auto fresh = prefix + std::to_string(counter++);
    scope.emplace_back(node.children.front().token, fresh);
    node.children.front().token = fresh;
    for (std::size_t i = 1; i < node.children.size(); ++i) rename_binders(node.children[i], scope, counter, prefix);
    scope.pop_back();
    return;
  }
  for (auto& child : node.children) rename_binders(child, scope, counter, prefix);
}

inline LfTree variant(const LfTree& tree, Rng& rng) {
  LfNode root = tree.root();
  shuffle_unordered(root, LfConfig::defaults(tree.formalism()), rng);
  std::vector<std::pair<std::string, std::string>> scope;
  std::size_t counter = rng.below(50);
  rename_binders(root, scope, counter, rng.chance(50) ? "$r" : "$");
  return {tree.formalism(), std::move(root)};
}

// A small random edit that usually, but not always, changes the meaning.
inline LfTree mutate(const LfTree& tree, Rng& rng) {
  LfNode root = tree.root();
  std::vector<LfNode*> nodes;
  auto collect = [&](auto&& self, LfNode& n) -> void {
    nodes.push_back(&n);
    for (auto& c : n.children) self(self, c);
  };
  collect(collect, root);
  LfNode& target = *nodes[rng.below(nodes.size())];
  switch (rng.below(3)) {
    case 0:
      if (target.children.size() >= 2 && target.kind != NodeKind::binder) {
        std::swap(target.children.front(), target.children.back());
      }
      break;
    case 1:
      if (target.kind == NodeKind::entity || target.kind == NodeKind::literal) target.token += "_m";
      break;
    default:
      if (target.kind == NodeKind::application && !target.children.empty()) {
        target.children.push_back(target.children.front());
      }
      break;
  }
  return {tree.formalism(), std::move(root)};
}

// ---------------------------------------------------------------------------
// brute-force equivalence

class Oracle {
 public:
  explicit Oracle(const LfConfig& config) : config_(config) {}

  bool equivalent(const LfTree& a, const LfTree& b) {
    if (a.formalism() != b.formalism()) return false;
    std::vector<std::string> sa;
    std::vector<std::string> sb;
    return same(a.root(), b.root(), sa, sb);
  }

 private:
  static std::optional<std::size_t> binding(const std::vector<std::string>& scope, const std::string& name) {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == name) return i;
    }
    return std::nullopt;
  }

  bool same(const LfNode& a, const LfNode& b, std::vector<std::string>& sa, std::vector<std::string>& sb) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == NodeKind::variable) {
      const auto ia = binding(sa, a.token);
      const auto ib = binding(sb, b.token);
      if (ia || ib) return ia == ib;
      return a.token == b.token;
    }
    if (a.token != b.token) return false;
    if (a.kind == NodeKind::binder) {
      sa.push_back(a.children.front().token);
      sb.push_back(b.children.front().token);
      bool ok = true;
      for (std::size_t i = 1; ok && i < a.children.size(); ++i) ok = same(a.children[i], b.children[i], sa, sb);
      sa.pop_back();
      sb.pop_back();
      return ok;
    }
    if (a.kind == NodeKind::application && config_.unordered.contains(a.token)) {
      std::vector<std::size_t> perm(b.children.size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (std::size_t i = 0; ok && i < perm.size(); ++i) ok = same(a.children[i], b.children[perm[i]], sa, sb);
        if (ok) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
      if (!same(a.children[i], b.children[i], sa, sb)) return false;
    }
    return true;
  }

  const LfConfig& config_;
};

}  // namespace fuzz
