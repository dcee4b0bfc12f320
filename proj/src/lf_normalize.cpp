#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lf_internal.hpp"
#include "semrerank/errors.hpp"
#include "semrerank/lf.hpp"

namespace semrerank {
namespace {

// Two passes. The first sorts the arguments of unordered functors bottom-up,
// keyed by a rendering in which bound variables are written as binder
// distances (#0 = innermost binder), so the key of a subtree does not depend
// on the names its variables happen to carry or on the order of its
// siblings. The second renames binders to $0, $1, ... in pre-order.
class Canonicalizer {
 public:
  Canonicalizer(Formalism formalism, const LfConfig& config)
      : formalism_(formalism), config_(config) {}

  LfNode run(LfNode root) {
    std::vector<std::string> scope;
    sort_unordered(root, scope);
    std::vector<std::pair<std::string, std::string>> renames;
    std::size_t counter = 0;
    rename(root, renames, counter);
    return root;
  }

 private:
  std::string variable_key(const std::string& name, const std::vector<std::string>& scope) const {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == name) return "#" + std::to_string(scope.size() - 1 - i);
    }
    if (formalism_ == Formalism::lambda) throw UnboundVariable(name);
    return name;
  }

  std::string sort_unordered(LfNode& node, std::vector<std::string>& scope) {
    if (node.is_atom()) {
      if (node.kind == NodeKind::variable) return variable_key(node.token, scope);
      return detail::atom_text(node, formalism_);
    }

    std::vector<std::string> keys(node.children.size());
    if (node.kind == NodeKind::binder) {
      scope.push_back(node.children.front().token);
      keys.front() = "#";
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        keys[i] = sort_unordered(node.children[i], scope);
      }
      scope.pop_back();
    } else {
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        keys[i] = sort_unordered(node.children[i], scope);
      }
      if (config_.unordered.contains(node.token)) {
        std::vector<std::size_t> order(keys.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
        std::vector<LfNode> children;
        std::vector<std::string> sorted_keys;
        children.reserve(order.size());
        sorted_keys.reserve(order.size());
        for (auto i : order) {
          children.push_back(std::move(node.children[i]));
          sorted_keys.push_back(std::move(keys[i]));
        }
        node.children = std::move(children);
        keys = std::move(sorted_keys);
      }
    }
    return detail::compose(detail::head_text(node, formalism_), keys, formalism_);
  }

  static void rename(LfNode& node, std::vector<std::pair<std::string, std::string>>& renames,
                     std::size_t& counter) {
    if (node.kind == NodeKind::variable) {
      for (auto it = renames.rbegin(); it != renames.rend(); ++it) {
        if (it->first == node.token) {
          node.token = it->second;
          return;
        }
      }
      return;
    }
    if (node.kind == NodeKind::binder) {
      auto& var = node.children.front();
      renames.emplace_back(var.token, "$" + std::to_string(counter++));
      var.token = renames.back().second;
      for (std::size_t i = 1; i < node.children.size(); ++i) rename(node.children[i], renames, counter);
      renames.pop_back();
      return;
    }
    for (auto& child : node.children) rename(child, renames, counter);
  }

  Formalism formalism_;
  const LfConfig& config_;
};

}  // namespace

LfTree canonicalize(const LfTree& tree, const LfConfig& config) {
  return {tree.formalism(), Canonicalizer(tree.formalism(), config).run(tree.root())};
}

LfTree canonicalize(const LfTree& tree) {
  return canonicalize(tree, LfConfig::defaults(tree.formalism()));
}

NormalForm normalize(const LfTree& tree, const LfConfig& config) {
  return {surface_tokens(canonicalize(tree, config)), tree.formalism()};
}

NormalForm normalize(const LfTree& tree) {
  return normalize(tree, LfConfig::defaults(tree.formalism()));
}

bool lf_equal(const LfTree& a, const LfTree& b, const LfConfig& config) {
  if (a.formalism() != b.formalism()) {
    throw FormalismMismatch("cannot compare " + std::string(to_string(a.formalism())) + " with " +
                            std::string(to_string(b.formalism())));
  }
  return normalize(a, config).tokens == normalize(b, config).tokens;
}

bool lf_equal(const LfTree& a, const LfTree& b) {
  return lf_equal(a, b, LfConfig::defaults(a.formalism()));
}

}  // namespace semrerank
