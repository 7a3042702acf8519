#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "markoff/error.hpp"
#include "markoff/surface.hpp"

namespace markoff {

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 22;

/// Node of a Markoff tree. `triple` is sorted; `branch` is 0 at the root and
/// otherwise the sigma that produced this node from its parent.
struct MarkoffTree {
  MarkoffTriple triple;
  int branch = 0;
  std::vector<MarkoffTree> children;  // empty, or {sigma_1 child, sigma_2 child}

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

namespace detail {

inline MarkoffTree grow(const MarkoffContext& ctx, MarkoffTriple node, int branch, int depth) {
  MarkoffTree t{std::move(node), branch, {}};
  if (depth == 0) return t;
  t.children.reserve(2);
  for (int b : {1, 2}) {
    t.children.push_back(grow(ctx, sort_triple(apply_sigma(ctx, t.triple, b)).first, b, depth - 1));
  }
  return t;
}

}  // namespace detail

/// Complete binary tree of the given depth (2^(depth+1) - 1 nodes).
inline MarkoffTree generate_tree(const MarkoffContext& ctx, const MarkoffTriple& root, int depth,
                                 std::uint64_t node_budget = kDefaultNodeBudget) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be non-negative");
  if (depth >= 62 || (std::uint64_t{2} << depth) - 1 > node_budget) {
    throw Error(ErrorCode::BudgetExceeded, "tree of depth " + std::to_string(depth) + " exceeds node budget " +
                                               std::to_string(node_budget));
  }
  require_solution(ctx, root);
  return detail::grow(ctx, sort_triple(root).first, 0, depth);
}

/// Pre-order walk; the callback gets (node, depth).
inline void for_each_node(const MarkoffTree& tree, const std::function<void(const MarkoffTree&, int)>& fn,
                          int depth = 0) {
  fn(tree, depth);
  for (const auto& c : tree.children) for_each_node(c, fn, depth + 1);
}

/// One line per node, indented two spaces per level.
inline std::string tree_to_text(const MarkoffTree& tree, RenderStyle style) {
  std::ostringstream out;
  for_each_node(tree, [&](const MarkoffTree& n, int depth) {
    out << std::string(2 * static_cast<std::size_t>(depth), ' ');
    if (n.branch != 0) out << "s" << n.branch << " ";
    out << render_triple(n.triple, style) << "\n";
  });
  return out.str();
}

inline std::string tree_to_dot(const MarkoffTree& tree, RenderStyle style) {
  std::ostringstream out;
  out << "digraph markoff_tree {\n  node [shape=box];\n";
  int next_id = 0;
  std::function<int(const MarkoffTree&)> emit = [&](const MarkoffTree& n) {
    const int id = next_id++;
    out << "  n" << id << " [label=\"" << render_triple(n.triple, style) << "\"];\n";
    for (const auto& c : n.children) {
      const int child = emit(c);
      out << "  n" << id << " -> n" << child << " [label=\"s" << c.branch << "\"];\n";
    }
    return id;
  };
  emit(tree);
  out << "}\n";
  return out.str();
}

}  // namespace markoff
