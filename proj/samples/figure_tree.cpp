// Grows two levels of the tree over (t, i*t, i*t^3) with A = t and p = 13, then
// walks the deepest node back to its fundamental triple.

#include <iostream>

#include "markoff.hpp"

int main() {
  using namespace markoff;
  const PrimeModulus p13(13);
  const MarkoffContext ctx(Polynomial::t(p13));
  const auto style = preferred_style(p13);

  const auto root = make_root(ctx, Polynomial::t(p13), 1, 1, RootFamily::zero);
  const auto tree = generate_tree(ctx, root, 2);
  std::cout << tree_to_text(tree, style);

  const auto& deepest = tree.children[1].children[1].triple;
  const auto d = descend(ctx, deepest);
  std::cout << "\n" << render_triple(deepest, style) << " descends to " << render_triple(d.fundamental, style)
            << " via";
  for (const auto& g : d.word) std::cout << " " << to_string(g);
  std::cout << "\n";
}
