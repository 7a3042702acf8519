#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include "markoff.hpp"

namespace markoff {

inline void PrintTo(const Polynomial& f, std::ostream* os) { *os << render_poly(f) << " (mod " << f.p() << ")"; }

inline void PrintTo(const MarkoffTriple& P, std::ostream* os) {
  *os << render_triple(P, RenderStyle::plain) << " (mod " << P.modulus().value() << ")";
}

}  // namespace markoff

namespace markoff::testing {

inline Polynomial P(const std::string& text, u64 p) { return parse_poly(text, PrimeModulus(p)); }

inline MarkoffTriple T(const std::string& text, u64 p) { return parse_triple(text, PrimeModulus(p)); }

inline MarkoffContext ctx_of(const std::string& A, u64 p) { return MarkoffContext(P(A, p)); }

/// Uniform polynomial of degree exactly `deg` (zero when deg < 0).
inline Polynomial random_poly(std::mt19937_64& rng, PrimeModulus mod, int deg) {
  if (deg < 0) return Polynomial::zero(mod);
  std::vector<u64> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = rng() % mod.value();
  while (c.back() == 0) c.back() = rng() % mod.value();
  return Polynomial(mod, std::move(c));
}

inline Polynomial random_poly_upto(std::mt19937_64& rng, PrimeModulus mod, int max_deg) {
  return random_poly(rng, mod, static_cast<int>(rng() % static_cast<u64>(max_deg + 2)) - 1);
}

/// Random node of depth <= max_depth on a random tree for A.
inline MarkoffTriple random_node(std::mt19937_64& rng, const MarkoffContext& ctx, int max_depth) {
  const auto mod = ctx.modulus();
  const Polynomial f = random_poly(rng, mod, 1 + static_cast<int>(rng() % 2));
  const int a = rng() % 2 ? 1 : -1;
  const int s = rng() % 2 ? 1 : -1;
  const auto family = ctx.constant_A() && rng() % 2 ? RootFamily::constant : RootFamily::zero;
  MarkoffTriple node = make_root(ctx, f, a, s, family);
  const int depth = static_cast<int>(rng() % static_cast<u64>(max_depth + 1));
  for (int k = 0; k < depth; ++k) node = sort_triple(apply_sigma(ctx, node, 1 + static_cast<int>(rng() % 2))).first;
  return node;
}

}  // namespace markoff::testing
