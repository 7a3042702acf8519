#pragma once

// Integer signature trees. The (alpha, beta)-Euclid tree is rooted at
// (alpha, alpha, 2*alpha + beta) with branches
//   G1(a, b, c) = (b, c, b + c + beta)
//   G2(a, b, c) = (a, c, a + c + beta).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "markoff/error.hpp"

namespace markoff::euclid {

using i64 = std::int64_t;

struct EuclidTriple {
  i64 tau1, tau2, tau3;

  i64 max() const { return std::max({tau1, tau2, tau3}); }
  friend auto operator<=>(const EuclidTriple&, const EuclidTriple&) = default;
  std::string to_string() const {
    return "(" + std::to_string(tau1) + "," + std::to_string(tau2) + "," + std::to_string(tau3) + ")";
  }
};

struct TreeId {
  i64 alpha = 1;
  i64 beta = 0;
  friend auto operator<=>(const TreeId&, const TreeId&) = default;
};

inline constexpr i64 kDefaultLayerBudget = i64{1} << 22;

namespace detail {

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit overflow in Euclid tree");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit overflow in Euclid tree");
  return r;
}

inline void check_id(const TreeId& id) {
  if (id.alpha < 1 || id.beta < 0) throw Error(ErrorCode::InvalidArgument, "need alpha >= 1 and beta >= 0");
}

}  // namespace detail

inline EuclidTriple root(const TreeId& id) {
  detail::check_id(id);
  return {id.alpha, id.alpha, detail::checked_add(2 * id.alpha, id.beta)};
}

inline EuclidTriple euclid_branch(const EuclidTriple& T, i64 beta, int branch) {
  if (T.tau1 < 1 || T.tau2 < 1 || T.tau3 < 1) throw Error(ErrorCode::InvalidArgument, "components must be positive");
  if (branch == 1) return {T.tau2, T.tau3, detail::checked_add(detail::checked_add(T.tau2, T.tau3), beta)};
  if (branch == 2) return {T.tau1, T.tau3, detail::checked_add(detail::checked_add(T.tau1, T.tau3), beta)};
  throw Error(ErrorCode::InvalidArgument, "branch must be 1 or 2");
}

/// L_j as a deduplicated set (both root branches give the same triple).
inline std::set<EuclidTriple> layer(const TreeId& id, int j, i64 budget = kDefaultLayerBudget) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "layer index must be non-negative");
  if (j > 62 || (i64{1} << (j > 0 ? j - 1 : 0)) > budget) {
    throw Error(ErrorCode::BudgetExceeded, "layer " + std::to_string(j) + " exceeds budget");
  }
  std::set<EuclidTriple> current{root(id)};
  for (int step = 0; step < j; ++step) {
    std::set<EuclidTriple> next;
    for (const auto& T : current) {
      next.insert(euclid_branch(T, id.beta, 1));
      next.insert(euclid_branch(T, id.beta, 2));
    }
    current = std::move(next);
  }
  return current;
}

/// (b, c, d) with b <= c is on the (1,0)-tree iff d = b + c and gcd(b, c) = 1.
inline bool on_unit_tree(const EuclidTriple& T) {
  return T.tau1 >= 1 && T.tau1 <= T.tau2 && T.tau3 == T.tau1 + T.tau2 && std::gcd(T.tau1, T.tau2) == 1;
}

/// (b, c, d) on the (1,0)-tree -> (b*alpha + (b-1)*beta, ...).
inline EuclidTriple map_unit(const EuclidTriple& unit, const TreeId& id) {
  detail::check_id(id);
  if (!on_unit_tree(unit)) throw Error(ErrorCode::NotOnUnitTree, unit.to_string() + " is not on the (1,0)-tree");
  auto f = [&](i64 b) {
    return detail::checked_add(detail::checked_mul(b, id.alpha), detail::checked_mul(b - 1, id.beta));
  };
  return {f(unit.tau1), f(unit.tau2), f(unit.tau3)};
}

struct GammaReduction {
  EuclidTriple root;
  i64 steps = 0;
};

/// Iterates gamma(a, b, a+b) = (a, b-a, b) if b >= a, else (b, a-b, a),
/// until a == b. Runs of equal-branch steps are taken in one division, so
/// the step count matches the one-at-a-time iteration without its cost.
inline GammaReduction gamma_reduce(const EuclidTriple& T) {
  if (T.tau1 < 1 || T.tau2 < 1) throw Error(ErrorCode::InvalidArgument, "components must be positive");
  if (T.tau3 != T.tau1 + T.tau2) throw Error(ErrorCode::NotEuclidSum, T.to_string() + " has tau3 != tau1 + tau2");
  i64 a = T.tau1;
  i64 b = T.tau2;
  i64 steps = 0;
  while (a != b) {
    if (b > a) {
      // b - k*a <= a for the smallest such k
      const i64 k = (b - 1) / a;
      b -= k * a;
      steps += k;
    } else {
      const i64 na = b;
      b = a - b;
      a = na;
      ++steps;
    }
  }
  return {{a, a, 2 * a}, steps};
}

/// Which (alpha, beta)-tree, if any, contains T. For a tree triple,
/// (tau + beta) = (alpha + beta) * (b, c, d) with (b, c, d) on the
/// (1,0)-tree, so alpha + beta must be gcd(tau1 + beta, tau2 + beta).
inline std::optional<TreeId> membership(const EuclidTriple& T, i64 beta) {
  if (beta < 0) throw Error(ErrorCode::InvalidArgument, "beta must be non-negative");
  if (T.tau1 < 1 || T.tau2 < T.tau1 || T.tau3 <= T.tau2) return std::nullopt;
  const i64 s1 = detail::checked_add(T.tau1, beta);
  const i64 s2 = detail::checked_add(T.tau2, beta);
  const i64 s3 = detail::checked_add(T.tau3, beta);
  const i64 scale = std::gcd(s1, s2);
  if (scale <= beta || s3 % scale != 0) return std::nullopt;
  const EuclidTriple unit{s1 / scale, s2 / scale, s3 / scale};
  if (!on_unit_tree(unit)) return std::nullopt;
  return TreeId{scale - beta, beta};
}

}  // namespace markoff::euclid
