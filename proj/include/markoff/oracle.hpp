#pragma once

// Brute-force ground truth for the counting formulas: exhaustive solution
// enumeration over small F_q[t] and direct walks of Euclid trees.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "markoff/counting.hpp"
#include "markoff/error.hpp"
#include "markoff/euclid.hpp"
#include "markoff/poly.hpp"
#include "markoff/surface.hpp"

namespace markoff::oracle {

using i64 = std::int64_t;
using counting::Rational;

inline constexpr std::uint64_t kDefaultCandidateBudget = 1'000'000'000;

enum class EnumerationConvention { ordered, degree_sorted };

inline const char* to_string(EnumerationConvention c) {
  return c == EnumerationConvention::ordered ? "ordered" : "degree_sorted";
}

inline EnumerationConvention parse_convention(const std::string& s) {
  if (s == "ordered") return EnumerationConvention::ordered;
  if (s == "degree_sorted") return EnumerationConvention::degree_sorted;
  throw Error(ErrorCode::InvalidArgument, "unknown convention '" + s + "'");
}

/// All polynomials of degree <= max_degree, in base-q counting order.
inline std::vector<Polynomial> all_polynomials(PrimeModulus mod, int max_degree) {
  const u64 q = mod.value();
  std::vector<Polynomial> out;
  std::vector<u64> digits(static_cast<std::size_t>(max_degree) + 1, 0);
  for (;;) {
    out.emplace_back(mod, digits);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

/// q^(2(max_height+1)) (x, y) pairs, or nullopt past 2^64.
inline std::optional<std::uint64_t> candidate_pairs(PrimeModulus mod, int max_height) {
  std::uint64_t pairs = 1;
  for (int k = 0; k < 2 * (max_height + 1); ++k) {
    if (__builtin_mul_overflow(pairs, mod.value(), &pairs)) return std::nullopt;
  }
  return pairs;
}

struct EnumerationOptions {
  std::uint64_t budget = kDefaultCandidateBudget;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Every (x, y, z) with all degrees <= max_height, not all constant, on the
/// surface. For each (x, y) the equation is a monic quadratic in z with
/// discriminant (Axy)^2 - 4(x^2 + y^2); z exists in F_q[t] iff that
/// discriminant is a square there. The result is sorted lexicographically,
/// independent of how the pair space was split across workers.
inline std::vector<MarkoffTriple> enumerate_solutions(const MarkoffContext& ctx, int max_height,
                                                      EnumerationConvention convention,
                                                      const EnumerationOptions& opts = {}) {
  if (max_height < 0) throw Error(ErrorCode::InvalidArgument, "max_height must be non-negative");
  const PrimeModulus mod = ctx.modulus();
  const auto pairs = candidate_pairs(mod, max_height);
  if (!pairs || *pairs > opts.budget) {
    throw Error(ErrorCode::BudgetExceeded, "enumeration needs q^(2(h+1)) candidate pairs, over budget " +
                                               std::to_string(opts.budget));
  }

  const auto polys = all_polynomials(mod, max_height);
  std::vector<Polynomial> squares;
  squares.reserve(polys.size());
  for (const auto& f : polys) squares.push_back(f * f);
  const FieldElement half = FieldElement(2, mod).inv();
  const FieldElement four(4, mod);
  const bool sorted_only = convention == EnumerationConvention::degree_sorted;

  auto scan = [&](std::size_t begin, std::size_t end, std::vector<MarkoffTriple>& out) {
    for (std::size_t xi = begin; xi < end; ++xi) {
      const Polynomial& x = polys[xi];
      const Polynomial Ax = ctx.A() * x;
      for (std::size_t yi = 0; yi < polys.size(); ++yi) {
        const Polynomial& y = polys[yi];
        if (sorted_only && x.degree() > y.degree()) continue;
        const Polynomial b = Ax * y;
        const Polynomial disc = b * b - four * (squares[xi] + squares[yi]);
        const auto root = poly_sqrt(disc);
        if (!root) continue;
        for (int s = 0; s < 2; ++s) {
          if (s == 1 && root->is_zero()) break;  // double root
          Polynomial z = half * (s == 0 ? b + *root : b - *root);
          if (z.degree() > max_height) continue;
          if (sorted_only && z.degree() < y.degree()) continue;
          if (x.is_constant() && y.is_constant() && z.is_constant()) continue;
          out.emplace_back(x, y, std::move(z));
        }
      }
    }
  };

  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, polys.size()));
  std::vector<std::vector<MarkoffTriple>> partial(workers);
  if (workers == 1) {
    scan(0, polys.size(), partial[0]);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (polys.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(polys.size(), w * chunk);
      const std::size_t end = std::min(polys.size(), begin + chunk);
      threads.emplace_back([&, begin, end, w] { scan(begin, end, partial[w]); });
    }
  }
  std::vector<MarkoffTriple> result;
  for (auto& part : partial) {
    for (auto& t : part) result.push_back(std::move(t));
  }
  std::sort(result.begin(), result.end());
  return result;
}

enum class DescentOutcome {
  fundamental,          // already fundamental after sorting
  reaches_fundamental,  // predecessors end at a fundamental triple
  reaches_constant,     // predecessors end at an all-constant solution
};

/// Follows predecessors without recording the word. The third outcome is
/// specific to non-constant A: (c, +-i*c, +-i*A*c^2) with c constant lies
/// above the constant solution (c, +-i*c, 0).
inline DescentOutcome descent_outcome(const MarkoffContext& ctx, const MarkoffTriple& P) {
  MarkoffTriple current = sort_triple(P).first;
  if (is_fundamental(current)) return DescentOutcome::fundamental;
  for (;;) {
    const MarkoffTriple prev = apply_generator(ctx, current, Rho{});
    if (prev.height() <= 0) return DescentOutcome::reaches_constant;
    current = sort_triple(prev).first;
    if (is_fundamental(current)) return DescentOutcome::reaches_fundamental;
  }
}

struct CensusReport {
  u64 q = 0;
  Polynomial A;
  int n = 0;
  EnumerationConvention convention = EnumerationConvention::degree_sorted;
  i64 total = 0;
  i64 fundamental_count = 0;
  i64 nonfundamental_count = 0;
  /// Part of nonfundamental_count whose descent ends at a constant solution.
  i64 constant_descent_count = 0;
  // Closed-form side; absent for constant A, where no formula is given.
  std::optional<i64> formula_value;
  std::optional<i64> fundamental_term;     // d = 1 term
  std::optional<i64> nonfundamental_term;  // sum of d > 1 terms
  // count / term; absent when the term is zero or there is no formula.
  std::optional<Rational> fundamental_ratio;
  std::optional<Rational> nonfundamental_ratio;
  /// (nonfundamental_count - constant_descent_count) / nonfundamental_term.
  std::optional<Rational> regular_nonfundamental_ratio;

  explicit CensusReport(Polynomial a) : A(std::move(a)) {}
};

/// Height-exactly-n solutions split into fundamental and non-fundamental
/// classes (after sorting), each set beside the matching divisor-sum terms.
inline CensusReport census(const MarkoffContext& ctx, int n, EnumerationConvention convention,
                           const EnumerationOptions& opts = {}) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "height must be positive");
  CensusReport r(ctx.A());
  r.q = ctx.modulus().value();
  r.n = n;
  r.convention = convention;
  for (const auto& P : enumerate_solutions(ctx, n, convention, opts)) {
    if (P.height() != n) continue;
    ++r.total;
    switch (descent_outcome(ctx, P)) {
      case DescentOutcome::fundamental:
        ++r.fundamental_count;
        break;
      case DescentOutcome::reaches_constant:
        ++r.constant_descent_count;
        [[fallthrough]];
      case DescentOutcome::reaches_fundamental:
        ++r.nonfundamental_count;
        break;
    }
  }
  if (!ctx.constant_A()) {
    const auto formula = counting::count_finite_field(static_cast<i64>(r.q), ctx.beta(), n);
    i64 fund = 0, nonfund = 0;
    for (const auto& t : formula.terms) (t.d == 1 ? fund : nonfund) += t.multiplier * t.E;
    r.formula_value = formula.value;
    r.fundamental_term = fund;
    r.nonfundamental_term = nonfund;
    if (fund != 0) r.fundamental_ratio = Rational(r.fundamental_count, fund);
    if (nonfund != 0) {
      r.nonfundamental_ratio = Rational(r.nonfundamental_count, nonfund);
      r.regular_nonfundamental_ratio = Rational(r.nonfundamental_count - r.constant_descent_count, nonfund);
    }
  }
  return r;
}

// --- Euclid tree oracles ---------------------------------------------------

inline constexpr i64 kMaxOracleE = 10'000;
inline constexpr i64 kMaxOracleCBeta = 500;

namespace detail {

/// Triples with maximum exactly n on the (alpha, beta)-tree, by depth-first
/// walk pruned once the smaller child's maximum tau1 + tau3 + beta passes n.
/// The root's two children coincide and are visited once.
inline i64 count_tree_max(const euclid::TreeId& id, i64 n) {
  const auto root = euclid::root(id);
  if (root.tau3 > n) return 0;
  i64 count = 0;
  std::vector<euclid::EuclidTriple> stack{root};
  while (!stack.empty()) {
    const auto T = stack.back();
    stack.pop_back();
    if (T.tau3 == n) ++count;
    if (T.tau1 + T.tau3 + id.beta > n) continue;
    stack.push_back(euclid::euclid_branch(T, id.beta, 2));
    const bool is_root = T.tau1 == T.tau2;
    if (!is_root && T.tau2 + T.tau3 + id.beta <= n) stack.push_back(euclid::euclid_branch(T, id.beta, 1));
  }
  return count;
}

}  // namespace detail

/// E(n) by walking the (1,0)-tree.
inline i64 oracle_E(i64 n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (n > kMaxOracleE) throw Error(ErrorCode::BudgetExceeded, "oracle_E limited to n <= 10^4");
  if (n == 1) return 1;
  return detail::count_tree_max({1, 0}, n);
}

/// E(n) as #{b : 1 <= b <= n/2, gcd(b, n) = 1}.
inline i64 oracle_E_coprime(i64 n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (n == 1) return 1;
  i64 count = 0;
  for (i64 b = 1; 2 * b <= n; ++b) count += std::gcd(b, n) == 1;
  return count;
}

/// 1 + number of triples with maximum n over all (alpha, beta)-trees.
inline i64 oracle_C_beta(i64 beta, i64 n) {
  if (beta < 0 || n < 1) throw Error(ErrorCode::InvalidArgument, "need beta >= 0 and n >= 1");
  if (n > kMaxOracleCBeta) throw Error(ErrorCode::BudgetExceeded, "oracle_C_beta limited to n <= 500");
  i64 count = 1;
  for (i64 alpha = 1; alpha <= n; ++alpha) count += detail::count_tree_max({alpha, beta}, n);
  return count;
}

/// Number of two-part partitions of n; C_0(n) - 1 by the partition argument.
inline i64 two_part_partitions(i64 n) {
  i64 count = 0;
  for (i64 e = 1; 2 * e <= n; ++e) ++count;
  return count;
}

}  // namespace markoff::oracle
