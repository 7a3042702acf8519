#pragma once

// Closed-form counts of signatures and solutions built from
//   E(n) = sum_{d | n} mu(d) * (floor(n / 2d) + 1),   E(1) = 1.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "markoff/error.hpp"
#include "markoff/field.hpp"

namespace markoff::counting {

using i64 = std::int64_t;

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational(i64 num = 0, i64 den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const i64 g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i64 num() const noexcept { return num_; }
  i64 den() const noexcept { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  i64 num_;
  i64 den_;
};

namespace detail {

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "count exceeds 64 bits");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "count exceeds 64 bits");
  return r;
}

inline i64 checked_pow(i64 base, i64 e) {
  i64 r = 1;
  for (i64 k = 0; k < e; ++k) r = checked_mul(r, base);
  return r;
}

inline void require_positive(i64 n, const char* what) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace detail

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  detail::require_positive(n, "n");
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d <= n / d; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline int mobius(i64 n) {
  int mu = 1;
  for (const auto& [prime, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Sorted ascending.
inline std::vector<i64> divisors(i64 n) {
  detail::require_positive(n, "n");
  std::vector<i64> small, large;
  for (i64 d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Triples on the (1,0)-Euclid tree with maximum n (and E(1) = 1).
inline i64 count_E(i64 n) {
  detail::require_positive(n, "n");
  i64 total = 0;
  for (i64 d : divisors(n)) total += mobius(d) * (n / (2 * d) + 1);
  return total;
}

inline i64 count_C0(i64 n) {
  detail::require_positive(n, "n");
  return n / 2 + 1;
}

struct CountTerm {
  i64 d;
  i64 E;
  i64 multiplier;
  friend bool operator==(const CountTerm&, const CountTerm&) = default;
};

/// value == sum of E * multiplier over terms.
struct CountReport {
  i64 value = 0;
  std::vector<CountTerm> terms;
  /// Set when the solution set is empty because -1 is not a square mod q.
  bool empty_by_missing_i = false;
};

/// Divisors d of n + beta with beta*d < n + beta.
inline std::vector<i64> admissible_divisors(i64 beta, i64 n) {
  if (beta < 0) throw Error(ErrorCode::InvalidArgument, "beta must be non-negative");
  detail::require_positive(n, "n");
  const i64 m = detail::checked_add(n, beta);
  std::vector<i64> out;
  for (i64 d : divisors(m)) {
    if (detail::checked_mul(beta, d) < m) out.push_back(d);
  }
  return out;
}

/// C_beta(n) = sum_{d | n+beta, beta*d < n+beta} E(d).
inline CountReport count_C_beta(i64 beta, i64 n) {
  CountReport report;
  for (i64 d : admissible_divisors(beta, n)) {
    const i64 e = count_E(d);
    report.terms.push_back({d, e, 1});
    report.value = detail::checked_add(report.value, e);
  }
  return report;
}

struct CountQuery {
  i64 beta = 0;
  bool constant_A = true;
  i64 n = 1;

  static CountQuery for_degree(i64 beta, i64 n) { return {beta, beta == 0, n}; }
};

/// Number of distinct signatures of Markoff triples of height exactly n.
inline i64 count_C_A(const CountQuery& q) {
  if (q.constant_A && q.beta != 0) throw Error(ErrorCode::InvalidArgument, "constant A implies beta = 0");
  if (q.constant_A) return count_C0(q.n) + 1;
  return count_C_beta(q.beta, q.n).value;
}

struct CumulativeSignatures {
  i64 total = 0;
  Rational lower;  // strict
  Rational upper;  // inclusive
};

/// Sum of C_A(n) for n = 1..H, constant A, with (H^2+5H)/4 < total <= (H^2+9H)/4.
inline CumulativeSignatures cumulative_signatures(i64 H, bool constant_A = true) {
  if (!constant_A) throw Error(ErrorCode::NonConstantA, "the quadratic sandwich is stated for constant A");
  detail::require_positive(H, "H");
  CumulativeSignatures out;
  for (i64 n = 1; n <= H; ++n) out.total = detail::checked_add(out.total, count_C_A({0, true, n}));
  const i64 h2 = detail::checked_mul(H, H);
  out.lower = Rational(detail::checked_add(h2, 5 * H), 4);
  out.upper = Rational(detail::checked_add(h2, 9 * H), 4);
  return out;
}

/// 4(q-1) * sum_{d | n+beta, beta*d < n+beta} q^((n+beta)/d - beta) * E(d),
/// the number of height-n solutions over F_q[t] for A of degree beta >= 1.
/// Each term's multiplier is 4(q-1) q^((n+beta)/d - beta).
inline CountReport count_finite_field(i64 q, i64 beta, i64 n) {
  if (q < 3 || !is_prime_u64(static_cast<u64>(q))) {
    throw Error(ErrorCode::InvalidArgument, "q must be an odd prime");
  }
  if (beta < 1) {
    throw Error(ErrorCode::ConstantANotSupported, "no closed-form solution count for constant A");
  }
  detail::require_positive(n, "n");
  CountReport report;
  if (q % 4 == 3) {
    report.empty_by_missing_i = true;
    return report;
  }
  const i64 m = detail::checked_add(n, beta);
  for (i64 d : admissible_divisors(beta, n)) {
    const i64 e = count_E(d);
    const i64 mult = detail::checked_mul(4 * (q - 1), detail::checked_pow(q, m / d - beta));
    report.terms.push_back({d, e, mult});
    report.value = detail::checked_add(report.value, detail::checked_mul(mult, e));
  }
  return report;
}

}  // namespace markoff::counting
