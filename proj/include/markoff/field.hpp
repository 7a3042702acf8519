#pragma once

// Prime field F_p for odd p < 2^63. Products go through 128-bit intermediates.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "markoff/error.hpp"

namespace markoff {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m < 2^63, no wrap
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the base set below is exact for all 64-bit n.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : kBases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class PrimeModulus {
 public:
  explicit PrimeModulus(u64 p) : p_(p) {
    if (p < 3 || p >= (u64{1} << 63)) {
      throw Error(ErrorCode::InvalidArgument,
                  "modulus must be an odd prime in [3, 2^63), got " + std::to_string(p));
    }
    if (!is_prime_u64(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }

  u64 value() const noexcept { return p_; }
  bool has_sqrt_minus_one() const noexcept { return p_ % 4 == 1; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
};

class FieldElement {
 public:
  FieldElement(u64 value, PrimeModulus mod) : mod_(mod), v_(value % mod.value()) {}

  static FieldElement from_signed(std::int64_t value, PrimeModulus mod) {
    const auto p = static_cast<std::int64_t>(mod.value());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return FieldElement(static_cast<u64>(r), mod);
  }

  u64 value() const noexcept { return v_; }
  PrimeModulus modulus() const noexcept { return mod_; }
  bool is_zero() const noexcept { return v_ == 0; }

  FieldElement operator-() const { return FieldElement(v_ == 0 ? 0 : p() - v_, mod_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return FieldElement(detail::add_mod(a.v_, b.v_, a.p()), a.mod_);
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return FieldElement(detail::sub_mod(a.v_, b.v_, a.p()), a.mod_);
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return FieldElement(detail::mul_mod(a.v_, b.v_, a.p()), a.mod_);
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return a * b.inv();
  }

  FieldElement inv() const {
    if (v_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return FieldElement(detail::pow_mod(v_, p() - 2, p()), mod_);
  }

  FieldElement pow(u64 e) const { return FieldElement(detail::pow_mod(v_, e, p()), mod_); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.mod_ == b.mod_ && a.v_ == b.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.v_; }

 private:
  u64 p() const noexcept { return mod_.value(); }
  void check(const FieldElement& other) const {
    if (!(mod_ == other.mod_)) {
      throw Error(ErrorCode::ModulusMismatch, "F_" + std::to_string(p()) + " vs F_" +
                                                  std::to_string(other.p()));
    }
  }

  PrimeModulus mod_;
  u64 v_;
};

/// Square root by Tonelli-Shanks. Of the two roots r and p-r the smaller
/// integer representative is returned; empty for non-residues.
inline std::optional<FieldElement> sqrt_mod_p(const FieldElement& a) {
  const u64 p = a.modulus().value();
  const u64 n = a.value();
  if (n == 0) return a;
  if (detail::pow_mod(n, (p - 1) / 2, p) != 1) return std::nullopt;

  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (detail::pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

  u64 m = static_cast<u64>(s);
  u64 c = detail::pow_mod(z, q, p);
  u64 t = detail::pow_mod(n, q, p);
  u64 r = detail::pow_mod(n, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = detail::mul_mod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = detail::mul_mod(b, b, p);
    m = i;
    c = detail::mul_mod(b, b, p);
    t = detail::mul_mod(t, c, p);
    r = detail::mul_mod(r, b, p);
  }
  if (p - r < r) r = p - r;
  return FieldElement(r, a.modulus());
}

/// Canonical i with i^2 = -1; exists exactly when p = 1 (mod 4).
inline std::optional<FieldElement> sqrt_minus_one(PrimeModulus p) {
  if (!p.has_sqrt_minus_one()) return std::nullopt;
  return sqrt_mod_p(FieldElement(p.value() - 1, p));
}

inline FieldElement require_i(PrimeModulus p) {
  auto i = sqrt_minus_one(p);
  if (!i) {
    throw Error(ErrorCode::IUnavailable,
                "-1 is not a square mod " + std::to_string(p.value()) + " (p = 3 mod 4)");
  }
  return *i;
}

}  // namespace markoff
