#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "markoff/error.hpp"
#include "markoff/field.hpp"

namespace markoff {

/// Degree in Z>=0 extended by -infinity, the degree of the zero polynomial.
class ExtDegree {
 public:
  constexpr ExtDegree() = default;  // -infinity
  constexpr explicit ExtDegree(int n) : v_(n) {}

  static constexpr ExtDegree neg_infinity() { return ExtDegree(); }

  constexpr bool is_neg_infinity() const noexcept { return !v_.has_value(); }
  constexpr bool is_finite() const noexcept { return v_.has_value(); }
  /// Only meaningful when finite.
  constexpr int value() const { return *v_; }

  // std::optional already orders nullopt below every engaged value.
  friend constexpr auto operator<=>(const ExtDegree&, const ExtDegree&) = default;
  friend constexpr bool operator==(const ExtDegree&, const ExtDegree&) = default;

  friend constexpr bool operator==(const ExtDegree& d, int n) { return d.v_ == n; }
  friend constexpr auto operator<=>(const ExtDegree& d, int n) { return d <=> ExtDegree(n); }

  /// -infinity absorbs.
  friend constexpr ExtDegree operator+(const ExtDegree& a, const ExtDegree& b) {
    if (!a.v_ || !b.v_) return ExtDegree();
    return ExtDegree(*a.v_ + *b.v_);
  }

  std::string to_string() const { return v_ ? std::to_string(*v_) : std::string("-inf"); }

 private:
  std::optional<int> v_;
};

/// Dense polynomial over F_p, ascending powers, no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(PrimeModulus mod) : mod_(mod) {}

  /// Coefficients are reduced mod p and trailing zeros stripped.
  Polynomial(PrimeModulus mod, std::vector<u64> coeffs) : mod_(mod), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= mod_.value();
    trim();
  }

  Polynomial(PrimeModulus mod, std::initializer_list<std::int64_t> coeffs) : mod_(mod) {
    c_.reserve(coeffs.size());
    for (auto v : coeffs) c_.push_back(FieldElement::from_signed(v, mod).value());
    trim();
  }

  static Polynomial zero(PrimeModulus mod) { return Polynomial(mod); }
  static Polynomial constant(const FieldElement& c) {
    return Polynomial(c.modulus(), std::vector<u64>{c.value()});
  }
  static Polynomial constant(PrimeModulus mod, std::int64_t c) { return Polynomial(mod, {c}); }
  static Polynomial monomial(const FieldElement& c, std::size_t power) {
    std::vector<u64> v(power + 1, 0);
    v[power] = c.value();
    return Polynomial(c.modulus(), std::move(v));
  }
  /// The indeterminate t.
  static Polynomial t(PrimeModulus mod) { return Polynomial(mod, std::vector<u64>{0, 1}); }

  PrimeModulus modulus() const noexcept { return mod_; }
  u64 p() const noexcept { return mod_.value(); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Zero counts as constant.
  bool is_constant() const noexcept { return c_.size() <= 1; }

  ExtDegree degree() const {
    return c_.empty() ? ExtDegree::neg_infinity() : ExtDegree(static_cast<int>(c_.size()) - 1);
  }

  std::span<const u64> coeffs() const noexcept { return c_; }
  u64 coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }
  FieldElement coeff_element(std::size_t k) const { return FieldElement(coeff(k), mod_); }

  FieldElement leading_coeff() const {
    if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
    return FieldElement(c_.back(), mod_);
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& v : r.c_) v = v == 0 ? 0 : p() - v;
    return r;
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    f.check(g);
    const auto& big = f.c_.size() >= g.c_.size() ? f : g;
    const auto& small = f.c_.size() >= g.c_.size() ? g : f;
    Polynomial r(big);
    for (std::size_t k = 0; k < small.c_.size(); ++k) {
      r.c_[k] = detail::add_mod(r.c_[k], small.c_[k], f.p());
    }
    r.trim();
    return r;
  }

  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    f.check(g);
    Polynomial r(f);
    if (r.c_.size() < g.c_.size()) r.c_.resize(g.c_.size(), 0);
    for (std::size_t k = 0; k < g.c_.size(); ++k) {
      r.c_[k] = detail::sub_mod(r.c_[k], g.c_[k], f.p());
    }
    r.trim();
    return r;
  }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    f.check(g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.mod_);
    const u64 m = f.p();
    std::vector<u64> r(f.c_.size() + g.c_.size() - 1, 0);
    for (std::size_t a = 0; a < f.c_.size(); ++a) {
      if (f.c_[a] == 0) continue;
      for (std::size_t b = 0; b < g.c_.size(); ++b) {
        r[a + b] = detail::add_mod(r[a + b], detail::mul_mod(f.c_[a], g.c_[b], m), m);
      }
    }
    return Polynomial(f.mod_, std::move(r));
  }

  friend Polynomial operator*(const FieldElement& s, const Polynomial& f) { return f.scaled(s); }
  friend Polynomial operator*(const Polynomial& f, const FieldElement& s) { return f.scaled(s); }

  Polynomial scaled(const FieldElement& s) const {
    if (!(s.modulus() == mod_)) throw Error(ErrorCode::ModulusMismatch, "scalar modulus differs");
    Polynomial r(*this);
    for (auto& v : r.c_) v = detail::mul_mod(v, s.value(), p());
    r.trim();
    return r;
  }

  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  /// Long division: f = q*g + r with deg r < deg g.
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& g) const {
    check(g);
    if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    const u64 m = p();
    if (c_.size() < g.c_.size()) return {Polynomial(mod_), *this};
    const u64 lead_inv = g.leading_coeff().inv().value();
    std::vector<u64> rem = c_;
    std::vector<u64> quot(c_.size() - g.c_.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
      const u64 top = rem[k + g.c_.size() - 1];
      if (top == 0) continue;
      const u64 factor = detail::mul_mod(top, lead_inv, m);
      quot[k] = factor;
      for (std::size_t j = 0; j < g.c_.size(); ++j) {
        rem[k + j] = detail::sub_mod(rem[k + j], detail::mul_mod(factor, g.c_[j], m), m);
      }
    }
    return {Polynomial(mod_, std::move(quot)), Polynomial(mod_, std::move(rem))};
  }

  FieldElement evaluate(const FieldElement& x) const {
    FieldElement acc(0, mod_);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + FieldElement(c_[k], mod_);
    return acc;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return f.mod_ == g.mod_ && f.c_ == g.c_;
  }

  /// Total order used for canonical sorting: by degree, then coefficients
  /// from the top down. Moduli are assumed equal.
  friend std::strong_ordering operator<=>(const Polynomial& f, const Polynomial& g) {
    if (auto c = f.c_.size() <=> g.c_.size(); c != 0) return c;
    for (std::size_t k = f.c_.size(); k-- > 0;) {
      if (auto c = f.c_[k] <=> g.c_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check(const Polynomial& g) const {
    if (!(mod_ == g.mod_)) {
      throw Error(ErrorCode::ModulusMismatch, "F_" + std::to_string(p()) + "[t] vs F_" +
                                                  std::to_string(g.p()) + "[t]");
    }
  }

  PrimeModulus mod_;
  std::vector<u64> c_;
};

/// Square root in F_p[t]. The root's leading coefficient is the canonical
/// field square root of f's leading coefficient; the remaining coefficients
/// are fixed top-down by matching coefficients of g^2 against f.
inline std::optional<Polynomial> poly_sqrt(const Polynomial& f) {
  if (f.is_zero()) return f;
  const std::size_t n = f.coeffs().size() - 1;
  if (n % 2 != 0) return std::nullopt;
  auto lead = sqrt_mod_p(f.leading_coeff());
  if (!lead) return std::nullopt;

  const u64 p = f.p();
  const std::size_t m = n / 2;
  std::vector<u64> g(m + 1, 0);
  g[m] = lead->value();
  const u64 inv_two_lead = FieldElement(detail::mul_mod(2, g[m], p), f.modulus()).inv().value();
  for (std::size_t k = m; k-- > 0;) {
    // coefficient of t^(m+k) in g^2 is 2*g[m]*g[k] + sum over i+j=m+k with k<i,j<m
    u64 acc = f.coeff(m + k);
    for (std::size_t i = k + 1; i < m; ++i) {
      const std::size_t j = m + k - i;
      if (j <= k || j >= m) continue;
      acc = detail::sub_mod(acc, detail::mul_mod(g[i], g[j], p), p);
    }
    g[k] = detail::mul_mod(acc, inv_two_lead, p);
  }
  Polynomial root(f.modulus(), std::move(g));
  if (!(root * root == f)) return std::nullopt;
  return root;
}

}  // namespace markoff
