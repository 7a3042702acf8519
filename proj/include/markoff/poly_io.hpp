#pragma once

// Text form of polynomials over F_p.
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 't' | 'i' | '(' expr ')'
//
// `i` is the canonical square root of -1 and is only available when
// p = 1 (mod 4).

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "markoff/error.hpp"
#include "markoff/field.hpp"
#include "markoff/poly.hpp"

namespace markoff {

namespace detail {

class PolyParser {
 public:
  static constexpr std::uint64_t kMaxExponent = 1 << 16;

  PolyParser(std::string_view text, PrimeModulus mod, std::size_t offset)
      : text_(text), mod_(mod), offset_(offset) {}

  Polynomial parse() {
    Polynomial r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(offset_ + pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected non-negative integer exponent");
    }
    std::uint64_t e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (e > kMaxExponent) {
        pos_ = start;
        fail("exponent too large");
      }
      ++pos_;
    }
    Polynomial result = Polynomial::constant(mod_, 1);
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      const std::uint64_t p = mod_.value();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = add_mod(mul_mod(v, 10 % p, p), static_cast<std::uint64_t>(text_[pos_] - '0') % p, p);
        ++pos_;
      }
      return Polynomial(mod_, std::vector<u64>{v});
    }
    if (c == 't') {
      ++pos_;
      return Polynomial::t(mod_);
    }
    if (c == 'i') {
      auto i = sqrt_minus_one(mod_);
      if (!i) {
        throw Error(ErrorCode::IUnavailable, "'i' used at offset " + std::to_string(offset_ + pos_) +
                                                 " but -1 is not a square mod " +
                                                 std::to_string(mod_.value()));
      }
      ++pos_;
      return Polynomial::constant(*i);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  PrimeModulus mod_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// `offset` shifts reported error positions when the text is a slice of a
/// larger input.
inline Polynomial parse_poly(std::string_view text, PrimeModulus mod, std::size_t offset = 0) {
  return detail::PolyParser(text, mod, offset).parse();
}

enum class RenderStyle { plain, with_i };

namespace detail {

inline void append_term(std::string& out, bool negative, std::uint64_t magnitude, bool imaginary,
                        std::size_t power) {
  if (negative) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  std::string body;
  if (imaginary) {
    body = magnitude == 1 ? "i" : std::to_string(magnitude) + "*i";
  } else if (magnitude != 1 || power == 0) {
    body = std::to_string(magnitude);
  }
  if (power > 0) {
    if (!body.empty()) body += '*';
    body += power == 1 ? "t" : "t^" + std::to_string(power);
  }
  out += body;
}

}  // namespace detail

/// plain: coefficients printed as integers in [0, p).
/// with_i: each coefficient c is printed as the shorter of a symmetric real
/// representative r (|r| <= (p-1)/2) and b*i with b symmetric; the real
/// form wins ties. One-term forms always exist, so sums like 1+2*i never
/// appear.
inline std::string render_poly(const Polynomial& f, RenderStyle style = RenderStyle::plain) {
  if (f.is_zero()) return "0";
  const std::uint64_t p = f.p();
  const std::uint64_t half = (p - 1) / 2;
  std::optional<std::uint64_t> minus_i;
  if (style == RenderStyle::with_i) minus_i = (-require_i(f.modulus())).value();

  std::string out;
  const auto coeffs = f.coeffs();
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const std::uint64_t c = coeffs[k];
    if (c == 0) continue;
    if (!minus_i) {
      detail::append_term(out, false, c, false, k);
      continue;
    }
    const bool real_neg = c > half;
    const std::uint64_t real_mag = real_neg ? p - c : c;
    const std::uint64_t b = detail::mul_mod(c, *minus_i, p);  // c = b*i
    const bool imag_neg = b > half;
    const std::uint64_t imag_mag = imag_neg ? p - b : b;
    if (imag_mag < real_mag) {
      detail::append_term(out, imag_neg, imag_mag, true, k);
    } else {
      detail::append_term(out, real_neg, real_mag, false, k);
    }
  }
  return out;
}

/// with_i when p = 1 (mod 4), plain otherwise.
inline RenderStyle preferred_style(PrimeModulus mod) {
  return mod.has_sqrt_minus_one() ? RenderStyle::with_i : RenderStyle::plain;
}

}  // namespace markoff
