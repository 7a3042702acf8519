#pragma once

// Markoff triples x^2 + y^2 + z^2 = A*x*y*z over F_p[t] and the group G_A
// generated by coordinate swaps, double sign changes and the Vieta move
// rho(x, y, z) = (x, y, A*x*y - z).

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "markoff/error.hpp"
#include "markoff/field.hpp"
#include "markoff/poly.hpp"
#include "markoff/poly_io.hpp"

namespace markoff {

/// Fixed parameter A of the surface. A is never mutated after construction.
class MarkoffContext {
 public:
  explicit MarkoffContext(Polynomial A) : A_(std::move(A)) {
    if (A_.is_zero()) throw Error(ErrorCode::InvalidArgument, "A must be nonzero");
  }

  PrimeModulus modulus() const noexcept { return A_.modulus(); }
  const Polynomial& A() const noexcept { return A_; }
  /// deg A, always >= 0.
  int beta() const { return A_.degree().value(); }
  bool constant_A() const { return beta() == 0; }

 private:
  Polynomial A_;
};

struct Signature {
  std::array<ExtDegree, 3> degrees;

  ExtDegree height() const { return std::max({degrees[0], degrees[1], degrees[2]}); }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct MarkoffTriple {
  std::array<Polynomial, 3> c;

  MarkoffTriple(Polynomial x, Polynomial y, Polynomial z) : c{std::move(x), std::move(y), std::move(z)} {}

  const Polynomial& x() const { return c[0]; }
  const Polynomial& y() const { return c[1]; }
  const Polynomial& z() const { return c[2]; }
  const Polynomial& operator[](std::size_t k) const { return c[k]; }

  PrimeModulus modulus() const { return c[0].modulus(); }
  Signature signature() const { return {{c[0].degree(), c[1].degree(), c[2].degree()}}; }
  ExtDegree height() const { return signature().height(); }

  bool is_sorted() const {
    return c[0].degree() <= c[1].degree() && c[1].degree() <= c[2].degree();
  }

  friend bool operator==(const MarkoffTriple&, const MarkoffTriple&) = default;
  /// Lexicographic on coordinates; used for deterministic ordering of results.
  friend auto operator<=>(const MarkoffTriple& a, const MarkoffTriple& b) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (auto r = a.c[k] <=> b.c[k]; r != 0) return r;
    }
    return std::strong_ordering::equal;
  }
};

// --- generators of G_A -----------------------------------------------------

/// Coordinate indices are 0-based internally and printed 1-based.
struct Swap {
  int i, j;
  friend bool operator==(const Swap&, const Swap&) = default;
};
struct DoubleNeg {
  int i, j;
  friend bool operator==(const DoubleNeg&, const DoubleNeg&) = default;
};
struct Rho {
  friend bool operator==(const Rho&, const Rho&) = default;
};

using Generator = std::variant<Swap, DoubleNeg, Rho>;

inline std::string to_string(const Generator& g) {
  struct {
    std::string operator()(const Swap& s) const {
      return "Swap(" + std::to_string(s.i + 1) + "," + std::to_string(s.j + 1) + ")";
    }
    std::string operator()(const DoubleNeg& n) const {
      return "DoubleNeg(" + std::to_string(n.i + 1) + "," + std::to_string(n.j + 1) + ")";
    }
    std::string operator()(const Rho&) const { return "Rho"; }
  } visitor;
  return std::visit(visitor, g);
}

/// Inverse of to_string(Generator).
inline Generator parse_generator(const std::string& text) {
  if (text == "Rho") return Rho{};
  auto parse_pair = [&](std::size_t prefix) -> std::pair<int, int> {
    if (text.size() != prefix + 5 || text[prefix] != '(' || text[prefix + 2] != ',' ||
        text.back() != ')') {
      throw Error(ErrorCode::InvalidArgument, "bad generator '" + text + "'");
    }
    const int i = text[prefix + 1] - '1';
    const int j = text[prefix + 3] - '1';
    if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) {
      throw Error(ErrorCode::InvalidArgument, "bad generator indices in '" + text + "'");
    }
    return {i, j};
  };
  if (text.rfind("Swap", 0) == 0) {
    auto [i, j] = parse_pair(4);
    return Swap{i, j};
  }
  if (text.rfind("DoubleNeg", 0) == 0) {
    auto [i, j] = parse_pair(9);
    return DoubleNeg{i, j};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + text + "'");
}

/// Generators in application order. Every generator is an involution, so a
/// word that maps P to R is undone by replaying it back to front.
using GroupWord = std::vector<Generator>;

inline MarkoffTriple apply_generator(const MarkoffContext& ctx, const MarkoffTriple& P,
                                     const Generator& g) {
  MarkoffTriple r = P;
  if (const auto* s = std::get_if<Swap>(&g)) {
    std::swap(r.c[s->i], r.c[s->j]);
  } else if (const auto* n = std::get_if<DoubleNeg>(&g)) {
    r.c[n->i] = -r.c[n->i];
    r.c[n->j] = -r.c[n->j];
  } else {
    r.c[2] = ctx.A() * P.x() * P.y() - P.z();
  }
  return r;
}

/// Applies the word front to back.
inline MarkoffTriple apply_word(const MarkoffContext& ctx, MarkoffTriple P, const GroupWord& word) {
  for (const auto& g : word) P = apply_generator(ctx, P, g);
  return P;
}

/// Applies the word back to front, inverting apply_word.
inline MarkoffTriple replay_word(const MarkoffContext& ctx, MarkoffTriple P, const GroupWord& word) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) P = apply_generator(ctx, P, *it);
  return P;
}

// --- the surface -----------------------------------------------------------

inline void check_modulus(const MarkoffContext& ctx, const MarkoffTriple& P) {
  for (const auto& f : P.c) {
    if (!(f.modulus() == ctx.modulus())) {
      throw Error(ErrorCode::ModulusMismatch, "triple and A live over different fields");
    }
  }
}

inline bool is_solution(const MarkoffContext& ctx, const MarkoffTriple& P) {
  check_modulus(ctx, P);
  const auto lhs = P.x() * P.x() + P.y() * P.y() + P.z() * P.z();
  const auto rhs = ctx.A() * P.x() * P.y() * P.z();
  return lhs == rhs;
}

/// Branch 1: (A*z*y - x, y, z). Branch 2: (x, A*x*z - y, z).
inline MarkoffTriple apply_sigma(const MarkoffContext& ctx, const MarkoffTriple& P, int branch) {
  if (branch == 1) return {ctx.A() * P.z() * P.y() - P.x(), P.y(), P.z()};
  if (branch == 2) return {P.x(), ctx.A() * P.x() * P.z() - P.y(), P.z()};
  throw Error(ErrorCode::InvalidArgument, "branch must be 1 or 2");
}

/// Stable insertion sort by degree using adjacent transpositions; the word
/// lists the swaps in the order they were applied.
inline std::pair<MarkoffTriple, GroupWord> sort_triple(const MarkoffTriple& P) {
  if (P.height() <= 0) throw Error(ErrorCode::AllConstant, "all coordinates are constant");
  MarkoffTriple r = P;
  GroupWord word;
  for (int k = 1; k < 3; ++k) {
    for (int j = k; j > 0 && r.c[j - 1].degree() > r.c[j].degree(); --j) {
      std::swap(r.c[j - 1], r.c[j]);
      word.push_back(Swap{j - 1, j});
    }
  }
  return {std::move(r), std::move(word)};
}

/// On a sorted triple: deg y == deg z.
inline bool is_fundamental(const MarkoffTriple& P) { return P.y().degree() == P.z().degree(); }

inline void require_solution(const MarkoffContext& ctx, const MarkoffTriple& P) {
  if (!is_solution(ctx, P)) throw Error(ErrorCode::NotSolution, "triple does not satisfy the equation");
}

/// Sorted rho(P) and the word (Rho followed by the sorting swaps).
inline std::pair<MarkoffTriple, GroupWord> predecessor(const MarkoffContext& ctx, const MarkoffTriple& P) {
  require_solution(ctx, P);
  if (!P.is_sorted()) throw Error(ErrorCode::InvalidArgument, "predecessor needs a sorted triple");
  if (is_fundamental(P)) throw Error(ErrorCode::IsFundamental, "fundamental triples have no predecessor");
  auto [sorted, swaps] = sort_triple(apply_generator(ctx, P, Rho{}));
  GroupWord word{Rho{}};
  word.insert(word.end(), swaps.begin(), swaps.end());
  return {std::move(sorted), std::move(word)};
}

struct Descent {
  MarkoffTriple fundamental;
  /// Forward moves from the input to `fundamental`; replay_word(fundamental)
  /// reproduces the input.
  GroupWord word;
  int predecessor_steps = 0;
};

/// Sorts, then follows predecessors until a fundamental triple is reached.
/// Heights strictly decrease along the way, so the loop is bounded by h(P).
inline Descent descend(const MarkoffContext& ctx, const MarkoffTriple& P) {
  require_solution(ctx, P);
  auto [current, word] = sort_triple(P);
  int steps = 0;
  const int bound = P.height().value() + 1;
  while (!is_fundamental(current)) {
    if (steps > bound) {
      throw Error(ErrorCode::UnclassifiableInput, "descent failed to terminate");
    }
    if (apply_generator(ctx, current, Rho{}).height() <= 0) {
      // Only possible for non-constant A: (c, +-i*c, +-i*A*c^2) and its
      // descendants sit above the constant solution (c, +-i*c, 0).
      throw Error(ErrorCode::AllConstant, "descent reaches an all-constant solution before any fundamental triple");
    }
    auto [prev, w] = predecessor(ctx, current);
    word.insert(word.end(), w.begin(), w.end());
    current = std::move(prev);
    ++steps;
  }
  return {std::move(current), std::move(word), steps};
}

// --- fundamental forms -----------------------------------------------------

/// (0, sign*i*f, f).
struct ZeroForm {
  Polynomial f;
  int sign;
  friend bool operator==(const ZeroForm&, const ZeroForm&) = default;
};

/// (2a/A, a*f + sign*2ai/A, f), only for constant A.
struct ConstantForm {
  Polynomial f;
  int a;
  int sign;
  friend bool operator==(const ConstantForm&, const ConstantForm&) = default;
};

using FundamentalForm = std::variant<ZeroForm, ConstantForm>;

namespace detail {

inline int require_unit_sign(int s, const char* what) {
  if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be +1 or -1");
  return s;
}

inline FieldElement signed_one(int s, PrimeModulus mod) { return FieldElement::from_signed(s, mod); }

inline void require_nonconstant(const Polynomial& f) {
  if (f.is_constant()) throw Error(ErrorCode::InvalidArgument, "f must be non-constant");
}

inline void require_constant_A(const MarkoffContext& ctx) {
  if (!ctx.constant_A()) {
    throw Error(ErrorCode::ConstantFormNeedsConstantA,
                "the constant family exists only for constant A (deg A = " + std::to_string(ctx.beta()) + ")");
  }
}

// y-coordinate of the constant family: a*f + sign*2ai/A.
inline Polynomial constant_family_y(const MarkoffContext& ctx, const Polynomial& f, const FieldElement& a,
                                    const FieldElement& s, const FieldElement& i) {
  const FieldElement two(2, ctx.modulus());
  const FieldElement A0 = ctx.A().leading_coeff();
  return a * f + Polynomial::constant(s * two * a * i / A0);
}

}  // namespace detail

/// Reads off the form of a sorted fundamental solution. The constant case
/// recomputes y = a*z + b by long division and checks a^2 + 1 = A*a*x,
/// 2ab = A*b*x, b^2 + x^2 = 0 and b = sign*i*x before answering.
inline FundamentalForm classify_fundamental(const MarkoffContext& ctx, const MarkoffTriple& P) {
  require_solution(ctx, P);
  if (P.height() <= 0 || !P.is_sorted() || !is_fundamental(P)) {
    throw Error(ErrorCode::NotFundamental, "expected a sorted fundamental triple");
  }
  const PrimeModulus mod = ctx.modulus();
  auto i = sqrt_minus_one(mod);
  if (!i) throw Error(ErrorCode::UnclassifiableInput, "fundamental solution over a field without i");

  const auto& x = P.x();
  const auto& y = P.y();
  const auto& z = P.z();
  if (x.is_zero()) {
    for (int s : {1, -1}) {
      if (y == detail::signed_one(s, mod) * *i * z) return ZeroForm{z, s};
    }
    throw Error(ErrorCode::UnclassifiableInput, "x = 0 but y != +-i*z");
  }
  if (!ctx.constant_A() || !x.is_constant()) {
    throw Error(ErrorCode::UnclassifiableInput, "x != 0 requires constant A and constant x");
  }

  auto [q, b] = y.divrem(z);
  if (!q.is_constant() || q.is_zero()) throw Error(ErrorCode::UnclassifiableInput, "deg y != deg z");
  const FieldElement a = q.leading_coeff();
  const FieldElement x0 = x.leading_coeff();
  const FieldElement A0 = ctx.A().leading_coeff();
  const FieldElement one(1, mod);
  const bool identities = a * a + one == A0 * a * x0 &&
                          (FieldElement(2, mod) * a) * b == A0 * x0 * b &&
                          b * b + Polynomial::constant(x0 * x0) == Polynomial::zero(mod);
  if (!identities) throw Error(ErrorCode::UnclassifiableInput, "long-division identities fail");

  int a_sign = 0;
  if (a == one) a_sign = 1;
  if (a == -one) a_sign = -1;
  if (a_sign == 0) throw Error(ErrorCode::UnclassifiableInput, "quotient is not +-1");
  for (int s : {1, -1}) {
    if (b == Polynomial::constant(detail::signed_one(s, mod) * *i * x0)) return ConstantForm{z, a_sign, s};
  }
  throw Error(ErrorCode::UnclassifiableInput, "remainder is not +-i*x");
}

/// The sorted fundamental triple of a form.
inline MarkoffTriple make_fundamental(const MarkoffContext& ctx, const FundamentalForm& form) {
  const PrimeModulus mod = ctx.modulus();
  const FieldElement i = require_i(mod);
  if (const auto* zf = std::get_if<ZeroForm>(&form)) {
    detail::require_nonconstant(zf->f);
    const auto s = detail::signed_one(detail::require_unit_sign(zf->sign, "sign"), mod);
    return {Polynomial::zero(mod), s * i * zf->f, zf->f};
  }
  const auto& cf = std::get<ConstantForm>(form);
  detail::require_nonconstant(cf.f);
  detail::require_constant_A(ctx);
  const auto a = detail::signed_one(detail::require_unit_sign(cf.a, "a"), mod);
  const auto s = detail::signed_one(detail::require_unit_sign(cf.sign, "sign"), mod);
  const FieldElement two(2, mod);
  const FieldElement A0 = ctx.A().leading_coeff();
  return {Polynomial::constant(two * a / A0), detail::constant_family_y(ctx, cf.f, a, s, i), cf.f};
}

enum class RootFamily { zero, constant };

/// Smallest non-fundamental triple of a tree:
///   zero family:     (f, i*a*f, i*a*A*f^2)
///   constant family: (f, a*f + sign*2ai/A, A*a*f^2 + sign*2ai*f - 2a/A)
/// The sign argument is ignored for the zero family.
inline MarkoffTriple make_root(const MarkoffContext& ctx, const Polynomial& f, int a_sign, int sign,
                               RootFamily family) {
  const PrimeModulus mod = ctx.modulus();
  const FieldElement i = require_i(mod);
  detail::require_nonconstant(f);
  const auto a = detail::signed_one(detail::require_unit_sign(a_sign, "a"), mod);
  if (family == RootFamily::zero) {
    const FieldElement ia = i * a;
    return {f, ia * f, ia * ctx.A() * f * f};
  }
  detail::require_constant_A(ctx);
  const auto s = detail::signed_one(detail::require_unit_sign(sign, "sign"), mod);
  const FieldElement two(2, mod);
  const FieldElement A0 = ctx.A().leading_coeff();
  Polynomial y = detail::constant_family_y(ctx, f, a, s, i);
  Polynomial z = A0 * a * f * f + (s * two * a * i) * f - Polynomial::constant(two * a / A0);
  return {f, std::move(y), std::move(z)};
}

// --- parsing ---------------------------------------------------------------

/// "(x; y; z)" with ';' separators; parentheses optional.
inline MarkoffTriple parse_triple(std::string_view text, PrimeModulus mod) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin < end && text[begin] == '(') {
    if (text[end - 1] != ')') throw SyntaxError(end, "expected ')' closing the triple");
    ++begin;
    --end;
  }
  std::vector<Polynomial> parts;
  std::size_t start = begin;
  for (std::size_t k = begin; k <= end; ++k) {
    if (k == end || text[k] == ';') {
      if (parts.size() == 3) throw SyntaxError(k, "more than three coordinates");
      parts.push_back(parse_poly(text.substr(start, k - start), mod, start));
      start = k + 1;
    }
  }
  if (parts.size() != 3) throw SyntaxError(end, "expected three ';'-separated coordinates");
  return {std::move(parts[0]), std::move(parts[1]), std::move(parts[2])};
}

inline std::string render_triple(const MarkoffTriple& P, RenderStyle style) {
  return "(" + render_poly(P.x(), style) + ", " + render_poly(P.y(), style) + ", " + render_poly(P.z(), style) +
         ")";
}

}  // namespace markoff
