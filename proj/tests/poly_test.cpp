#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace markoff {
namespace {

using testing::P;
using testing::random_poly;
using testing::random_poly_upto;

const PrimeModulus p5(5);
const PrimeModulus p13(13);

TEST(ExtDegree, NegInfinityOrdersFirstAndAbsorbs) {
  const auto ninf = ExtDegree::neg_infinity();
  EXPECT_LT(ninf, ExtDegree(0));
  EXPECT_TRUE(ninf < 0);
  EXPECT_EQ(ninf + ExtDegree(3), ninf);
  EXPECT_EQ(ExtDegree(2) + ExtDegree(3), 5);
  EXPECT_EQ(ninf.to_string(), "-inf");
}

TEST(Polynomial, Examples) {
  const auto f = P("t+1", 5);
  EXPECT_EQ(f * f, P("t^2+2*t+1", 5));
  auto [q, r] = P("t^2+2*t+1", 5).divrem(f);
  EXPECT_EQ(q, f);
  EXPECT_TRUE(r.is_zero());
  EXPECT_TRUE(Polynomial::zero(p13).degree().is_neg_infinity());
}

TEST(Polynomial, NormalizesTrailingZeros) {
  const Polynomial f(p5, std::vector<u64>{1, 2, 0, 0});
  EXPECT_EQ(f.degree(), 1);
  EXPECT_EQ((P("t^2", 5) - P("t^2", 5)).degree(), ExtDegree::neg_infinity());
}

TEST(Polynomial, DivremByZeroThrows) { EXPECT_THROW(P("t", 5).divrem(Polynomial::zero(p5)), Error); }

TEST(Polynomial, MixedModuliThrow) {
  EXPECT_THROW(P("t", 5) + P("t", 13), Error);
  EXPECT_THROW(P("t", 5) * P("t", 13), Error);
}

TEST(Polynomial, EvaluateMatchesHorner) {
  const auto f = P("3*t^3+t+4", 13);
  const FieldElement x(2, p13);
  EXPECT_EQ(f.evaluate(x).value(), (3 * 8 + 2 + 4) % 13u);
}

TEST(Polynomial, RingAxiomsProperty) {
  std::mt19937_64 rng(101);
  for (u64 p : {5ull, 13ull, 1000003ull}) {
    const PrimeModulus mod(p);
    for (int k = 0; k < 300; ++k) {
      const auto f = random_poly_upto(rng, mod, 6);
      const auto g = random_poly_upto(rng, mod, 6);
      const auto h = random_poly_upto(rng, mod, 6);
      EXPECT_EQ((f * g) * h, f * (g * h));
      EXPECT_EQ(f * (g + h), f * g + f * h);
      EXPECT_EQ(f * g, g * f);
      EXPECT_EQ(f + g - g, f);
      EXPECT_EQ((f * g).degree(), f.degree() + g.degree());
    }
  }
}

TEST(Polynomial, MultiplicationAgreesWithPointEvaluation) {
  // Independent check: a product is determined by its values at deg+1 points.
  std::mt19937_64 rng(5);
  const PrimeModulus mod(1000003);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_poly_upto(rng, mod, 8);
    const auto g = random_poly_upto(rng, mod, 8);
    for (u64 x = 0; x < 20; ++x) {
      const FieldElement e(x, mod);
      EXPECT_EQ((f * g).evaluate(e), f.evaluate(e) * g.evaluate(e));
    }
  }
}

TEST(Polynomial, DivremRoundTripProperty) {
  std::mt19937_64 rng(202);
  const PrimeModulus mod(13);
  for (int k = 0; k < 500; ++k) {
    const auto f = random_poly_upto(rng, mod, 9);
    const auto g = random_poly(rng, mod, static_cast<int>(rng() % 5));
    auto [q, r] = f.divrem(g);
    EXPECT_EQ(q * g + r, f);
    EXPECT_LT(r.degree(), g.degree());
  }
}

TEST(PolySqrt, Examples) {
  EXPECT_EQ(*poly_sqrt(P("t^2+2*t+1", 5)), P("t+1", 5));
  EXPECT_EQ(*poly_sqrt(P("4*t^2", 5)), P("2*t", 5));
  EXPECT_FALSE(poly_sqrt(P("t^2+1", 5)).has_value());
  EXPECT_TRUE(poly_sqrt(Polynomial::zero(p5))->is_zero());
  EXPECT_FALSE(poly_sqrt(P("t^3", 5)).has_value());
}

TEST(PolySqrt, NoDegreeOneSquareRootOfTSquaredPlusOneExhaustive) {
  for (u64 a = 0; a < 5; ++a) {
    for (u64 b = 0; b < 5; ++b) {
      const Polynomial g(p5, std::vector<u64>{b, a});
      EXPECT_NE(g * g, P("t^2+1", 5));
    }
  }
}

TEST(PolySqrt, SquaresRoundTripProperty) {
  std::mt19937_64 rng(303);
  for (u64 p : {5ull, 13ull, 1000003ull}) {
    const PrimeModulus mod(p);
    for (int k = 0; k < 1000; ++k) {
      const auto f = random_poly_upto(rng, mod, 6);
      const auto r = poly_sqrt(f * f);
      ASSERT_TRUE(r.has_value());
      EXPECT_TRUE(*r == f || *r == -f);
      if (!f.is_zero()) {
        EXPECT_EQ(r->leading_coeff(), *sqrt_mod_p(f.leading_coeff() * f.leading_coeff()));
      }
    }
  }
}

TEST(PolySqrt, NonSquaresRejectedProperty) {
  // f^2 + c with c a non-residue constant and deg f >= 1 is never a square:
  // g^2 - f^2 = c forces deg g = deg f and (g - f)(g + f) constant.
  std::mt19937_64 rng(304);
  for (int k = 0; k < 300; ++k) {
    const auto f = random_poly(rng, p13, 1 + static_cast<int>(rng() % 4));
    const auto g = f * f + Polynomial::constant(p13, 2);  // 2 is a non-residue mod 13
    EXPECT_FALSE(poly_sqrt(g).has_value()) << render_poly(g);
  }
}

}  // namespace
}  // namespace markoff
