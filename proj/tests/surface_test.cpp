#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace markoff {
namespace {

using testing::ctx_of;
using testing::P;
using testing::T;

// Nodes of the tree over (t, t+2i, t^2+2it-2) with A = 1, p = 13.
const char* const kRoot = "(t; t+2*i; t^2+2*i*t-2)";
const char* const kChild1 = "(t+2*i; t^2+2*i*t-2; t^3+4*i*t^2-7*t-4*i)";

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Context, RejectsZeroA) { EXPECT_THROW(MarkoffContext(Polynomial::zero(PrimeModulus(13))), Error); }

TEST(IsSolution, Examples) {
  EXPECT_TRUE(is_solution(ctx_of("1", 13), T(kRoot, 13)));
  EXPECT_TRUE(is_solution(ctx_of("t", 5), T("(0; 2*t; t)", 5)));
  EXPECT_FALSE(is_solution(ctx_of("1", 13), T("(1; 1; 1)", 13)));
  EXPECT_EQ(code_of([] { is_solution(ctx_of("1", 13), T("(1; 1; 1)", 5)); }), ErrorCode::ModulusMismatch);
}

TEST(Signature, ZeroHasNegInfinityDegree) {
  const auto sig = T("(0; 2*t; t)", 5).signature();
  EXPECT_TRUE(sig.degrees[0].is_neg_infinity());
  EXPECT_EQ(sig.degrees[1], 1);
  EXPECT_EQ(sig.height(), 1);
}

TEST(Generators, Examples) {
  const auto ctx = ctx_of("1", 13);
  EXPECT_EQ(apply_generator(ctx, T(kRoot, 13), Rho{}), T("(t; t+2*i; 2)", 13));
  const auto ctx5 = ctx_of("t", 5);
  const auto flipped = apply_generator(ctx5, T("(0; 2*t; t)", 5), DoubleNeg{0, 1});
  EXPECT_EQ(flipped, T("(0; 3*t; t)", 5));
  EXPECT_TRUE(is_solution(ctx5, flipped));
  const auto P0 = T(kRoot, 13);
  EXPECT_EQ(apply_word(ctx, P0, {Swap{0, 2}, Swap{0, 2}}), P0);
}

TEST(Generators, TextRoundTrip) {
  for (const Generator& g : {Generator{Swap{0, 1}}, Generator{Swap{1, 2}}, Generator{Swap{0, 2}},
                             Generator{DoubleNeg{0, 1}}, Generator{DoubleNeg{1, 2}}, Generator{Rho{}}}) {
    EXPECT_EQ(to_string(parse_generator(to_string(g))), to_string(g));
  }
  EXPECT_EQ(to_string(Swap{0, 1}), "Swap(1,2)");
  EXPECT_EQ(to_string(DoubleNeg{1, 2}), "DoubleNeg(2,3)");
  EXPECT_THROW(parse_generator("Swap(1,4)"), Error);
  EXPECT_THROW(parse_generator("Twist"), Error);
}

TEST(Sigma, Examples) {
  const auto ctx = ctx_of("1", 13);
  const auto root = T(kRoot, 13);
  EXPECT_EQ(apply_sigma(ctx, root, 1), T("(t^3+4*i*t^2-7*t-4*i; t+2*i; t^2+2*i*t-2)", 13));
  EXPECT_EQ(apply_sigma(ctx, root, 2), T("(t; t^3+2*i*t^2-3*t-2*i; t^2+2*i*t-2)", 13));
  EXPECT_THROW(apply_sigma(ctx, root, 3), Error);
}

TEST(Sort, Examples) {
  auto [s, w] = sort_triple(T("(t^2; 0; t)", 13));
  EXPECT_EQ(s, T("(0; t; t^2)", 13));
  EXPECT_EQ(w, (GroupWord{Swap{0, 1}, Swap{1, 2}}));
  const auto sorted = T(kRoot, 13);
  EXPECT_EQ(sort_triple(sorted).first, sorted);
  EXPECT_TRUE(sort_triple(sorted).second.empty());
  EXPECT_EQ(sort_triple(T("(t+2*i; 2; t)", 13)).first, T("(2; t+2*i; t)", 13));
  EXPECT_EQ(code_of([] { sort_triple(T("(1; 2; 3)", 13)); }), ErrorCode::AllConstant);
}

TEST(Sort, WordReplaysToInputProperty) {
  std::mt19937_64 rng(7);
  const PrimeModulus mod(13);
  const auto ctx = ctx_of("1", 13);
  for (int k = 0; k < 500; ++k) {
    MarkoffTriple P0(testing::random_poly_upto(rng, mod, 3), testing::random_poly_upto(rng, mod, 3),
                     testing::random_poly(rng, mod, 1 + static_cast<int>(rng() % 3)));
    std::shuffle(P0.c.begin(), P0.c.end(), rng);
    auto [s, w] = sort_triple(P0);
    EXPECT_TRUE(s.is_sorted());
    EXPECT_EQ(replay_word(ctx, s, w), P0);
    EXPECT_EQ(apply_word(ctx, P0, w), s);
  }
}

TEST(Fundamental, Examples) {
  EXPECT_TRUE(is_fundamental(T("(0; 2*t; t)", 5)));
  EXPECT_FALSE(is_fundamental(T(kRoot, 13)));
  EXPECT_TRUE(is_fundamental(T("(2; t+2*i; t)", 13)));
}

TEST(Predecessor, Examples) {
  const auto ctx = ctx_of("1", 13);
  EXPECT_EQ(predecessor(ctx, T(kRoot, 13)).first, T("(2; t; t+2*i)", 13));
  // Equal-degree coordinates keep their order under the stable sort.
  EXPECT_EQ(predecessor(ctx, T(kChild1, 13)).first, T("(t+2*i; t; t^2+2*i*t-2)", 13));
  EXPECT_EQ(predecessor(ctx, T("(t; t^3+2*i*t^2-3*t-2*i; t^4+2*i*t^3-4*t^2-4*i*t+2)", 13)).first,
            T("(t; t^2+2*i*t-2; t^3+2*i*t^2-3*t-2*i)", 13));
}

TEST(Predecessor, Errors) {
  const auto ctx = ctx_of("1", 13);
  EXPECT_EQ(code_of([&] { predecessor(ctx, T("(2; t+2*i; t)", 13)); }), ErrorCode::IsFundamental);
  EXPECT_EQ(code_of([&] { predecessor(ctx, T("(t; t; t)", 13)); }), ErrorCode::NotSolution);
  EXPECT_EQ(code_of([&] { predecessor(ctx, T("(t^2+2*i*t-2; t; t+2*i)", 13)); }), ErrorCode::InvalidArgument);
}

TEST(Descend, FigureChild) {
  const auto ctx = ctx_of("1", 13);
  const auto input = T(kChild1, 13);
  const auto d = descend(ctx, input);
  EXPECT_EQ(d.fundamental, T("(2; t+2*i; t)", 13));
  EXPECT_EQ(d.predecessor_steps, 2);
  EXPECT_EQ(d.word, (GroupWord{Rho{}, Swap{1, 2}, Rho{}, Swap{1, 2}, Swap{0, 1}}));
  EXPECT_EQ(replay_word(ctx, d.fundamental, d.word), input);
  const auto form = classify_fundamental(ctx, d.fundamental);
  EXPECT_EQ(std::get<ConstantForm>(form), (ConstantForm{P("t", 13), 1, 1}));
}

TEST(Descend, FundamentalIsFixed) {
  const auto ctx = ctx_of("t", 5);
  const auto d = descend(ctx, T("(0; 2*t; t)", 5));
  EXPECT_EQ(d.fundamental, T("(0; 2*t; t)", 5));
  EXPECT_TRUE(d.word.empty());
  EXPECT_EQ(d.predecessor_steps, 0);
}

TEST(Descend, DeepNodeForNonConstantALandsOnZeroForm) {
  const auto ctx = ctx_of("t", 5);
  auto node = make_root(ctx, P("t^2", 5), 1, 1, RootFamily::zero);
  for (int b : {1, 2, 1, 1, 2, 2}) node = sort_triple(apply_sigma(ctx, node, b)).first;
  const auto d = descend(ctx, node);
  EXPECT_TRUE(std::holds_alternative<ZeroForm>(classify_fundamental(ctx, d.fundamental)));
  EXPECT_EQ(replay_word(ctx, d.fundamental, d.word), node);
}

TEST(Descend, ConstantCoordinateFamilyReachesConstantSolution) {
  // (c, i*c, i*A*c^2) for non-constant A sits above (c, i*c, 0).
  const auto ctx = ctx_of("t", 5);
  const auto P0 = T("(1; 2; 2*t)", 5);
  ASSERT_TRUE(is_solution(ctx, P0));
  EXPECT_EQ(code_of([&] { descend(ctx, P0); }), ErrorCode::AllConstant);
  EXPECT_EQ(code_of([&] { descend(ctx, T("(1; 1; 1)", 5)); }), ErrorCode::NotSolution);
}

TEST(Classify, Examples) {
  EXPECT_EQ(std::get<ZeroForm>(classify_fundamental(ctx_of("t", 5), T("(0; 2*t; t)", 5))),
            (ZeroForm{P("t", 5), 1}));
  EXPECT_EQ(std::get<ConstantForm>(classify_fundamental(ctx_of("1", 13), T("(2; t+10; t)", 13))),
            (ConstantForm{P("t", 13), 1, 1}));
  // y = -i*z with i = 5: -5*(5t+2) = t+3 (mod 13).
  const auto ctx = ctx_of("t^2", 13);
  const auto P0 = T("(0; t+3; 5*t+2)", 13);
  ASSERT_TRUE(is_solution(ctx, P0));
  EXPECT_EQ(std::get<ZeroForm>(classify_fundamental(ctx, P0)), (ZeroForm{P("5*t+2", 13), -1}));
}

TEST(Classify, Errors) {
  const auto ctx = ctx_of("1", 13);
  EXPECT_EQ(code_of([&] { classify_fundamental(ctx, T(kRoot, 13)); }), ErrorCode::NotFundamental);
  EXPECT_EQ(code_of([&] { classify_fundamental(ctx, T("(0; 8*t+3; 5*t+2)", 13)); }), ErrorCode::NotSolution);
}

TEST(MakeFundamental, Examples) {
  EXPECT_EQ(make_fundamental(ctx_of("t", 5), ZeroForm{P("t", 5), 1}), T("(0; 2*t; t)", 5));
  EXPECT_EQ(make_fundamental(ctx_of("1", 13), ConstantForm{P("t", 13), 1, 1}), T("(2; t+10; t)", 13));
  EXPECT_EQ(code_of([] { make_fundamental(ctx_of("t", 13), ConstantForm{P("t", 13), 1, 1}); }),
            ErrorCode::ConstantFormNeedsConstantA);
  EXPECT_EQ(code_of([] { make_fundamental(ctx_of("t", 13), ZeroForm{P("1", 13), 1}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { make_fundamental(ctx_of("t", 13), ZeroForm{P("t", 13), 2}); }),
            ErrorCode::InvalidArgument);
}

TEST(MakeRoot, Examples) {
  const auto ctx = ctx_of("t", 13);
  const auto root = make_root(ctx, P("t", 13), 1, 1, RootFamily::zero);
  EXPECT_EQ(root, T("(t; 5*t; 5*t^3)", 13));
  EXPECT_TRUE(is_solution(ctx, root));
  EXPECT_EQ(make_root(ctx_of("1", 13), P("t", 13), 1, 1, RootFamily::constant), T("(t; t+10; t^2+10*t+11)", 13));
  EXPECT_EQ(make_root(ctx_of("1", 13), P("t", 13), 1, 1, RootFamily::constant), T(kRoot, 13));
}

TEST(MakeRoot, IsSortedSigmaOneOfFundamental) {
  std::mt19937_64 rng(8);
  for (const char* A : {"1", "t", "3*t^2+1"}) {
    const auto ctx = ctx_of(A, 13);
    for (int k = 0; k < 50; ++k) {
      const auto f = testing::random_poly(rng, ctx.modulus(), 1 + static_cast<int>(rng() % 3));
      const FieldElement i = require_i(ctx.modulus());
      const auto up = sort_triple(apply_sigma(ctx, make_fundamental(ctx, ZeroForm{f, 1}), 1)).first;
      EXPECT_EQ(up, make_root(ctx, i * f, -1, 1, RootFamily::zero));
      const auto alt = make_root(ctx, f, 1, 1, RootFamily::zero);
      EXPECT_EQ(up, MarkoffTriple(alt.y(), alt.x(), alt.z()));
      if (ctx.constant_A()) {
        for (int a : {1, -1}) {
          for (int s : {1, -1}) {
            // equal up to the order of the two degree-d coordinates
            const auto up_c = sort_triple(apply_sigma(ctx, make_fundamental(ctx, ConstantForm{f, a, s}), 1)).first;
            const auto root = make_root(ctx, f, a, s, RootFamily::constant);
            EXPECT_EQ(up_c, MarkoffTriple(root.y(), root.x(), root.z()));
          }
        }
      }
    }
  }
}

TEST(Forms, AllFourConstantFormsAreSolutions) {
  for (const char* A : {"1", "3", "12"}) {
    const auto ctx = ctx_of(A, 13);
    for (int a : {1, -1}) {
      for (int s : {1, -1}) {
        const auto fund = make_fundamental(ctx, ConstantForm{P("t^2+t", 13), a, s});
        EXPECT_TRUE(is_solution(ctx, fund));
        EXPECT_EQ(std::get<ConstantForm>(classify_fundamental(ctx, fund)), (ConstantForm{P("t^2+t", 13), a, s}));
        EXPECT_TRUE(is_solution(ctx, make_root(ctx, P("t^2+t", 13), a, s, RootFamily::constant)));
      }
    }
  }
}

TEST(Forms, ZeroSolutionVariantsShareAnOrbit) {
  // (f, i*f, 0) and (0, +-i*f, f) are related by Swap and DoubleNeg.
  const auto ctx = ctx_of("t", 13);
  const auto f = P("t^2+3", 13);
  const FieldElement i = require_i(ctx.modulus());
  const MarkoffTriple alt(f, i * f, Polynomial::zero(ctx.modulus()));
  ASSERT_TRUE(is_solution(ctx, alt));
  const auto plus = apply_generator(ctx, alt, Swap{0, 2});
  EXPECT_EQ(plus, MarkoffTriple(Polynomial::zero(ctx.modulus()), i * f, f));
  EXPECT_EQ(plus, make_fundamental(ctx, ZeroForm{f, 1}));
  EXPECT_EQ(apply_generator(ctx, plus, DoubleNeg{0, 1}), make_fundamental(ctx, ZeroForm{f, -1}));
}

TEST(Forms, NoGeneratorsWithoutSquareRootOfMinusOne) {
  const auto ctx = ctx_of("t", 7);
  EXPECT_EQ(code_of([&] { make_fundamental(ctx, ZeroForm{P("t", 7), 1}); }), ErrorCode::IUnavailable);
  EXPECT_EQ(code_of([&] { make_root(ctx, P("t", 7), 1, 1, RootFamily::zero); }), ErrorCode::IUnavailable);
}

// --- properties over random tree nodes -------------------------------------

class RandomNodes : public ::testing::TestWithParam<const char*> {};

TEST_P(RandomNodes, AutomorphismInvariance) {
  const auto ctx = ctx_of(GetParam(), 13);
  std::mt19937_64 rng(21);
  const std::vector<Generator> gens{Swap{0, 1}, Swap{1, 2}, Swap{0, 2}, DoubleNeg{0, 1},
                                    DoubleNeg{1, 2}, DoubleNeg{0, 2}, Rho{}};
  for (int k = 0; k < 100; ++k) {
    const auto node = testing::random_node(rng, ctx, 5);
    ASSERT_TRUE(is_solution(ctx, node));
    for (const auto& g : gens) {
      const auto image = apply_generator(ctx, node, g);
      EXPECT_TRUE(is_solution(ctx, image));
      EXPECT_EQ(apply_generator(ctx, image, g), node) << to_string(g);
    }
  }
}

TEST_P(RandomNodes, SigmaGrowthAndDescentReplay) {
  const auto ctx = ctx_of(GetParam(), 13);
  std::mt19937_64 rng(22);
  for (int k = 0; k < 100; ++k) {
    const auto node = testing::random_node(rng, ctx, 6);
    ASSERT_FALSE(is_fundamental(node));
    for (int b : {1, 2}) EXPECT_GT(apply_sigma(ctx, node, b).height(), node.height());
    const auto d = descend(ctx, node);
    EXPECT_TRUE(is_fundamental(d.fundamental));
    EXPECT_LE(d.predecessor_steps, node.height().value());
    EXPECT_EQ(replay_word(ctx, d.fundamental, d.word), node);
    const auto sig = d.fundamental.signature();
    EXPECT_TRUE(sig.degrees[0] == 0 || sig.degrees[0].is_neg_infinity());
    EXPECT_EQ(sig.degrees[1], sig.degrees[2]);
    const auto form = classify_fundamental(ctx, d.fundamental);
    if (!ctx.constant_A()) {
      EXPECT_TRUE(std::holds_alternative<ZeroForm>(form));
    }
    EXPECT_EQ(make_fundamental(ctx, form), d.fundamental);
  }
}

TEST_P(RandomNodes, ZeroFundamentalBranches) {
  const auto ctx = ctx_of(GetParam(), 13);
  if (ctx.constant_A()) GTEST_SKIP() << "stated for non-constant A";
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    const auto f = testing::random_poly(rng, ctx.modulus(), 1 + static_cast<int>(rng() % 3));
    const auto fund = make_fundamental(ctx, ZeroForm{f, rng() % 2 ? 1 : -1});
    const auto s2 = sort_triple(apply_sigma(ctx, fund, 2)).first;
    EXPECT_TRUE(is_fundamental(s2));
    EXPECT_EQ(s2.height(), fund.height());
    EXPECT_FALSE(is_fundamental(sort_triple(apply_sigma(ctx, fund, 1)).first));
  }
}

INSTANTIATE_TEST_SUITE_P(A, RandomNodes, ::testing::Values("1", "t", "t^2+1", "4*t^3+t"),
                         [](const auto& info) { return "A" + std::to_string(info.index); });

}  // namespace
}  // namespace markoff
