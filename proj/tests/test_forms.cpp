#include "wittrw/sampling.hpp"

#include <gtest/gtest.h>

using namespace wittrw;

namespace {

struct XY {
  IntPoly x = IntPoly::var(2, 0), y = IntPoly::var(2, 1);
  DiffForm dx = DiffForm::dx(2, 0), dy = DiffForm::dx(2, 1);
};

}  // namespace

TEST(Differential, Examples) {
  XY v;
  EXPECT_EQ(differential(DiffForm(v.x.pow(2) * v.y)), BigInt(2) * v.x * v.y * v.dx + v.x.pow(2) * v.dy);
  EXPECT_TRUE(differential(DiffForm(IntPoly::constant(2, 7))).is_zero());
  EXPECT_TRUE(differential(v.x * v.dx).is_zero());
  EXPECT_EQ(differential(v.x * v.dy), wedge(v.dx, v.dy));
}

TEST(Wedge, Examples) {
  XY v;
  DiffForm dxdy = DiffForm::elementary(IntPoly::constant(2, 1), {0, 1});
  EXPECT_EQ(wedge(v.dx, v.dy), dxdy);
  EXPECT_EQ(wedge(v.dy, v.dx), -dxdy);
  EXPECT_TRUE(wedge(v.dx, v.dx).is_zero());
  EXPECT_EQ(wedge(v.x * v.dy, v.y * v.dx), -(v.x * v.y * dxdy));
}

TEST(Elementary, SortsWithSignAndKillsRepeats) {
  auto one = IntPoly::constant(3, 1);
  EXPECT_EQ(DiffForm::elementary(one, {2, 0, 1}), DiffForm::elementary(one, {0, 1, 2}));
  EXPECT_EQ(DiffForm::elementary(one, {1, 0, 2}), -DiffForm::elementary(one, {0, 1, 2}));
  EXPECT_TRUE(DiffForm::elementary(one, {1, 1}).is_zero());
  EXPECT_THROW(DiffForm::elementary(one, {3}), std::out_of_range);
}

TEST(MonomialDecompose, Examples) {
  XY v;
  auto terms = monomial_decompose(BigInt(2) * v.x * v.dx + IntPoly::constant(2, 3) * v.dy);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].coefficient_poly(), BigInt(2) * v.x);
  EXPECT_EQ(terms[0].indices, IndexTuple{0});
  EXPECT_EQ(terms[1].coefficient_poly(), IntPoly::constant(2, 3));
  EXPECT_EQ(terms[1].indices, IndexTuple{1});

  EXPECT_TRUE(monomial_decompose(DiffForm(1, 2)).empty());

  auto t2 = monomial_decompose((v.x + v.y) * wedge(v.dx, v.dy));
  ASSERT_EQ(t2.size(), 2u);
  for (const auto& t : t2) EXPECT_EQ(t.indices, (IndexTuple{0, 1}));
}

TEST(MonomialDecompose, ReassemblesTheForm) {
  sampling::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const std::size_t q = static_cast<std::size_t>(i % 3);
    auto w = sampling::random_form(rng, q, {3, 3, 9, 4});
    DiffForm sum(q, 3);
    for (const auto& t : monomial_decompose(w)) sum += DiffForm::elementary(t.coefficient_poly(), t.indices);
    EXPECT_EQ(sum, w);
  }
}

TEST(Forms, LeibnizRuleAndSquareZero) {
  sampling::Rng rng(22);
  const sampling::PolyShape shape{3, 3, 9, 3};
  for (int i = 0; i < 100; ++i) {
    const std::size_t a = static_cast<std::size_t>(i % 3), b = static_cast<std::size_t>((i / 3) % 3);
    auto w = sampling::random_form(rng, a, shape);
    auto h = sampling::random_form(rng, b, shape);
    DiffForm lhs = differential(wedge(w, h));
    DiffForm rhs = wedge(differential(w), h) + BigInt(a % 2 ? -1 : 1) * wedge(w, differential(h));
    EXPECT_EQ(lhs, rhs);
    if (a <= 1) EXPECT_TRUE(differential(differential(w)).is_zero());
  }
}

TEST(Forms, GradedCommutativeAndAssociative) {
  sampling::Rng rng(23);
  const sampling::PolyShape shape{3, 2, 9, 3};
  for (int i = 0; i < 60; ++i) {
    const std::size_t a = static_cast<std::size_t>(i % 2) + 1, b = static_cast<std::size_t>((i / 2) % 2);
    auto u = sampling::random_form(rng, a, shape);
    auto w = sampling::random_form(rng, b, shape);
    auto z = sampling::random_form(rng, 1, shape);
    EXPECT_EQ(wedge(u, w), BigInt((a * b) % 2 ? -1 : 1) * wedge(w, u));
    EXPECT_EQ(wedge(wedge(u, w), z), wedge(u, wedge(w, z)));
    EXPECT_EQ(wedge(DiffForm(IntPoly::constant(3, 1)), u), u);
  }
}

TEST(Forms, DifferentialLowersHomogeneousDegreeByOne) {
  sampling::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    auto f = sampling::random_poly(rng, {2, 5, 9, 6});
    for (std::uint64_t e = 1; e <= 5; ++e) {
      auto dw = differential(DiffForm(f.homogeneous_part(e)));
      for (const auto& [J, g] : dw.comps()) EXPECT_EQ(g, g.homogeneous_part(e - 1));
    }
  }
}

TEST(Forms, DegreeAboveVariableCountIsZero) {
  auto w = wedge(DiffForm::dx(1, 0), DiffForm::dx(1, 0));
  EXPECT_TRUE(w.is_zero());
  EXPECT_EQ(index_tuples(2, 3).size(), 0u);
  EXPECT_EQ(index_tuples(3, 2).size(), 3u);
}

TEST(Forms, DivisibilityAndExactDivision) {
  XY v;
  DiffForm w = BigInt(6) * v.x * v.dx + BigInt(4) * v.dy;
  EXPECT_TRUE(w.divisible_by(2));
  EXPECT_FALSE(w.divisible_by(3));
  EXPECT_EQ(exact_div(w, 2), BigInt(3) * v.x * v.dx + BigInt(2) * v.dy);
  EXPECT_THROW(exact_div(w, 4), NotDivisible);
  EXPECT_EQ(reduce_mod(w, 4), BigInt(2) * v.x * v.dx);
}
