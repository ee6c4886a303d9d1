#include "wittrw/sampling.hpp"
#include "wittrw/witt_blowup.hpp"

#include <gtest/gtest.h>

using namespace wittrw;

namespace {

IntPoly k(std::int64_t v, std::size_t t = 1) { return IntPoly::constant(t, v); }

GhostTuple ghost(const TruncationSet& S, std::vector<IntPoly> g) {
  const auto vars = g[0].var_count();
  return GhostTuple(S, std::move(g), vars);
}

}  // namespace

TEST(BlowupSplit, PartitionsIndices) {
  auto a = [](int i) { return IntPoly::var(1, 0) + k(i); };
  auto s = blowup_split(ghost({1, 2}, {a(1), a(2)}), 2);
  EXPECT_EQ(s.coprime, ghost({1}, {a(1)}));
  EXPECT_EQ(s.frobenius, ghost({1}, {a(2)}));

  auto s6 = blowup_split(ghost({1, 2, 3, 6}, {a(1), a(2), a(3), a(6)}), 2);
  EXPECT_EQ(s6.coprime, ghost({1, 3}, {a(1), a(3)}));
  EXPECT_EQ(s6.frobenius, ghost({1, 3}, {a(2), a(6)}));

  auto r = IntPoly::var(1, 0);
  auto s0 = blowup_split(ghost({1, 2}, {r, k(0)}), 2);
  EXPECT_EQ(s0.coprime, ghost({1}, {r}));
  EXPECT_TRUE(s0.frobenius.is_zero());

  EXPECT_THROW(blowup_split(ghost({1, 2}, {r, r}), 3), std::invalid_argument);
}

TEST(BlowupSplit, LocalizedMembershipExamples) {
  auto t = IntPoly::var(1, 0);
  // half of the ghost tuple of V_2[t]
  GhostTuple half = ghost({1, 2}, {k(0), t});
  EXPECT_TRUE(localized_member(half, 2));
  EXPECT_FALSE(WittVector::try_from_ghost(half).has_value());
  EXPECT_TRUE(localized_member(ghost({1, 2}, {k(1), BigInt(2) * t + k(1)}), 2));
}

TEST(BlowupSplit, MergeInvertsSplit) {
  sampling::Rng rng(41);
  const std::vector<TruncationSet> sets{{1, 2}, {1, 2, 4}, {1, 3}, {1, 2, 3, 6}, {1, 2, 3, 4, 6, 12}};
  int cases = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& S = sets[static_cast<std::size_t>(i) % sets.size()];
    auto g = sampling::random_ghost(rng, S, {2, 3, 9, 4});
    for (auto p : S.primes()) {
      auto [u, v] = blowup_split(g, p);
      EXPECT_EQ(blowup_merge(u, v, p, S), g);
      auto back = blowup_split(blowup_merge(u, v, p, S), p);
      EXPECT_EQ(back.coprime, u);
      EXPECT_EQ(back.frobenius, v);
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

TEST(BlowupSplit, LocalizationIsClosedUnderProducts) {
  sampling::Rng rng(42);
  TruncationSet S{1, 2, 3, 6};
  for (int i = 0; i < 100; ++i) {
    for (std::int64_t p : {2, 3}) {
      // elements of the localization: integral Witt vectors, then divide the part at p-multiples by p
      auto a = sampling::random_witt(rng, S, {1, 3, 9, 3}).ghost();
      auto b = sampling::random_witt(rng, S, {1, 3, 9, 3}).ghost();
      EXPECT_TRUE(localized_member(a, p));
      auto ab = a;
      ab *= b;
      EXPECT_TRUE(localized_member(ab, p));
      auto split_a = blowup_split(a, p);
      auto split_b = blowup_split(b, p);
      EXPECT_TRUE(dwork_check(split_a.coprime) && dwork_check(split_a.frobenius));
      EXPECT_TRUE(dwork_check(split_b.frobenius));
    }
  }
}

TEST(GeneratorProductRule, RandomInputs) {
  sampling::Rng rng(43);
  TruncationSet S{1, 2, 3, 6};
  for (int i = 0; i < 100; ++i) {
    auto m = sampling::random_element(rng, S), n = sampling::random_element(rng, S);
    auto r = sampling::random_poly(rng, {2, 3, 9, 3}), s = sampling::random_poly(rng, {2, 3, 9, 3});
    auto lhs = ghost_generator(m, r, S);
    lhs *= ghost_generator(n, s, S);
    EXPECT_EQ(lhs, generator_product_rule(m, r, n, s, S)) << "m=" << m << " n=" << n;
  }
}

TEST(GeneratorProductRule, LocalizedVersion) {
  sampling::Rng rng(44);
  TruncationSet S{1, 2, 3, 6};
  for (int i = 0; i < 100; ++i) {
    auto m = sampling::random_element(rng, S), n = sampling::random_element(rng, S);
    auto r = sampling::random_poly(rng, {2, 2, 9, 3}), s = sampling::random_poly(rng, {2, 2, 9, 3});
    for (std::int64_t p : {2, 3}) {
      auto lhs = localized_generator(m, r, p, S);
      lhs *= localized_generator(n, s, p, S);
      EXPECT_EQ(lhs, localized_product_rule(m, r, n, s, p, S));
    }
  }
}

TEST(IteratedBlowup, BothPrimeOrdersRecoverGhostComponents) {
  sampling::Rng rng(45);
  TruncationSet S{1, 2, 3, 6};
  for (int i = 0; i < 100; ++i) {
    auto a = sampling::random_witt(rng, S, {2, 3, 9, 3});
    for (const auto& order : {std::vector<std::int64_t>{2, 3}, std::vector<std::int64_t>{3, 2}}) {
      auto leaves = iterated_blowup(a.ghost(), order, true);
      ASSERT_EQ(leaves.size(), S.size());
      for (std::size_t j = 0; j < S.size(); ++j) {
        EXPECT_EQ(leaves[j].index, S.elems()[j]);
        EXPECT_EQ(leaves[j].value, a.ghost().comps()[j]);
      }
    }
  }
}

TEST(IteratedBlowup, LargerSet) {
  TruncationSet S{1, 2, 3, 4, 6, 12};
  auto a = teichmuller(IntPoly::var(1, 0) + k(1), S);
  auto leaves = iterated_blowup(a.ghost(), {3, 2}, true);
  ASSERT_EQ(leaves.size(), 6u);
  for (std::size_t j = 0; j < S.size(); ++j) EXPECT_EQ(leaves[j].value, a.ghost().comps()[j]);
}

TEST(MuElement, GhostIsSigmaTimesUnitVector) {
  TruncationSet S{1, 2, 3, 6};
  for (auto n : S) {
    auto mu = mu_element(n, S);
    for (auto j : S) EXPECT_EQ(mu.ghost().at(j), IntPoly::constant(0, j == n ? 6 : 0));
  }
}
