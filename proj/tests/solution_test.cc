#include "ebs/solution.h"

#include <gtest/gtest.h>

#include <array>

#include "ebs/maximin.h"
#include "test_util.h"

namespace ebs {
namespace {

using testing::kCC;
using testing::kCD;
using testing::kDC;
using testing::kDD;
using testing::table1_means;

ValuePair exact_maximin(const RewardTables& m) {
  return {solve_matrix_maximin(m.p1, PlayerId::P1).value, solve_matrix_maximin(m.p2, PlayerId::P2).value};
}

TEST(LexCompareTest, Examples) {
  EXPECT_EQ(lex_compare({0.5, 0.5}, {0.3, 0.9}), std::weak_ordering::greater);
  EXPECT_EQ(lex_compare({0.3, 0.9}, {0.9, 0.3}), std::weak_ordering::equivalent);
  EXPECT_EQ(lex_compare({0.3, 0.9}, {0.3, 0.8}), std::weak_ordering::greater);
  EXPECT_EQ(lex_compare({0.3, 0.8}, {0.3, 0.9}), std::weak_ordering::less);
}

TEST(LexCompareTest, TotalPreorderOnRandomTriples) {
  Rng rng(17);
  // Coarse grid so that equal coordinates actually occur.
  auto draw = [&] { return ValuePair{static_cast<double>(rng() % 5), static_cast<double>(rng() % 5)}; };
  for (int i = 0; i < 5000; ++i) {
    const ValuePair x = draw(), y = draw(), z = draw();
    EXPECT_EQ(lex_compare(x, x), std::weak_ordering::equivalent);
    // Totality and antisymmetry of the strict part.
    const auto xy = lex_compare(x, y), yx = lex_compare(y, x);
    EXPECT_EQ(xy == std::weak_ordering::less, yx == std::weak_ordering::greater);
    EXPECT_EQ(xy == std::weak_ordering::equivalent, yx == std::weak_ordering::equivalent);
    if (xy != std::weak_ordering::less && lex_compare(y, z) != std::weak_ordering::less)
      EXPECT_NE(lex_compare(x, z), std::weak_ordering::less);
    if (xy == std::weak_ordering::equivalent) {
      EXPECT_EQ(x.min(), y.min());
      EXPECT_EQ(x.max(), y.max());
    }
  }
}

TEST(AdvantageTest, Table1) {
  const RewardTables adv = advantage_means(table1_means(), {0.3, 0.3});
  EXPECT_NEAR(adv.p1[kCD], -0.2, 1e-15);
  EXPECT_NEAR(adv.p2[kCD], 1.5, 1e-15);
  EXPECT_NEAR(adv.p1[kDC], 1.5, 1e-15);
  EXPECT_NEAR(adv.p2[kDC], -0.3, 1e-15);
  EXPECT_EQ(advantage_means(table1_means(), {0.0, 0.0}), table1_means());
}

TEST(PairWeightTest, Table1RatioCase) {
  const RewardTables adv = advantage_means(table1_means(), {0.3, 0.3});
  const double w = pair_weight(adv, kDC, kCD);
  EXPECT_NEAR(w, 17.0 / 35.0, 1e-14);
  // Both players' mixed advantages equal 1.7 w - 0.2.
  EXPECT_NEAR(w * 1.5 + (1 - w) * -0.2, 1.7 * w - 0.2, 1e-14);
  EXPECT_NEAR(w * -0.3 + (1 - w) * 1.5, 1.7 * w - 0.2, 1e-14);
}

TEST(PairWeightTest, FirstTwoCases) {
  const RewardTables adv{Table{{0.1, 0.2}}, Table{{0.5, 0.2}}};
  // Both weakly favour player 2; the equality also satisfies the second case.
  EXPECT_EQ(pair_weight(adv, {0, 0}, {0, 1}), 0.0);
  const RewardTables adv2{Table{{0.9, 0.7}}, Table{{0.5, 0.2}}};
  EXPECT_EQ(pair_weight(adv2, {0, 0}, {0, 1}), 1.0);
}

TEST(PairScoreTest, Table1) {
  const RewardTables adv = advantage_means(table1_means(), {0.3, 0.3});
  EXPECT_NEAR(pair_score(adv, kDC, kCD).min_score, 21.9 / 35.0, 1e-14);
  EXPECT_NEAR(pair_score(adv, kCC, kCC).min_score, 0.5, 1e-15);
  for (JointAction a : {kCC, kCD, kDC, kDD})
    EXPECT_DOUBLE_EQ(pair_score(adv, a, a).min_score, std::min(adv.p1[a], adv.p2[a]));
}

TEST(EbsSolveTest, Table1) {
  const EBSSolution s = ebs_solve(table1_means(), {0.3, 0.3});
  ASSERT_EQ(s.policy.support_size(), 2u);
  EXPECT_NEAR(s.policy.prob(kDC), 17.0 / 35.0, 1e-12);
  EXPECT_NEAR(s.policy.prob(kCD), 18.0 / 35.0, 1e-12);
  EXPECT_NEAR(s.ebs_value.v1, 162.0 / 175.0, 1e-12);
  EXPECT_NEAR(s.ebs_value.v2, 162.0 / 175.0, 1e-12);
  // Support pairs are enumerated in joint-action order.
  EXPECT_EQ(s.support.first, kCD);
  EXPECT_EQ(s.support.second, kDC);

  const EBSSolution grid = ebs_oracle_grid(table1_means(), {0.3, 0.3}, 1e-5);
  EXPECT_NEAR(grid.egalitarian_advantage.min(), 0.625714, 2e-5);
  EXPECT_NEAR(grid.egalitarian_advantage.min(), s.egalitarian_advantage.min(), 2e-5);
}

TEST(EbsSolveTest, SingleActionGame) {
  const RewardTables m{Table{{0.4}}, Table{{0.7}}};
  const EBSSolution s = ebs_solve(m, exact_maximin(m));
  EXPECT_DOUBLE_EQ(s.ebs_value.v1, 0.4);
  EXPECT_DOUBLE_EQ(s.ebs_value.v2, 0.7);
  EXPECT_EQ(s.weight, 1.0);
  EXPECT_EQ(s.support.first, s.support.second);
}

TEST(EbsSolveTest, LowerBoundGameWithoutPerturbation) {
  RewardTables m{Table(3, 3, 0.5), Table(3, 3, 0.5)};
  m.p2(0, 0) = 1.0;
  const EBSSolution s = ebs_solve(m, exact_maximin(m));
  EXPECT_DOUBLE_EQ(s.ebs_value.v1, 0.5);
  EXPECT_DOUBLE_EQ(s.ebs_value.v2, 1.0);
  EXPECT_EQ(s.policy, CorrelatedPolicy::point({0, 0}));
}

TEST(OracleTest, AllEqualMeans) {
  const RewardTables m{Table(2, 3, 0.4), Table(2, 3, 0.4)};
  const EBSSolution s = ebs_oracle_grid(m, {0.4, 0.4}, 0.01);
  EXPECT_EQ(s.egalitarian_advantage, (ValuePair{0.0, 0.0}));
}

TEST(OracleTest, RejectsCoarseGrid) {
  EXPECT_THROW(ebs_oracle_grid(table1_means(), {0.3, 0.3}, 0.05), std::invalid_argument);
}

TEST(OracleTest, AgreesWithExactSolverOnRandomGames) {
  Rng rng(99);
  const double w_step = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const RewardTables m = testing::random_means(3, 3, rng);
    const ValuePair mm = exact_maximin(m);
    const EBSSolution exact = ebs_solve(m, mm);
    const EBSSolution grid = ebs_oracle_grid(m, mm, w_step);
    const double tol = 2 * w_step * testing::spread(m);
    EXPECT_NEAR(exact.egalitarian_advantage.min(), grid.egalitarian_advantage.min(), tol) << "game " << i;
    // The grid never beats the exact solution.
    EXPECT_LE(grid.egalitarian_advantage.min(), exact.egalitarian_advantage.min() + 1e-12);
  }
}

class EbsPropertyTest : public ::testing::TestWithParam<std::array<int, 2>> {};

TEST_P(EbsPropertyTest, StructuralProperties) {
  const auto [n1, n2] = GetParam();
  Rng rng(1000 + 10 * n1 + n2);
  for (int i = 0; i < 40; ++i) {
    const RewardTables m = testing::random_means(n1, n2, rng);
    const ValuePair mm = exact_maximin(m);
    const EBSSolution s = ebs_solve(m, mm);

    EXPECT_LE(s.policy.support_size(), 2u);
    EXPECT_GE(s.ebs_value.v1, mm.v1 - 1e-9);
    EXPECT_GE(s.ebs_value.v2, mm.v2 - 1e-9);
    EXPECT_GE(s.egalitarian_advantage.min(), -1e-9);
    const ValuePair realized = s.policy.value(m);
    EXPECT_NEAR(realized.v1, s.ebs_value.v1, 1e-12);
    EXPECT_NEAR(realized.v2, s.ebs_value.v2, 1e-12);

    // Same map r -> c r + b for both players.
    const double c = 0.1 + 3.0 * uniform01(rng), b = 2.0 * uniform01(rng) - 1.0;
    RewardTables mapped = m;
    for (Table* t : {&mapped.p1, &mapped.p2})
      for (int r = 0; r < n1; ++r)
        for (int k = 0; k < n2; ++k) (*t)(r, k) = c * (*t)(r, k) + b;
    const EBSSolution sm = ebs_solve(mapped, {c * mm.v1 + b, c * mm.v2 + b});
    EXPECT_EQ(sm.support, s.support);
    EXPECT_NEAR(sm.weight, s.weight, 1e-9);
    EXPECT_NEAR(sm.ebs_value.v1, c * s.ebs_value.v1 + b, 1e-9);
    EXPECT_NEAR(sm.ebs_value.v2, c * s.ebs_value.v2 + b, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, EbsPropertyTest,
                         ::testing::Values(std::array<int, 2>{1, 3}, std::array<int, 2>{2, 2},
                                           std::array<int, 2>{3, 2}, std::array<int, 2>{3, 4},
                                           std::array<int, 2>{4, 4}, std::array<int, 2>{5, 5}));

TEST(EbsPropertyTest, RatioCaseEqualizesAdvantages) {
  Rng rng(5);
  int ratio_cases = 0;
  for (int i = 0; i < 2000; ++i) {
    const RewardTables adv = testing::random_means(1, 2, rng);
    const JointAction a{0, 0}, b{0, 1};
    const double d_a = adv.p1[a] - adv.p2[a], d_b = adv.p1[b] - adv.p2[b];
    if (!((d_a > 0 && d_b < 0) || (d_a < 0 && d_b > 0))) continue;
    ++ratio_cases;
    const PairScore s = pair_score(adv, a, b);
    EXPECT_NEAR(s.mixed.v1, s.mixed.v2, 1e-12);
  }
  EXPECT_GT(ratio_cases, 500);
}

}  // namespace
}  // namespace ebs
