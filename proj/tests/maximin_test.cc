#include "ebs/maximin.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace ebs {
namespace {

using testing::table1_means;

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Certificate check: every opponent pure action yields at least `value`, and
// the reported best response attains it.
void expect_certificate(const Table& table, const MaximinResult& res) {
  const Table own = own_view(table, res.strategy.owner);
  ASSERT_EQ(res.strategy.size(), own.rows());
  EXPECT_NEAR(sum(res.strategy.probs), 1.0, 1e-12);
  for (double p : res.strategy.probs) EXPECT_GE(p, 0.0);
  for (int c = 0; c < own.cols(); ++c) {
    double v = 0.0;
    for (int b = 0; b < own.rows(); ++b) v += res.strategy.probs[b] * own(b, c);
    EXPECT_GE(v, res.value - 1e-9);
    if (c == res.certificate_br) EXPECT_NEAR(v, res.value, 1e-9);
  }
}

// Best value over a grid of mixtures for a player with two actions.
double grid_maximin_two_actions(const Table& own, double step) {
  double best = -1e300;
  for (double q = 0.0; q <= 1.0 + 1e-12; q += step) {
    double worst = 1e300;
    for (int c = 0; c < own.cols(); ++c) worst = std::min(worst, q * own(0, c) + (1 - q) * own(1, c));
    best = std::max(best, worst);
  }
  return best;
}

TEST(MaximinTest, Table1BothPlayersPlayD) {
  const auto m = table1_means();
  const MaximinResult p1 = solve_matrix_maximin(m.p1, PlayerId::P1);
  EXPECT_NEAR(p1.value, 0.3, 1e-9);
  EXPECT_NEAR(p1.strategy.probs[1], 1.0, 1e-12);
  expect_certificate(m.p1, p1);

  const MaximinResult p2 = solve_matrix_maximin(m.p2, PlayerId::P2);
  EXPECT_NEAR(p2.value, 0.3, 1e-9);
  EXPECT_NEAR(p2.strategy.probs[1], 1.0, 1e-12);
  EXPECT_EQ(p2.strategy.owner, PlayerId::P2);
  expect_certificate(m.p2, p2);
}

TEST(MaximinTest, MatchingPennies) {
  const Table t{{1, 0}, {0, 1}};
  const MaximinResult r = solve_matrix_maximin(t, PlayerId::P1);
  EXPECT_NEAR(r.value, 0.5, 1e-9);
  EXPECT_NEAR(r.strategy.probs[0], 0.5, 1e-12);
  EXPECT_NEAR(r.value, grid_maximin_two_actions(t, 1e-4), 1e-4);
}

TEST(MaximinTest, ConstantGamePicksFirstAction) {
  const MaximinResult r = solve_matrix_maximin(Table(3, 2, 1.0), PlayerId::P1);
  EXPECT_EQ(r.strategy.probs, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(MaximinTest, RejectsNonFinite) {
  EXPECT_THROW(solve_matrix_maximin(Table{{1.0, std::nan("")}}, PlayerId::P1), SolverError);
}

TEST(MaximinTest, CertificateOnRandomGames) {
  Rng rng(123);
  for (int i = 0; i < 300; ++i) {
    const int n1 = 1 + static_cast<int>(rng() % 6), n2 = 1 + static_cast<int>(rng() % 6);
    const RewardTables m = testing::random_means(n1, n2, rng);
    for (PlayerId p : {PlayerId::P1, PlayerId::P2}) expect_certificate(m[p], solve_matrix_maximin(m[p], p));
  }
}

TEST(MaximinTest, AgreesWithGridOnTwoActionGames) {
  Rng rng(321);
  for (int i = 0; i < 50; ++i) {
    const RewardTables m = testing::random_means(2, 1 + static_cast<int>(rng() % 4), rng);
    const MaximinResult r = solve_matrix_maximin(m.p1, PlayerId::P1);
    EXPECT_NEAR(r.value, grid_maximin_two_actions(m.p1, 1e-4), 1e-4);
  }
}

TEST(MaximinTest, PureOpponentSufficesAgainstMixtures) {
  // min over opponent mixtures equals min over its pure actions.
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const RewardTables m = testing::random_means(3, 2, rng);
    const MaximinResult r = solve_matrix_maximin(m.p1, PlayerId::P1);
    double mixed_min = 1e300;
    for (double q = 0.0; q <= 1.0 + 1e-12; q += 1e-3) {
      double v = 0.0;
      for (int b = 0; b < 3; ++b) v += r.strategy.probs[b] * (q * m.p1(b, 0) + (1 - q) * m.p1(b, 1));
      mixed_min = std::min(mixed_min, v);
    }
    EXPECT_NEAR(mixed_min, r.value, 1e-9);
  }
}

TEST(BestResponseTest, Table1RowD) {
  const BestResponse br = best_response_value(table1_means().p1, MixedStrategy::pure(PlayerId::P1, 2, 1));
  EXPECT_EQ(br.action, 1);
  EXPECT_DOUBLE_EQ(br.value, 0.3);
}

TEST(BestResponseTest, TiesGoToSmallestIndex) {
  const BestResponse br = best_response_value(Table{{1, 0}, {0, 1}}, MixedStrategy{PlayerId::P1, {0.5, 0.5}});
  EXPECT_EQ(br.action, 0);
  EXPECT_DOUBLE_EQ(br.value, 0.5);
}

TEST(BestResponseTest, SingleColumn) {
  const BestResponse br = best_response_value(Table{{0.2}, {0.6}}, MixedStrategy{PlayerId::P1, {0.25, 0.75}});
  EXPECT_EQ(br.action, 0);
  EXPECT_DOUBLE_EQ(br.value, 0.25 * 0.2 + 0.75 * 0.6);
}

TEST(BestResponseTest, SecondPlayerView) {
  // Player 2 plays column 1 (D) in Table 1; player 1's best reply to hurt it is row D.
  const BestResponse br = best_response_value(table1_means().p2, MixedStrategy::pure(PlayerId::P2, 2, 1));
  EXPECT_EQ(br.action, 1);
  EXPECT_DOUBLE_EQ(br.value, 0.3);
}

TEST(OptimisticMaximinTest, ZeroWidthSandwich) {
  const auto m = table1_means();
  for (PlayerId p : {PlayerId::P1, PlayerId::P2}) {
    const OptimisticMaximin o = optimistic_maximin(m[p], m[p], p);
    EXPECT_NEAR(o.sv_check, 0.3, 1e-12);
  }
}

TEST(OptimisticMaximinTest, ZeroLowerGame) {
  Rng rng(4);
  const RewardTables m = testing::random_means(3, 3, rng);
  EXPECT_EQ(optimistic_maximin(m.p1, Table(3, 3, 0.0), PlayerId::P1).sv_check, 0.0);
}

TEST(OptimisticMaximinTest, EqualBoundsGiveTrueMaximin) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const RewardTables m = testing::random_means(3, 4, rng);
    for (PlayerId p : {PlayerId::P1, PlayerId::P2})
      EXPECT_NEAR(optimistic_maximin(m[p], m[p], p).sv_check, solve_matrix_maximin(m[p], p).value, 1e-9);
  }
}

TEST(OptimisticMaximinTest, SandwichIsPessimistic) {
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const int n1 = 2 + static_cast<int>(rng() % 3), n2 = 2 + static_cast<int>(rng() % 3);
    const RewardTables truth = testing::random_means(n1, n2, rng);
    for (PlayerId p : {PlayerId::P1, PlayerId::P2}) {
      Table upper = truth[p], lower = truth[p];
      for (int r = 0; r < n1; ++r) {
        for (int c = 0; c < n2; ++c) {
          upper(r, c) += 0.3 * uniform01(rng);
          lower(r, c) -= 0.3 * uniform01(rng);
        }
      }
      const double sv = solve_matrix_maximin(truth[p], p).value;
      const OptimisticMaximin o = optimistic_maximin(upper, lower, p);
      EXPECT_LE(o.sv_check, sv + 1e-9);
      // The upper game is optimistic about the maximin value.
      EXPECT_GE(solve_matrix_maximin(upper, p).value, sv - 1e-9);
    }
  }
}

}  // namespace
}  // namespace ebs
