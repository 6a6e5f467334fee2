#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "ebs/game.h"

namespace ebs {

struct ValuePair {
  double v1 = 0.0;
  double v2 = 0.0;

  double of(PlayerId p) const { return p == PlayerId::P1 ? v1 : v2; }
  double min() const { return v1 < v2 ? v1 : v2; }
  double max() const { return v1 < v2 ? v2 : v1; }

  friend ValuePair operator+(ValuePair a, ValuePair b) { return {a.v1 + b.v1, a.v2 + b.v2}; }
  friend ValuePair operator-(ValuePair a, ValuePair b) { return {a.v1 - b.v1, a.v2 - b.v2}; }
  friend bool operator==(const ValuePair&, const ValuePair&) = default;
};

// Probability distribution over joint actions shared by both players.
// Entries are kept sorted by joint action and carry strictly positive mass.
class CorrelatedPolicy {
 public:
  struct Entry {
    JointAction action;
    double prob;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  CorrelatedPolicy() = default;
  static CorrelatedPolicy point(JointAction a);
  // Mixture w * a + (1 - w) * b; collapses to a point when a == b or w is 0 or 1.
  static CorrelatedPolicy mix(JointAction a, JointAction b, double w);
  // Validates nonnegativity and normalization (tolerance 1e-12).
  static CorrelatedPolicy from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  double prob(JointAction a) const;
  bool empty() const { return entries_.empty(); }

  // Expected value of a table under the policy.
  double expectation(const Table& t) const;
  ValuePair value(const RewardTables& tables) const;

  friend bool operator==(const CorrelatedPolicy&, const CorrelatedPolicy&) = default;

 private:
  std::vector<Entry> entries_;
};

struct EBSSolution {
  ValuePair maximin;
  ValuePair ebs_value;
  ValuePair egalitarian_advantage;
  std::pair<JointAction, JointAction> support;
  // Probability placed on support.first.
  double weight = 1.0;
  CorrelatedPolicy policy;
};

// Lexicographic maximin ordering: smaller coordinate first, then larger one.
std::weak_ordering lex_compare(ValuePair x, ValuePair y);

RewardTables advantage_means(const RewardTables& means, ValuePair maximin);

// Mixing weight on `a` for the pair (a, b) in the advantage game.
double pair_weight(const RewardTables& adv, JointAction a, JointAction b);

struct PairScore {
  double min_score;
  double tiebreak_max;
  double weight;
  ValuePair mixed;
};

PairScore pair_score(const RewardTables& adv, JointAction a, JointAction b);

// Exact EBS of a game with known means. `maximin` must be the game's true
// maximin pair.
EBSSolution ebs_solve(const RewardTables& means, ValuePair maximin);

// Brute-force reference: every pair of joint actions and every weight on a
// grid of step `w_step`. Intended for verification only.
EBSSolution ebs_oracle_grid(const RewardTables& means, ValuePair maximin, double w_step);

}  // namespace ebs
