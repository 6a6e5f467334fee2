#pragma once

#include <cstdint>
#include <string>

#include "ebs/game.h"
#include "ebs/maximin.h"
#include "ebs/solution.h"
#include "ebs/stats.h"

namespace ebs {

enum class Branch { EgalitarianPolicy, IdealOverride, EbsErrorAction, MaximinErrorAction };

struct BranchTag {
  Branch kind = Branch::EgalitarianPolicy;
  // Meaningful for IdealOverride and MaximinErrorAction only.
  PlayerId player = PlayerId::P1;

  friend bool operator==(const BranchTag&, const BranchTag&) = default;
};

// Short stable name, e.g. "egalitarian", "ideal_p2", "maximin_error_p1".
std::string to_string(BranchTag tag);

struct PolicyDecision {
  CorrelatedPolicy policy;
  BranchTag branch;
  // Optimistic EBS policy in the advantage game, before any override.
  CorrelatedPolicy egalitarian;
  ValuePair sv_check;
  ValuePair ebs_advantage;
  double epsilon = 0.0;

  friend bool operator==(const PolicyDecision&, const PolicyDecision&) = default;
};

enum class LearnerMode { SelfPlayEBS, SafetyMaximin };

// Optimistic EBS policy for one epoch given the plausible-set bounds, the
// per-action confidence radii and the tolerance epsilon. Overrides are
// applied in order and later ones replace earlier ones: ideal-advantage
// action, then the action dominating the EBS-value error, then the action
// dominating the maximin-value error of player 1 and then player 2.
PolicyDecision compute_policy(const BoundedGame& bounds, const Table& radii, double epsilon);

PolicyDecision compute_epoch_policy(const PlayStats& stats);

// Support action whose in-epoch frequency lags its target probability the
// most. Ties go to the smallest joint action.
JointAction next_action(const CorrelatedPolicy& policy, const PlayStats& stats);
JointAction next_action(const CorrelatedPolicy& policy, const Table& epoch_counts, long epoch_length);

// Maximin strategy of p in the upper-confidence game.
MixedStrategy safety_policy(const PlayStats& stats, PlayerId p);

// Draws an action index from a mixed strategy.
int sample_action(const MixedStrategy& strategy, Rng& rng);

// Self-play learner. Both players run one instance each; since they share
// every observation their states stay identical.
class SelfPlayAgent {
 public:
  SelfPlayAgent(int n1, int n2, double delta);

  JointAction next_action() const;
  // Records the round; returns true when it closed the epoch.
  bool run_round(JointAction played, RewardSample sample);

  const PolicyDecision& decision() const { return decision_; }
  const PlayStats& stats() const { return stats_; }

 private:
  PlayStats stats_;
  PolicyDecision decision_;
};

// Learner that only targets its own maximin value against an arbitrary
// opponent. It samples its action privately each round.
class SafetyAgent {
 public:
  SafetyAgent(PlayerId self, int n1, int n2, double delta, std::uint64_t seed);

  PlayerId self() const { return self_; }
  // Mixed strategy for the current epoch; this is all an opponent may observe.
  const MixedStrategy& policy() const { return policy_; }
  int act();
  bool run_round(JointAction played, RewardSample sample);

  const PlayStats& stats() const { return stats_; }

 private:
  PlayerId self_;
  PlayStats stats_;
  MixedStrategy policy_;
  Rng rng_;
};

}  // namespace ebs
