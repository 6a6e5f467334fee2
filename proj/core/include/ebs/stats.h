#pragma once

#include <utility>
#include <vector>

#include "ebs/game.h"
#include "ebs/maximin.h"
#include "ebs/solution.h"

namespace ebs {

// Upper and lower reward bounds of the plausible set, per player and action.
struct BoundedGame {
  RewardTables upper;
  RewardTables lower;
};

// Play statistics of one learner over a unit-range game, with the epoch
// bookkeeping of the doubling trick. Counts and means used for confidence
// bounds are frozen at the start of each epoch.
class PlayStats {
 public:
  PlayStats(int n1, int n2, double delta);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int num_actions() const { return n1_ * n2_; }
  double delta() const { return delta_; }

  // Index of the next round (1-based); equals total plays + 1.
  long round() const { return t_; }
  int epoch() const { return k_; }
  long epoch_start() const { return t_k_; }

  long total_count(JointAction a) const { return total_[idx(a)]; }
  long frozen_count(JointAction a) const { return frozen_[idx(a)]; }
  long epoch_count(JointAction a) const { return epoch_[idx(a)]; }
  long epoch_length() const { return epoch_len_; }
  const std::vector<long>& epoch_counts() const { return epoch_; }

  double mean(PlayerId p, JointAction a) const { return mean_[p][a]; }
  double frozen_mean(PlayerId p, JointAction a) const { return frozen_mean_[p][a]; }

  // Records one observation. Rewards must lie in [0, 1].
  void update(JointAction a, RewardSample sample);

  // True once the in-epoch count of `a` exceeds max(1, its count at epoch start).
  bool epoch_should_end(JointAction a) const;

  // Closes the current epoch (if any plays happened) and freezes counts and means.
  void begin_epoch();

  // Radius of the plausible set for `a`; +inf when `a` was never played
  // before the epoch started.
  double conf_radius(JointAction a) const;

  // Confidence level used for this epoch: delta / (k * t_k).
  double epoch_delta() const;

  BoundedGame bounded_game() const;

  double policy_radius(const CorrelatedPolicy& pi) const;
  // Radius of the product of p's mixed strategy with an opponent pure action.
  double product_radius(const MixedStrategy& own, int opponent_action) const;

  // Table of conf_radius over all joint actions.
  Table radii() const;

 private:
  std::size_t idx(JointAction a) const { return static_cast<std::size_t>(a.a1) * n2_ + a.a2; }

  int n1_;
  int n2_;
  double delta_;
  long t_ = 1;
  int k_ = 0;
  long t_k_ = 1;
  long epoch_len_ = 0;
  std::vector<long> total_;
  std::vector<long> frozen_;
  std::vector<long> epoch_;
  RewardTables mean_;
  RewardTables frozen_mean_;
};

// [max(0, mean - radius), min(1, mean + radius)].
std::pair<double, double> plausible_interval(double mean, double radius);

// Weighted radius sum_a pi(a) C(a); zero-probability actions do not contribute.
double policy_radius(const Table& radii, const CorrelatedPolicy& pi);
// Radius of p's mixed strategy played against a fixed opponent action.
double product_radius(const Table& radii, const MixedStrategy& own, int opponent_action);

// sqrt(2 ln(1 / delta_k) / n) with delta_k = delta / (k * t_k); +inf for n = 0.
double confidence_radius(double delta, int k, long t_k, long n);

// Exploration tolerance 2 * (A ln t_k / t_k)^(1/3); the log is taken at
// max(t_k, 2).
double epsilon_schedule(long t_k, int num_actions);

}  // namespace ebs
