#include "ebs/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebs {

PlayStats::PlayStats(int n1, int n2, double delta)
    : n1_(n1),
      n2_(n2),
      delta_(delta),
      total_(static_cast<std::size_t>(n1) * n2, 0),
      frozen_(total_),
      epoch_(total_),
      mean_{Table(n1, n2), Table(n1, n2)},
      frozen_mean_(mean_) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("PlayStats needs at least one action per player");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  begin_epoch();
}

void PlayStats::update(JointAction a, RewardSample sample) {
  if (a.a1 < 0 || a.a1 >= n1_ || a.a2 < 0 || a.a2 >= n2_) throw std::out_of_range("joint action out of range");
  if (!(sample.r1 >= 0.0 && sample.r1 <= 1.0 && sample.r2 >= 0.0 && sample.r2 <= 1.0))
    throw std::invalid_argument("reward sample outside [0, 1]; normalize the game first");
  const std::size_t i = idx(a);
  const long n = ++total_[i];
  ++epoch_[i];
  ++epoch_len_;
  ++t_;
  mean_.p1[a] += (sample.r1 - mean_.p1[a]) / static_cast<double>(n);
  mean_.p2[a] += (sample.r2 - mean_.p2[a]) / static_cast<double>(n);
}

bool PlayStats::epoch_should_end(JointAction a) const {
  const std::size_t i = idx(a);
  return epoch_[i] > std::max<long>(1, frozen_[i]);
}

void PlayStats::begin_epoch() {
  ++k_;
  t_k_ = t_;
  frozen_ = total_;
  frozen_mean_ = mean_;
  std::fill(epoch_.begin(), epoch_.end(), 0);
  epoch_len_ = 0;
}

double PlayStats::epoch_delta() const { return delta_ / (static_cast<double>(k_) * static_cast<double>(t_k_)); }

double confidence_radius(double delta, int k, long t_k, long n) {
  if (n == 0) return std::numeric_limits<double>::infinity();
  const double delta_k = delta / (static_cast<double>(k) * static_cast<double>(t_k));
  return std::sqrt(2.0 * std::log(1.0 / delta_k) / static_cast<double>(n));
}

double PlayStats::conf_radius(JointAction a) const { return confidence_radius(delta_, k_, t_k_, frozen_[idx(a)]); }

Table PlayStats::radii() const {
  Table t(n1_, n2_);
  for (int r = 0; r < n1_; ++r)
    for (int c = 0; c < n2_; ++c) t(r, c) = conf_radius({r, c});
  return t;
}

BoundedGame PlayStats::bounded_game() const {
  BoundedGame g{{Table(n1_, n2_, 1.0), Table(n1_, n2_, 1.0)}, {Table(n1_, n2_, 0.0), Table(n1_, n2_, 0.0)}};
  for (int r = 0; r < n1_; ++r) {
    for (int c = 0; c < n2_; ++c) {
      const JointAction a{r, c};
      if (frozen_[idx(a)] == 0) continue;
      const double radius = conf_radius(a);
      for (PlayerId p : {PlayerId::P1, PlayerId::P2}) {
        const auto [lo, hi] = plausible_interval(frozen_mean_[p][a], radius);
        g.lower[p][a] = lo;
        g.upper[p][a] = hi;
      }
    }
  }
  return g;
}

std::pair<double, double> plausible_interval(double mean, double radius) {
  return {std::max(0.0, mean - radius), std::min(1.0, mean + radius)};
}

double policy_radius(const Table& radii, const CorrelatedPolicy& pi) {
  double total = 0.0;
  for (const auto& e : pi.entries()) {
    if (e.prob > 0.0) total += e.prob * radii[e.action];
  }
  return total;
}

double product_radius(const Table& radii, const MixedStrategy& own, int opponent_action) {
  double total = 0.0;
  for (int b = 0; b < own.size(); ++b) {
    const double pb = own.probs[static_cast<std::size_t>(b)];
    if (pb > 0.0) total += pb * radii[joint(own.owner, b, opponent_action)];
  }
  return total;
}

double PlayStats::policy_radius(const CorrelatedPolicy& pi) const { return ebs::policy_radius(radii(), pi); }

double PlayStats::product_radius(const MixedStrategy& own, int opponent_action) const {
  return ebs::product_radius(radii(), own, opponent_action);
}

double epsilon_schedule(long t_k, int num_actions) {
  if (t_k < 1) throw std::invalid_argument("epsilon_schedule requires t_k >= 1");
  const double t = static_cast<double>(t_k);
  const double log_t = std::log(std::max(t, 2.0));
  return 2.0 * std::cbrt(static_cast<double>(num_actions) * log_t / t);
}

}  // namespace ebs
