#include "ebs/learner.h"

#include <optional>

namespace ebs {

std::string to_string(BranchTag tag) {
  const std::string suffix = tag.player == PlayerId::P1 ? "_p1" : "_p2";
  switch (tag.kind) {
    case Branch::EgalitarianPolicy:
      return "egalitarian";
    case Branch::IdealOverride:
      return "ideal" + suffix;
    case Branch::EbsErrorAction:
      return "ebs_error";
    case Branch::MaximinErrorAction:
      return "maximin_error" + suffix;
  }
  return "?";
}

namespace {

struct Candidate {
  JointAction action;
  double score;
};

// Best-scoring candidate; earlier candidates win ties, and callers feed
// candidates in joint-action order.
void consider(std::optional<Candidate>& best, JointAction a, double score) {
  if (!best || score > best->score) best = Candidate{a, score};
}

// Action of the EBS policy carrying the most probability among those whose
// radius exceeds `threshold`.
std::optional<JointAction> ebs_error_action(const CorrelatedPolicy& pi, const Table& radii, double threshold) {
  std::optional<Candidate> best;
  for (const auto& e : pi.entries())
    if (radii[e.action] > threshold) consider(best, e.action, e.prob);
  if (!best) return std::nullopt;
  return best->action;
}

std::optional<JointAction> maximin_error_action(const OptimisticMaximin& m, const Table& radii, double threshold) {
  std::optional<Candidate> best;
  for (int b = 0; b < m.pi_hat.size(); ++b) {
    const double pb = m.pi_hat.probs[static_cast<std::size_t>(b)];
    if (pb <= 0.0) continue;
    const JointAction a = joint(m.pi_hat.owner, b, m.pi_check);
    if (radii[a] > threshold) consider(best, a, pb);
  }
  if (!best) return std::nullopt;
  return best->action;
}

// The trigger only guarantees some support action with radius above eps / 2.
template <typename Pick>
std::optional<JointAction> with_fallback(Pick pick, double epsilon) {
  if (auto a = pick(epsilon)) return a;
  return pick(epsilon / 2.0);
}

}  // namespace

PolicyDecision compute_policy(const BoundedGame& bounds, const Table& radii, double epsilon) {
  const PerPlayer<OptimisticMaximin> opt{
      optimistic_maximin(bounds.upper.p1, bounds.lower.p1, PlayerId::P1),
      optimistic_maximin(bounds.upper.p2, bounds.lower.p2, PlayerId::P2),
  };
  const ValuePair sv_check{opt.p1.sv_check, opt.p2.sv_check};
  const RewardTables adv = advantage_means(bounds.upper, sv_check);
  const EBSSolution eg = ebs_solve(adv, ValuePair{0.0, 0.0});
  const ValuePair v_plus = eg.egalitarian_advantage;

  PolicyDecision d;
  d.policy = eg.policy;
  d.egalitarian = eg.policy;
  d.branch = {Branch::EgalitarianPolicy, PlayerId::P1};
  d.sv_check = sv_check;
  d.ebs_advantage = v_plus;
  d.epsilon = epsilon;

  const int n1 = adv.p1.rows(), n2 = adv.p1.cols();

  // Ideal advantage: among actions keeping the other player within epsilon
  // of its EBS advantage (and non-negative), the one best for player i.
  PerPlayer<std::optional<Candidate>> ideal;
  for (PlayerId i : {PlayerId::P1, PlayerId::P2}) {
    const PlayerId o = other(i);
    for (int r = 0; r < n1; ++r) {
      for (int c = 0; c < n2; ++c) {
        const JointAction a{r, c};
        const double other_adv = adv[o][a];
        if (other_adv + epsilon >= v_plus.of(o) && other_adv >= 0.0) consider(ideal[i], a, adv[i][a]);
      }
    }
  }
  std::optional<PlayerId> chosen;
  for (PlayerId i : {PlayerId::P1, PlayerId::P2}) {
    if (!ideal[i] || !(ideal[i]->score > v_plus.of(i))) continue;
    if (!chosen || ideal[i]->score > ideal[*chosen]->score) chosen = i;
  }
  if (chosen) {
    d.policy = CorrelatedPolicy::point(ideal[*chosen]->action);
    d.branch = {Branch::IdealOverride, *chosen};
  }

  if (2.0 * policy_radius(radii, eg.policy) > epsilon) {
    auto pick = [&](double threshold) { return ebs_error_action(eg.policy, radii, threshold); };
    if (auto a = with_fallback(pick, epsilon)) {
      d.policy = CorrelatedPolicy::point(*a);
      d.branch = {Branch::EbsErrorAction, PlayerId::P1};
    }
  }

  for (PlayerId i : {PlayerId::P1, PlayerId::P2}) {
    const OptimisticMaximin& m = opt[i];
    if (!(2.0 * product_radius(radii, m.pi_hat, m.pi_check) > epsilon)) continue;
    auto pick = [&](double threshold) { return maximin_error_action(m, radii, threshold); };
    if (auto a = with_fallback(pick, epsilon)) {
      d.policy = CorrelatedPolicy::point(*a);
      d.branch = {Branch::MaximinErrorAction, i};
    }
  }
  return d;
}

PolicyDecision compute_epoch_policy(const PlayStats& stats) {
  return compute_policy(stats.bounded_game(), stats.radii(), epsilon_schedule(stats.epoch_start(), stats.num_actions()));
}

JointAction next_action(const CorrelatedPolicy& policy, const Table& epoch_counts, long epoch_length) {
  const double denom = static_cast<double>(std::max<long>(epoch_length, 1));
  std::optional<Candidate> best;
  for (const auto& e : policy.entries()) consider(best, e.action, e.prob - epoch_counts[e.action] / denom);
  return best ? best->action : JointAction{};
}

JointAction next_action(const CorrelatedPolicy& policy, const PlayStats& stats) {
  const double denom = static_cast<double>(std::max<long>(stats.epoch_length(), 1));
  std::optional<Candidate> best;
  for (const auto& e : policy.entries())
    consider(best, e.action, e.prob - static_cast<double>(stats.epoch_count(e.action)) / denom);
  return best ? best->action : JointAction{};
}

MixedStrategy safety_policy(const PlayStats& stats, PlayerId p) {
  return solve_matrix_maximin(stats.bounded_game().upper[p], p).strategy;
}

int sample_action(const MixedStrategy& strategy, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last = 0;
  for (int b = 0; b < strategy.size(); ++b) {
    const double pb = strategy.probs[static_cast<std::size_t>(b)];
    if (pb <= 0.0) continue;
    acc += pb;
    last = b;
    if (u < acc) return b;
  }
  return last;
}

SelfPlayAgent::SelfPlayAgent(int n1, int n2, double delta)
    : stats_(n1, n2, delta), decision_(compute_epoch_policy(stats_)) {}

JointAction SelfPlayAgent::next_action() const { return ebs::next_action(decision_.policy, stats_); }

bool SelfPlayAgent::run_round(JointAction played, RewardSample sample) {
  stats_.update(played, sample);
  if (!stats_.epoch_should_end(played)) return false;
  stats_.begin_epoch();
  decision_ = compute_epoch_policy(stats_);
  return true;
}

SafetyAgent::SafetyAgent(PlayerId self, int n1, int n2, double delta, std::uint64_t seed)
    : self_(self), stats_(n1, n2, delta), policy_(safety_policy(stats_, self)), rng_(seed) {}

int SafetyAgent::act() { return sample_action(policy_, rng_); }

bool SafetyAgent::run_round(JointAction played, RewardSample sample) {
  stats_.update(played, sample);
  if (!stats_.epoch_should_end(played)) return false;
  stats_.begin_epoch();
  policy_ = safety_policy(stats_, self_);
  return true;
}

}  // namespace ebs
