#include "ebs/solution.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebs {

CorrelatedPolicy CorrelatedPolicy::point(JointAction a) {
  CorrelatedPolicy p;
  p.entries_.push_back({a, 1.0});
  return p;
}

CorrelatedPolicy CorrelatedPolicy::mix(JointAction a, JointAction b, double w) {
  if (a == b || w >= 1.0) return point(a);
  if (w <= 0.0) return point(b);
  CorrelatedPolicy p;
  p.entries_ = {{a, w}, {b, 1.0 - w}};
  if (b < a) std::swap(p.entries_[0], p.entries_[1]);
  return p;
}

CorrelatedPolicy CorrelatedPolicy::from_entries(std::vector<Entry> entries) {
  double total = 0.0;
  for (const auto& e : entries) {
    if (!(e.prob >= 0.0)) throw std::invalid_argument("policy probabilities must be nonnegative");
    total += e.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("policy probabilities must sum to 1");
  std::erase_if(entries, [](const Entry& e) { return e.prob == 0.0; });
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.action < y.action; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].action == entries[i - 1].action) throw std::invalid_argument("duplicate joint action in policy");
  CorrelatedPolicy p;
  p.entries_ = std::move(entries);
  return p;
}

double CorrelatedPolicy::prob(JointAction a) const {
  for (const auto& e : entries_)
    if (e.action == a) return e.prob;
  return 0.0;
}

double CorrelatedPolicy::expectation(const Table& t) const {
  double v = 0.0;
  for (const auto& e : entries_) v += e.prob * t[e.action];
  return v;
}

ValuePair CorrelatedPolicy::value(const RewardTables& tables) const {
  return {expectation(tables.p1), expectation(tables.p2)};
}

std::weak_ordering lex_compare(ValuePair x, ValuePair y) {
  if (x.min() < y.min()) return std::weak_ordering::less;
  if (x.min() > y.min()) return std::weak_ordering::greater;
  if (x.max() < y.max()) return std::weak_ordering::less;
  if (x.max() > y.max()) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

RewardTables advantage_means(const RewardTables& means, ValuePair maximin) {
  RewardTables adv = means;
  for (PlayerId p : {PlayerId::P1, PlayerId::P2}) {
    Table& t = adv[p];
    for (int r = 0; r < t.rows(); ++r)
      for (int c = 0; c < t.cols(); ++c) t(r, c) -= maximin.of(p);
  }
  return adv;
}

double pair_weight(const RewardTables& adv, JointAction a, JointAction b) {
  const double x1 = adv.p1[a], x2 = adv.p2[a];
  const double y1 = adv.p1[b], y2 = adv.p2[b];
  // Cases are checked in order; equalities satisfy both of the first two.
  if (x1 <= x2 && y1 <= y2) return 0.0;
  if (x1 >= x2 && y1 >= y2) return 1.0;
  const double denom = (x1 - y1) + (y2 - x2);
  if (denom == 0.0) return 0.0;
  return std::clamp((y2 - y1) / denom, 0.0, 1.0);
}

PairScore pair_score(const RewardTables& adv, JointAction a, JointAction b) {
  const double w = pair_weight(adv, a, b);
  const ValuePair mixed{w * adv.p1[a] + (1.0 - w) * adv.p1[b], w * adv.p2[a] + (1.0 - w) * adv.p2[b]};
  return {mixed.min(), mixed.max(), w, mixed};
}

namespace {

// Lexicographic "strictly better" with an absolute tolerance, so that
// candidates differing only by rounding keep the earliest one.
bool better(ValuePair x, ValuePair best, double tol) {
  if (x.min() > best.min() + tol) return true;
  if (x.min() < best.min() - tol) return false;
  return x.max() > best.max() + tol;
}

double tolerance_for(const RewardTables& adv) {
  const double scale = std::max({std::abs(adv.p1.min()), std::abs(adv.p1.max()), std::abs(adv.p2.min()),
                                 std::abs(adv.p2.max()), 1e-300});
  return 1e-12 * scale;
}

EBSSolution make_solution(ValuePair maximin, ValuePair adv_value, JointAction a, JointAction b, double w) {
  EBSSolution s;
  s.maximin = maximin;
  s.egalitarian_advantage = adv_value;
  s.ebs_value = maximin + adv_value;
  if (a == b) w = 1.0;
  s.support = {a, b};
  s.weight = w;
  s.policy = CorrelatedPolicy::mix(a, b, w);
  return s;
}

}  // namespace

EBSSolution ebs_solve(const RewardTables& means, ValuePair maximin) {
  const RewardTables adv = advantage_means(means, maximin);
  const int n1 = adv.p1.rows(), n2 = adv.p1.cols();
  const int count = n1 * n2;
  const double tol = tolerance_for(adv);

  bool have = false;
  ValuePair best_value{};
  JointAction best_a{}, best_b{};
  double best_w = 1.0;
  for (int i = 0; i < count; ++i) {
    const JointAction a = from_flat(i, n2);
    for (int j = 0; j < count; ++j) {
      const JointAction b = from_flat(j, n2);
      const PairScore s = pair_score(adv, a, b);
      if (!have || better(s.mixed, best_value, tol)) {
        have = true;
        best_value = s.mixed;
        best_a = a;
        best_b = b;
        best_w = s.weight;
      }
    }
  }
  return make_solution(maximin, best_value, best_a, best_b, best_w);
}

EBSSolution ebs_oracle_grid(const RewardTables& means, ValuePair maximin, double w_step) {
  if (!(w_step > 0.0 && w_step <= 0.01)) throw std::invalid_argument("w_step must lie in (0, 0.01]");
  const RewardTables adv = advantage_means(means, maximin);
  const int n2 = adv.p1.cols();
  const int count = adv.p1.rows() * n2;
  const auto steps = static_cast<long>(std::ceil(1.0 / w_step - 1e-9));

  bool have = false;
  ValuePair best_value{};
  JointAction best_a{}, best_b{};
  double best_w = 1.0;
  // Mixtures of (a, b) and (b, a) coincide, so unordered pairs suffice.
  for (int i = 0; i < count; ++i) {
    const JointAction a = from_flat(i, n2);
    for (int j = i; j < count; ++j) {
      const JointAction b = from_flat(j, n2);
      const long last = (i == j) ? 0 : steps;
      for (long k = 0; k <= last; ++k) {
        const double w = (i == j) ? 1.0 : std::min(1.0, static_cast<double>(k) * w_step);
        const ValuePair v{w * adv.p1[a] + (1.0 - w) * adv.p1[b], w * adv.p2[a] + (1.0 - w) * adv.p2[b]};
        if (!have || lex_compare(v, best_value) == std::weak_ordering::greater) {
          have = true;
          best_value = v;
          best_a = a;
          best_b = b;
          best_w = w;
        }
      }
    }
  }
  return make_solution(maximin, best_value, best_a, best_b, best_w);
}

}  // namespace ebs
