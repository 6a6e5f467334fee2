#include "ebs/opponents.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ebs/learner.h"

namespace ebs {

int opponent_act(const OpponentKind& kind, const GameSpec& game, const MixedStrategy& agent_public_policy, Rng& rng) {
  const PlayerId seat = other(agent_public_policy.owner);
  const int n = seat == PlayerId::P1 ? game.n1() : game.n2();
  if (const auto* fixed = std::get_if<FixedStationary>(&kind)) {
    if (fixed->strategy.size() != n) throw std::invalid_argument("fixed opponent strategy has the wrong size");
    return sample_action(fixed->strategy, rng);
  }
  if (std::holds_alternative<UniformRandom>(kind)) {
    return std::min(n - 1, static_cast<int>(uniform01(rng) * n));
  }
  return best_response_value(game.mean(agent_public_policy.owner), agent_public_policy).action;
}

OpponentKind parse_opponent(const std::string& text, PlayerId seat, int n_actions) {
  if (text == "uniform") return UniformRandom{};
  if (text == "adversary") return OmniscientAdversary{};
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) != 0) throw std::invalid_argument("unknown opponent '" + text + "'");

  std::vector<double> values;
  std::stringstream in(text.substr(prefix.size()));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + item + "' in opponent spec");
    }
  }
  if (values.size() == 1) {
    const double a = values[0];
    if (a != std::floor(a) || a < 0 || a >= n_actions)
      throw std::invalid_argument("fixed opponent action out of range");
    return FixedStationary{MixedStrategy::pure(seat, n_actions, static_cast<int>(a))};
  }
  if (static_cast<int>(values.size()) != n_actions)
    throw std::invalid_argument("fixed opponent needs one probability per action");
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("fixed opponent probabilities must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("fixed opponent probabilities must sum to 1");
  return FixedStationary{MixedStrategy{seat, std::move(values)}};
}

std::string to_string(const OpponentKind& kind) {
  if (std::holds_alternative<UniformRandom>(kind)) return "uniform";
  if (std::holds_alternative<OmniscientAdversary>(kind)) return "adversary";
  std::ostringstream out;
  out << "fixed:";
  const auto& probs = std::get<FixedStationary>(kind).strategy.probs;
  for (std::size_t i = 0; i < probs.size(); ++i) out << (i ? "," : "") << probs[i];
  return out.str();
}

}  // namespace ebs
