#pragma once

#include <string>
#include <variant>

#include "ebs/game.h"
#include "ebs/maximin.h"

namespace ebs {

struct FixedStationary {
  MixedStrategy strategy;
};
struct UniformRandom {};
// Knows the true means and the agent's current mixed strategy, but not the
// agent's sampled action.
struct OmniscientAdversary {};

using OpponentKind = std::variant<FixedStationary, UniformRandom, OmniscientAdversary>;

// Action of the opponent seated opposite `agent_public_policy.owner`.
int opponent_act(const OpponentKind& kind, const GameSpec& game, const MixedStrategy& agent_public_policy, Rng& rng);

// Parses "uniform", "adversary", "fixed:<a>" (pure action) or
// "fixed:<p0>,<p1>,..." (mixed) for an opponent with `n_actions` actions.
OpponentKind parse_opponent(const std::string& text, PlayerId seat, int n_actions);

std::string to_string(const OpponentKind& kind);

}  // namespace ebs
