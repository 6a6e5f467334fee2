#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ebs/game.h"
#include "ebs/learner.h"
#include "ebs/opponents.h"
#include "ebs/solution.h"

namespace ebs {

struct RunOptions {
  long horizon = 1000;
  double delta = 0.1;
  // Keep every stride-th trace row (t = 1, 1 + stride, ...) plus the last one.
  long stride = 1;
  // Rounds at which the max-player pseudo-regret is recorded in the summary.
  std::vector<long> checkpoints;
  // Skip building the trace entirely; the summary is still complete.
  bool keep_trace = true;
  // Seat of the learner in safety runs.
  PlayerId agent_seat = PlayerId::P1;
};

// One CSV row. Rewards and regrets are in the game's original units.
struct TraceRow {
  long t = 0;
  int epoch = 0;
  std::string branch;
  JointAction action;
  double r1 = 0.0;
  double r2 = 0.0;
  double regret_p1 = 0.0;
  double regret_p2 = 0.0;
  double regret_max = 0.0;
  double pseudo_regret_max = 0.0;
};

struct RunSummary {
  std::uint64_t seed = 0;
  long horizon = 0;
  int epochs = 0;
  // Per-round reference value (EBS value in self-play, maximin in safety runs).
  ValuePair target;
  ValuePair regret;
  ValuePair pseudo_regret;
  // Self-play: max over players. Safety: the learner's own regret.
  double regret_max = 0.0;
  double pseudo_regret_max = 0.0;
  // regret_max divided by T^(2/3) ln^(1/3) T (self-play) or sqrt(T ln T) (safety).
  double normalized_regret = 0.0;
  ValuePair average_reward;
  std::map<std::string, long> branch_rounds;
  // Rounds spent in the ebs_error / maximin_error branches.
  long error_branch_rounds = 0;
  std::vector<std::pair<long, double>> checkpoint_pseudo_regret_max;
};

struct RunResult {
  RunSummary summary;
  std::vector<TraceRow> trace;
};

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public HarnessError {
 public:
  using HarnessError::HarnessError;
};

// Exact maximin pair of a game with known means.
ValuePair maximin_pair(const RewardTables& means);

// Maximin pair and EBS of the game with known means.
EBSSolution solve_game(const GameSpec& game);

// Two self-play learners sharing all observations. Throws HarnessError if the
// two learners ever disagree on the joint action.
RunResult run_selfplay(const GameSpec& game, const RunOptions& options, std::uint64_t seed);

// One safety learner against `opponent`.
RunResult run_safety(const GameSpec& game, const RunOptions& options, const OpponentKind& opponent,
                     std::uint64_t seed);

// Runs `run` once per seed on a small worker pool; results come back in
// the order of `seeds` regardless of scheduling.
std::vector<RunResult> run_seeds(const std::vector<std::uint64_t>& seeds,
                                 const std::function<RunResult(std::uint64_t)>& run, unsigned workers = 0);

struct LowerBoundGame {
  GameSpec game;
  // Distinguished action (0, 0) and the perturbed action; equal when no
  // perturbation was applied.
  JointAction a_star;
  JointAction z;
  double epsilon = 0.0;
};

// min{A^(1/3) T^(-1/3), sqrt(0.43) / 2} with A = n1 * n2.
double lowerbound_epsilon(int n1, int n2, long horizon);

// Bernoulli hard instance: all means (1/2, 1/2) except (1/2, 1) at a_star;
// with probability 1/2 a uniformly chosen other action gets (1/2 + eps, 1/2 + eps).
LowerBoundGame gen_lowerbound_game(int n1, int n2, long horizon, Rng& rng);

// Built-in games: "table1" (original units, deterministic),
// "table1-bernoulli" (unit range, Bernoulli).
GameSpec builtin_game(const std::string& name);

inline constexpr const char* kTraceHeader =
    "t,epoch,branch,a1,a2,r1,r2,regret_p1,regret_p2,regret_max,pseudo_regret_max";

void write_trace(const std::vector<TraceRow>& trace, std::ostream& out);
void write_trace(const std::vector<TraceRow>& trace, const std::filesystem::path& path);
std::vector<TraceRow> read_trace(std::istream& in);

// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double x);

}  // namespace ebs
