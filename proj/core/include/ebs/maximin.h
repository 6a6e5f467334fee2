#pragma once

#include <stdexcept>
#include <vector>

#include "ebs/game.h"

namespace ebs {

struct MixedStrategy {
  PlayerId owner = PlayerId::P1;
  std::vector<double> probs;

  static MixedStrategy pure(PlayerId owner, int n, int action);
  int size() const { return static_cast<int>(probs.size()); }
};

struct MaximinResult {
  MixedStrategy strategy;
  double value = 0.0;
  // Opponent pure action attaining `value` against `strategy`.
  int certificate_br = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rows of the result are `p`'s own actions, columns the opponent's.
Table own_view(const Table& table, PlayerId p);

// Maximin strategy of player `p` for its reward table (game orientation:
// rows are player-1 actions). Solved exactly with a dense simplex using
// Bland's rule, so identical inputs always give identical strategies.
MaximinResult solve_matrix_maximin(const Table& table, PlayerId p);

struct BestResponse {
  int action = 0;
  double value = 0.0;
};

// Opponent pure action minimizing p's expected reward under `fixed`.
// Ties go to the smallest action index.
BestResponse best_response_value(const Table& table, const MixedStrategy& fixed);

struct OptimisticMaximin {
  // Maximin strategy of p in the upper game.
  MixedStrategy pi_hat;
  // Opponent best response to pi_hat in the lower game.
  int pi_check = 0;
  // Value of (pi_hat, pi_check) in the lower game; a pessimistic maximin estimate.
  double sv_check = 0.0;
};

OptimisticMaximin optimistic_maximin(const Table& upper, const Table& lower, PlayerId p);

// Joint action formed by p playing `own` and the opponent playing `opp`.
inline JointAction joint(PlayerId p, int own, int opp) {
  return p == PlayerId::P1 ? JointAction{own, opp} : JointAction{opp, own};
}

}  // namespace ebs
