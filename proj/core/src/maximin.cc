#include "ebs/maximin.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ebs {

MixedStrategy MixedStrategy::pure(PlayerId owner, int n, int action) {
  MixedStrategy s{owner, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  s.probs.at(static_cast<std::size_t>(action)) = 1.0;
  return s;
}

Table own_view(const Table& table, PlayerId p) { return p == PlayerId::P1 ? table : table.transposed(); }

namespace {

constexpr double kPivotEps = 1e-12;

// Dense tableau for: maximize sum(y) s.t. S y <= 1, y >= 0, with S > 0.
// The row player's optimal strategy is read off the slack duals.
class Tableau {
 public:
  explicit Tableau(const Table& s) : m_(s.rows()), n_(s.cols()), width_(n_ + m_ + 1) {
    cells_.assign(static_cast<std::size_t>(m_ + 1) * width_, 0.0);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < n_; ++c) at(r, c) = s(r, c);
      at(r, n_ + r) = 1.0;
      at(r, width_ - 1) = 1.0;
      basis_[static_cast<std::size_t>(r)] = n_ + r;
    }
    for (int c = 0; c < n_; ++c) at(m_, c) = -1.0;
  }

  void solve() {
    const int max_iters = 50 * (m_ + n_) + 100;
    for (int iter = 0; iter < max_iters; ++iter) {
      int enter = -1;
      for (int c = 0; c < width_ - 1; ++c) {
        if (at(m_, c) < -kPivotEps) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double coef = at(r, enter);
        if (coef <= kPivotEps) continue;
        const double ratio = at(r, width_ - 1) / coef;
        if (leave < 0 || ratio < best_ratio - kPivotEps ||
            (ratio <= best_ratio + kPivotEps && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      // Bounded problem (all coefficients positive), so this cannot happen
      // for well-formed input.
      if (leave < 0) throw SolverError("maximin LP reported unbounded; payoff matrix is not positive");
      pivot(leave, enter);
    }
    std::ostringstream msg;
    msg << "maximin LP did not converge after " << max_iters << " pivots (" << m_ << "x" << n_ << ")";
    throw SolverError(msg.str());
  }

  double objective() const { return at(m_, width_ - 1); }
  double slack_dual(int r) const { return at(m_, n_ + r); }

 private:
  double& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * width_ + c]; }
  double at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * width_ + c]; }

  void pivot(int row, int col) {
    const double piv = at(row, col);
    for (int c = 0; c < width_; ++c) at(row, c) /= piv;
    for (int r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) at(r, c) -= f * at(row, c);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  int m_;
  int n_;
  int width_;
  std::vector<double> cells_;
  std::vector<int> basis_;
};

std::vector<double> column_values(const Table& own, const std::vector<double>& probs) {
  std::vector<double> v(static_cast<std::size_t>(own.cols()), 0.0);
  for (int b = 0; b < own.rows(); ++b) {
    const double pb = probs[static_cast<std::size_t>(b)];
    if (pb == 0.0) continue;
    for (int c = 0; c < own.cols(); ++c) v[static_cast<std::size_t>(c)] += pb * own(b, c);
  }
  return v;
}

}  // namespace

MaximinResult solve_matrix_maximin(const Table& table, PlayerId p) {
  if (table.rows() < 1 || table.cols() < 1) throw SolverError("empty payoff table");
  for (int r = 0; r < table.rows(); ++r)
    for (int c = 0; c < table.cols(); ++c)
      if (!std::isfinite(table(r, c))) throw SolverError("non-finite payoff in maximin table");

  const Table own = own_view(table, p);
  // Shift so every entry is >= 1; the optimal strategy is unchanged.
  Table shifted = own;
  const double shift = 1.0 - own.min();
  for (int r = 0; r < own.rows(); ++r)
    for (int c = 0; c < own.cols(); ++c) shifted(r, c) += shift;

  Tableau tab(shifted);
  tab.solve();
  if (!(tab.objective() > 0.0)) throw SolverError("maximin LP returned a non-positive objective");

  std::vector<double> probs(static_cast<std::size_t>(own.rows()));
  double total = 0.0;
  for (int r = 0; r < own.rows(); ++r) {
    const double x = std::max(0.0, tab.slack_dual(r));
    probs[static_cast<std::size_t>(r)] = x;
    total += x;
  }
  if (!(total > 0.0)) throw SolverError("maximin LP returned an empty strategy");
  for (double& x : probs) x /= total;

  MaximinResult result{{p, std::move(probs)}, 0.0, 0};
  const BestResponse br = best_response_value(table, result.strategy);
  result.value = br.value;
  result.certificate_br = br.action;
  return result;
}

BestResponse best_response_value(const Table& table, const MixedStrategy& fixed) {
  const Table own = own_view(table, fixed.owner);
  if (fixed.size() != own.rows()) throw SolverError("strategy size does not match the player's action count");
  const auto values = column_values(own, fixed.probs);
  BestResponse br{0, values[0]};
  for (int c = 1; c < own.cols(); ++c) {
    if (values[static_cast<std::size_t>(c)] < br.value) br = {c, values[static_cast<std::size_t>(c)]};
  }
  return br;
}

OptimisticMaximin optimistic_maximin(const Table& upper, const Table& lower, PlayerId p) {
  MaximinResult hat = solve_matrix_maximin(upper, p);
  const BestResponse check = best_response_value(lower, hat.strategy);
  return {std::move(hat.strategy), check.action, check.value};
}

}  // namespace ebs
