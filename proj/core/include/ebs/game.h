#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebs {

enum class PlayerId { P1 = 0, P2 = 1 };

constexpr PlayerId other(PlayerId p) { return p == PlayerId::P1 ? PlayerId::P2 : PlayerId::P1; }
constexpr int index_of(PlayerId p) { return static_cast<int>(p); }

struct JointAction {
  int a1 = 0;
  int a2 = 0;

  // Action of the given player.
  int of(PlayerId p) const { return p == PlayerId::P1 ? a1 : a2; }

  friend auto operator<=>(const JointAction&, const JointAction&) = default;
};

// Dense row-major table indexed by (player-1 action, player-2 action).
class Table {
 public:
  Table() = default;
  Table(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}
  Table(std::initializer_list<std::initializer_list<double>> init);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double& operator[](JointAction a) { return (*this)(a.a1, a.a2); }
  double operator[](JointAction a) const { return (*this)(a.a1, a.a2); }

  Table transposed() const;
  double min() const;
  double max() const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// A value per player, e.g. a reward table for each player.
template <typename T>
struct PerPlayer {
  T p1{};
  T p2{};

  T& operator[](PlayerId p) { return p == PlayerId::P1 ? p1 : p2; }
  const T& operator[](PlayerId p) const { return p == PlayerId::P1 ? p1 : p2; }

  friend bool operator==(const PerPlayer&, const PerPlayer&) = default;
};

using RewardTables = PerPlayer<Table>;

enum class DistKind { Bernoulli, DeterministicMean, UniformAroundMean };

struct RewardSample {
  double r1 = 0.0;
  double r2 = 0.0;

  double of(PlayerId p) const { return p == PlayerId::P1 ? r1 : r2; }
};

// r -> scale * r + offset. Maps unit-range quantities back to game units.
struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  double forward(double x) const { return scale * x + offset; }
  // Differences (regret, radii) are not shifted.
  double forward_delta(double dx) const { return scale * dx; }
  double inverse(double y) const { return (y - offset) / scale; }
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two-player repeated game with bounded stochastic rewards. Immutable once
// constructed; the constructor validates every invariant.
class GameSpec {
 public:
  GameSpec(RewardTables means, double lo, double hi, DistKind dist, double half_width = 0.0);

  int n1() const { return means_.p1.rows(); }
  int n2() const { return means_.p1.cols(); }
  int num_joint_actions() const { return n1() * n2(); }
  const RewardTables& means() const { return means_; }
  const Table& mean(PlayerId p) const { return means_[p]; }
  double mean(PlayerId p, JointAction a) const { return means_[p][a]; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  DistKind dist() const { return dist_; }
  double half_width() const { return half_width_; }

  bool contains(JointAction a) const { return a.a1 >= 0 && a.a1 < n1() && a.a2 >= 0 && a.a2 < n2(); }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

 private:
  RewardTables means_;
  double lo_;
  double hi_;
  DistKind dist_;
  double half_width_;
};

using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits; independent of the
// standard library's distribution implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

RewardSample sample_rewards(const GameSpec& game, JointAction a, Rng& rng);

struct NormalizedGame {
  GameSpec game;
  AffineMap to_original;
};

// Rescales both players' means with the same map onto [0, 1].
NormalizedGame normalize_to_unit(const GameSpec& game);

GameSpec load_game(const std::filesystem::path& path);
void save_game(const GameSpec& game, const std::filesystem::path& path);
GameSpec parse_game_json(const std::string& text);
std::string game_to_json(const GameSpec& game);

std::string to_string(DistKind kind);

// Index of a joint action in row-major order; used for deterministic ordering.
inline int flat_index(JointAction a, int n2) { return a.a1 * n2 + a.a2; }
inline JointAction from_flat(int idx, int n2) { return {idx / n2, idx % n2}; }

}  // namespace ebs
