#include "ebs/game.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ebs {

Table::Table(std::initializer_list<std::initializer_list<double>> init)
    : rows_(static_cast<int>(init.size())), cols_(init.size() ? static_cast<int>(init.begin()->size()) : 0) {
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : init) {
    if (static_cast<int>(row.size()) != cols_) throw GameError("ragged table initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Table Table::transposed() const {
  Table t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Table::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Table::max() const { return *std::max_element(data_.begin(), data_.end()); }

namespace {

void check_table(const Table& t, int n1, int n2, double lo, double hi, double half_width, const char* name) {
  if (t.rows() != n1 || t.cols() != n2)
    throw GameError(std::string(name) + ": dimensions do not match n1 x n2");
  for (int r = 0; r < n1; ++r) {
    for (int c = 0; c < n2; ++c) {
      const double m = t(r, c);
      if (!std::isfinite(m)) throw GameError(std::string(name) + ": non-finite mean");
      if (m - half_width < lo || m + half_width > hi) {
        std::ostringstream msg;
        msg << name << "(" << r << "," << c << ") = " << m << " outside reward range [" << lo << ", " << hi << "]";
        if (half_width > 0) msg << " after widening by " << half_width;
        throw GameError(msg.str());
      }
    }
  }
}

}  // namespace

GameSpec::GameSpec(RewardTables means, double lo, double hi, DistKind dist, double half_width)
    : means_(std::move(means)), lo_(lo), hi_(hi), dist_(dist), half_width_(half_width) {
  const int rows = means_.p1.rows();
  const int cols = means_.p1.cols();
  if (rows < 1 || cols < 1) throw GameError("each player needs at least one action");
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || lo_ > hi_) throw GameError("invalid reward range");
  switch (dist_) {
    case DistKind::Bernoulli:
      if (lo_ != 0.0 || hi_ != 1.0) throw GameError("bernoulli rewards require lo = 0 and hi = 1");
      half_width_ = 0.0;
      break;
    case DistKind::DeterministicMean:
      half_width_ = 0.0;
      break;
    case DistKind::UniformAroundMean:
      if (!(half_width_ >= 0.0) || !std::isfinite(half_width_)) throw GameError("half_width must be >= 0");
      break;
  }
  check_table(means_.p1, rows, cols, lo_, hi_, half_width_, "mean1");
  check_table(means_.p2, rows, cols, lo_, hi_, half_width_, "mean2");
}

namespace {

double draw(const GameSpec& game, double mean, Rng& rng) {
  switch (game.dist()) {
    case DistKind::Bernoulli:
      return uniform01(rng) < mean ? 1.0 : 0.0;
    case DistKind::DeterministicMean:
      return mean;
    case DistKind::UniformAroundMean: {
      const double u = uniform01(rng);
      return std::clamp(mean + game.half_width() * (2.0 * u - 1.0), game.lo(), game.hi());
    }
  }
  return mean;
}

}  // namespace

RewardSample sample_rewards(const GameSpec& game, JointAction a, Rng& rng) {
  if (!game.contains(a)) {
    std::ostringstream msg;
    msg << "joint action (" << a.a1 << "," << a.a2 << ") out of bounds for a " << game.n1() << "x" << game.n2()
        << " game";
    throw GameError(msg.str());
  }
  RewardSample s;
  s.r1 = draw(game, game.mean(PlayerId::P1, a), rng);
  s.r2 = draw(game, game.mean(PlayerId::P2, a), rng);
  return s;
}

NormalizedGame normalize_to_unit(const GameSpec& game) {
  const double span = game.hi() - game.lo();
  if (!(span > 0.0)) throw GameError("degenerate range");
  const AffineMap map{span, game.lo()};
  if (game.lo() == 0.0 && game.hi() == 1.0) return {game, map};
  RewardTables unit = game.means();
  for (Table* t : {&unit.p1, &unit.p2})
    for (int r = 0; r < t->rows(); ++r)
      for (int c = 0; c < t->cols(); ++c) (*t)(r, c) = std::clamp(map.inverse((*t)(r, c)), 0.0, 1.0);
  return {GameSpec(std::move(unit), 0.0, 1.0, game.dist(), game.half_width() / span), map};
}

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::Bernoulli:
      return "bernoulli";
    case DistKind::DeterministicMean:
      return "deterministic";
    case DistKind::UniformAroundMean:
      return "uniform";
  }
  return "?";
}

namespace {

using nlohmann::json;

Table table_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw GameError(std::string("'") + name + "' must be an array of rows");
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw GameError(std::string("'") + name + "' is empty");
  if (!j[0].is_array()) throw GameError(std::string("'") + name + "' rows must be arrays");
  const int cols = static_cast<int>(j[0].size());
  Table t(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw GameError(std::string("'") + name + "' has inconsistent row lengths");
    for (int c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw GameError(std::string("'") + name + "' entries must be numbers");
      t(r, c) = j[r][c].get<double>();
    }
  }
  return t;
}

json table_to_json(const Table& t) {
  json rows = json::array();
  for (int r = 0; r < t.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < t.cols(); ++c) row.push_back(t(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw GameError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw GameError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

GameSpec parse_game_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GameError(std::string("malformed game file: ") + e.what());
  }
  if (!j.is_object()) throw GameError("game file must contain a JSON object");

  const int n1 = required<int>(j, "n1");
  const int n2 = required<int>(j, "n2");
  if (n1 < 1 || n2 < 1) throw GameError("n1 and n2 must be >= 1");
  if (!j.contains("mean1") || !j.contains("mean2")) throw GameError("missing field 'mean1' or 'mean2'");
  RewardTables means{table_from_json(j["mean1"], "mean1"), table_from_json(j["mean2"], "mean2")};
  for (const Table* t : {&means.p1, &means.p2})
    if (t->rows() != n1 || t->cols() != n2) throw GameError("mean table dimensions disagree with n1/n2");

  const double lo = required<double>(j, "lo");
  const double hi = required<double>(j, "hi");
  const auto dist_name = required<std::string>(j, "dist");
  DistKind dist;
  if (dist_name == "bernoulli") {
    dist = DistKind::Bernoulli;
  } else if (dist_name == "deterministic") {
    dist = DistKind::DeterministicMean;
  } else if (dist_name == "uniform") {
    dist = DistKind::UniformAroundMean;
  } else {
    throw GameError("unknown dist '" + dist_name + "'");
  }
  double half_width = 0.0;
  if (dist == DistKind::UniformAroundMean) half_width = required<double>(j, "half_width");
  return GameSpec(std::move(means), lo, hi, dist, half_width);
}

std::string game_to_json(const GameSpec& game) {
  json j;
  j["n1"] = game.n1();
  j["n2"] = game.n2();
  j["mean1"] = table_to_json(game.mean(PlayerId::P1));
  j["mean2"] = table_to_json(game.mean(PlayerId::P2));
  j["lo"] = game.lo();
  j["hi"] = game.hi();
  j["dist"] = to_string(game.dist());
  if (game.dist() == DistKind::UniformAroundMean) j["half_width"] = game.half_width();
  return j.dump(2) + "\n";
}

GameSpec load_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open game file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_json(buf.str());
}

void save_game(const GameSpec& game, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot write game file '" + path.string() + "'");
  out << game_to_json(game);
  if (!out) throw GameError("error writing game file '" + path.string() + "'");
}

}  // namespace ebs
