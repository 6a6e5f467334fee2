#include "ebs/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "ebs/maximin.h"

namespace ebs {

ValuePair maximin_pair(const RewardTables& means) {
  return {solve_matrix_maximin(means.p1, PlayerId::P1).value, solve_matrix_maximin(means.p2, PlayerId::P2).value};
}

EBSSolution solve_game(const GameSpec& game) { return ebs_solve(game.means(), maximin_pair(game.means())); }

namespace {

Rng stream_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

double log_horizon(long horizon) { return std::log(std::max(2.0, static_cast<double>(horizon))); }

// Accumulates realized and pseudo regret against a per-round target and
// emits trace rows in original units.
class RegretBook {
 public:
  // Headline regret is the max over players, or the learner's own when
  // `learner` is set.
  RegretBook(const GameSpec& unit_game, AffineMap map, ValuePair target, const RunOptions& options,
             std::optional<PlayerId> learner)
      : game_(unit_game), map_(map), target_(target), options_(options), learner_(learner) {}

  void record(long t, int epoch, const std::string& branch, JointAction a, RewardSample s) {
    regret_.v1 += target_.v1 - s.r1;
    regret_.v2 += target_.v2 - s.r2;
    pseudo_.v1 += target_.v1 - game_.mean(PlayerId::P1, a);
    pseudo_.v2 += target_.v2 - game_.mean(PlayerId::P2, a);
    reward_.v1 += s.r1;
    reward_.v2 += s.r2;
    ++branch_rounds_[branch];

    for (long cp : options_.checkpoints)
      if (cp == t) checkpoints_.emplace_back(t, map_.forward_delta(headline(pseudo_)));

    const bool keep = options_.keep_trace && ((t - 1) % options_.stride == 0 || t == options_.horizon);
    if (!keep) return;
    TraceRow row;
    row.t = t;
    row.epoch = epoch;
    row.branch = branch;
    row.action = a;
    row.r1 = map_.forward(s.r1);
    row.r2 = map_.forward(s.r2);
    row.regret_p1 = map_.forward_delta(regret_.v1);
    row.regret_p2 = map_.forward_delta(regret_.v2);
    row.regret_max = map_.forward_delta(headline(regret_));
    row.pseudo_regret_max = map_.forward_delta(headline(pseudo_));
    trace_.push_back(std::move(row));
  }

  RunResult finish(std::uint64_t seed, int epochs, double rate_denominator) {
    RunResult out;
    RunSummary& s = out.summary;
    s.seed = seed;
    s.horizon = options_.horizon;
    s.epochs = epochs;
    s.target = {map_.forward(target_.v1), map_.forward(target_.v2)};
    s.regret = {map_.forward_delta(regret_.v1), map_.forward_delta(regret_.v2)};
    s.pseudo_regret = {map_.forward_delta(pseudo_.v1), map_.forward_delta(pseudo_.v2)};
    s.regret_max = map_.forward_delta(headline(regret_));
    s.pseudo_regret_max = map_.forward_delta(headline(pseudo_));
    s.normalized_regret = s.regret_max / rate_denominator;
    const double horizon = static_cast<double>(options_.horizon);
    s.average_reward = {map_.forward(reward_.v1 / horizon), map_.forward(reward_.v2 / horizon)};
    s.branch_rounds = branch_rounds_;
    for (const auto& [name, rounds] : branch_rounds_)
      if (name == "ebs_error" || name.rfind("maximin_error", 0) == 0) s.error_branch_rounds += rounds;
    s.checkpoint_pseudo_regret_max = std::move(checkpoints_);
    out.trace = std::move(trace_);
    return out;
  }

 private:
  double headline(ValuePair v) const { return learner_ ? v.of(*learner_) : v.max(); }

  const GameSpec& game_;
  AffineMap map_;
  ValuePair target_;
  const RunOptions& options_;
  std::optional<PlayerId> learner_;
  ValuePair regret_;
  ValuePair pseudo_;
  ValuePair reward_;
  std::map<std::string, long> branch_rounds_;
  std::vector<std::pair<long, double>> checkpoints_;
  std::vector<TraceRow> trace_;
};

void check_options(const RunOptions& options) {
  if (options.horizon < 1) throw HarnessError("horizon must be >= 1");
  if (!(options.delta > 0.0 && options.delta < 1.0)) throw HarnessError("delta must lie in (0, 1)");
  if (options.stride < 1) throw HarnessError("stride must be >= 1");
}

int epochs_played(const PlayStats& stats) { return stats.epoch() - (stats.epoch_length() == 0 ? 1 : 0); }

}  // namespace

RunResult run_selfplay(const GameSpec& game, const RunOptions& options, std::uint64_t seed) {
  check_options(options);
  const NormalizedGame unit = normalize_to_unit(game);
  const GameSpec& g = unit.game;
  const EBSSolution oracle = solve_game(g);

  SelfPlayAgent first(g.n1(), g.n2(), options.delta);
  SelfPlayAgent second(g.n1(), g.n2(), options.delta);
  Rng env = stream_rng(seed, 0);
  RegretBook book(g, unit.to_original, oracle.ebs_value, options, std::nullopt);

  for (long t = 1; t <= options.horizon; ++t) {
    const JointAction a = first.next_action();
    if (a != second.next_action()) throw HarnessError("self-play learners diverged at round " + std::to_string(t));
    const std::string branch = to_string(first.decision().branch);
    const int epoch = first.stats().epoch();
    const RewardSample s = sample_rewards(g, a, env);
    book.record(t, epoch, branch, a, s);
    const bool boundary = first.run_round(a, s);
    second.run_round(a, s);
    if (boundary && !(first.decision() == second.decision()))
      throw HarnessError("self-play learners computed different policies at round " + std::to_string(t));
  }
  const double horizon = static_cast<double>(options.horizon);
  const double rate = std::pow(horizon, 2.0 / 3.0) * std::cbrt(log_horizon(options.horizon));
  return book.finish(seed, epochs_played(first.stats()), rate);
}

RunResult run_safety(const GameSpec& game, const RunOptions& options, const OpponentKind& opponent,
                     std::uint64_t seed) {
  check_options(options);
  const NormalizedGame unit = normalize_to_unit(game);
  const GameSpec& g = unit.game;
  const ValuePair maximin = maximin_pair(g.means());

  const PlayerId seat = options.agent_seat;
  Rng env = stream_rng(seed, 0);
  Rng agent_seed = stream_rng(seed, 1);
  Rng opp_rng = stream_rng(seed, 2);
  SafetyAgent agent(seat, g.n1(), g.n2(), options.delta, agent_seed());
  RegretBook book(g, unit.to_original, maximin, options, seat);

  for (long t = 1; t <= options.horizon; ++t) {
    const int own = agent.act();
    const int opp = opponent_act(opponent, g, agent.policy(), opp_rng);
    const JointAction a = joint(seat, own, opp);
    const int epoch = agent.stats().epoch();
    const RewardSample s = sample_rewards(g, a, env);
    book.record(t, epoch, "safety", a, s);
    agent.run_round(a, s);
  }
  const double horizon = static_cast<double>(options.horizon);
  return book.finish(seed, epochs_played(agent.stats()), std::sqrt(horizon * log_horizon(options.horizon)));
}

std::vector<RunResult> run_seeds(const std::vector<std::uint64_t>& seeds,
                                 const std::function<RunResult(std::uint64_t)>& run, unsigned workers) {
  std::vector<RunResult> results(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(seeds.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        results[i] = run(seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

double lowerbound_epsilon(int n1, int n2, long horizon) {
  const double actions = static_cast<double>(n1) * n2;
  return std::min(std::cbrt(actions / static_cast<double>(horizon)), std::sqrt(0.43) / 2.0);
}

LowerBoundGame gen_lowerbound_game(int n1, int n2, long horizon, Rng& rng) {
  if (n1 < 2 || n2 < 2) throw GameError("the lower-bound game needs at least two actions per player");
  if (horizon < 1) throw GameError("horizon must be >= 1");
  const double eps = lowerbound_epsilon(n1, n2, horizon);
  RewardTables means{Table(n1, n2, 0.5), Table(n1, n2, 0.5)};
  const JointAction a_star{0, 0};
  means.p2[a_star] = 1.0;

  JointAction z = a_star;
  if (uniform01(rng) >= 0.5) {
    const int others = n1 * n2 - 1;
    const int pick = 1 + std::min(others - 1, static_cast<int>(uniform01(rng) * others));
    z = from_flat(pick, n2);
    means.p1[z] = 0.5 + eps;
    means.p2[z] = 0.5 + eps;
  }
  return {GameSpec(std::move(means), 0.0, 1.0, DistKind::Bernoulli), a_star, z, eps};
}

GameSpec builtin_game(const std::string& name) {
  // Rows/columns: C, D.
  const RewardTables table1{Table{{0.8, 0.1}, {1.8, 0.3}}, Table{{0.8, 1.8}, {0.0, 0.3}}};
  if (name == "table1") return GameSpec(table1, 0.0, 1.8, DistKind::DeterministicMean);
  if (name == "table1-bernoulli") {
    const GameSpec unit = normalize_to_unit(GameSpec(table1, 0.0, 1.8, DistKind::DeterministicMean)).game;
    return GameSpec(unit.means(), 0.0, 1.0, DistKind::Bernoulli);
  }
  throw GameError("unknown built-in game '" + name + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_trace(const std::vector<TraceRow>& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace) {
    out << r.t << ',' << r.epoch << ',' << r.branch << ',' << r.action.a1 << ',' << r.action.a2 << ','
        << format_double(r.r1) << ',' << format_double(r.r2) << ',' << format_double(r.regret_p1) << ','
        << format_double(r.regret_p2) << ',' << format_double(r.regret_max) << ','
        << format_double(r.pseudo_regret_max) << '\n';
  }
}

void write_trace(const std::vector<TraceRow>& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_trace(trace, out);
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

namespace {

template <typename T>
T parse_field(const std::string& field, long line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw HarnessError("trace line " + std::to_string(line) + ": bad field '" + field + "'");
  return value;
}

}  // namespace

std::vector<TraceRow> read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw HarnessError("trace is missing the expected header");
  std::vector<TraceRow> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 11) throw HarnessError("trace line " + std::to_string(lineno) + ": expected 11 fields");
    TraceRow r;
    r.t = parse_field<long>(f[0], lineno);
    r.epoch = parse_field<int>(f[1], lineno);
    r.branch = f[2];
    r.action = {parse_field<int>(f[3], lineno), parse_field<int>(f[4], lineno)};
    r.r1 = parse_field<double>(f[5], lineno);
    r.r2 = parse_field<double>(f[6], lineno);
    r.regret_p1 = parse_field<double>(f[7], lineno);
    r.regret_p2 = parse_field<double>(f[8], lineno);
    r.regret_max = parse_field<double>(f[9], lineno);
    r.pseudo_regret_max = parse_field<double>(f[10], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ebs
