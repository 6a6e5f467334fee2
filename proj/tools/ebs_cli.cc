// Command-line front end: exact solutions of a game and simulation runs.
//
//   ebs solve     --game g.json | --builtin table1
//   ebs oracle    --builtin table1 --w-step 1e-5
//   ebs selfplay  --builtin table1-bernoulli --horizon 100000 --seeds 10 --out run.csv
//   ebs safety    --builtin table1-bernoulli --opponent adversary --horizon 100000
//   ebs lowerbound --n1 2 --n2 2 --horizon 100000 --seeds 4
//
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ebs/harness.h"
#include "ebs/maximin.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string game_path;
  std::string builtin;
  long horizon = 10000;
  int seeds = 1;
  std::vector<std::uint64_t> seed_list;
  double delta = 0.1;
  std::string out;
  std::string summary_out;
  long stride = 1;
  unsigned workers = 0;
};

void add_game_flags(CLI::App* cmd, CommonArgs& args) {
  auto* game = cmd->add_option("--game", args.game_path, "Game file (JSON)");
  auto* builtin = cmd->add_option("--builtin", args.builtin, "Built-in game: table1, table1-bernoulli, lowerbound (selfplay only)");
  game->excludes(builtin);
}

void add_run_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--horizon", args.horizon, "Number of rounds T")->check(CLI::PositiveNumber);
  auto* seeds = cmd->add_option("--seeds", args.seeds, "Run seeds 1..N")->check(CLI::PositiveNumber);
  auto* list = cmd->add_option("--seed-list", args.seed_list, "Explicit seeds")->delimiter(',');
  seeds->excludes(list);
  cmd->add_option("--delta", args.delta, "Confidence parameter in (0, 1)");
  cmd->add_option("--out", args.out, "Trace CSV; with several seeds, one file per seed (<stem>_seed<k><ext>)");
  cmd->add_option("--summary", args.summary_out, "Per-seed summary CSV");
  cmd->add_option("--stride", args.stride, "Keep every K-th trace row")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", args.workers, "Concurrent simulations (default: hardware threads)");
}

ebs::GameSpec resolve_game(const CommonArgs& args) {
  if (!args.game_path.empty()) return ebs::load_game(args.game_path);
  if (!args.builtin.empty()) {
    try {
      return ebs::builtin_game(args.builtin);
    } catch (const ebs::GameError& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("one of --game or --builtin is required");
}

std::vector<std::uint64_t> resolve_seeds(const CommonArgs& args) {
  if (!args.seed_list.empty()) return args.seed_list;
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= args.seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  return seeds;
}

ebs::RunOptions resolve_options(const CommonArgs& args) {
  if (!(args.delta > 0.0 && args.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  ebs::RunOptions o;
  o.horizon = args.horizon;
  o.delta = args.delta;
  o.stride = args.stride;
  o.keep_trace = !args.out.empty();
  return o;
}

std::filesystem::path trace_path(const std::string& out, std::uint64_t seed, bool several) {
  const std::filesystem::path p(out);
  if (!several) return p;
  return p.parent_path() / (p.stem().string() + "_seed" + std::to_string(seed) + p.extension().string());
}

void print_pair(std::ostream& os, ebs::ValuePair v) {
  os << '(' << ebs::format_double(v.v1) << ", " << ebs::format_double(v.v2) << ')';
}

void report(const std::vector<ebs::RunResult>& results, const CommonArgs& args, const char* rate_label) {
  const bool several = results.size() > 1;
  for (const auto& r : results) {
    const auto& s = r.summary;
    std::cout << "seed " << s.seed << ": T=" << s.horizon << " epochs=" << s.epochs
              << " regret_max=" << ebs::format_double(s.regret_max)
              << " pseudo_regret_max=" << ebs::format_double(s.pseudo_regret_max) << ' ' << rate_label << '='
              << ebs::format_double(s.normalized_regret) << " avg_reward=";
    print_pair(std::cout, s.average_reward);
    std::cout << " target=";
    print_pair(std::cout, s.target);
    std::cout << '\n';
    std::cout << "  branches:";
    for (const auto& [name, rounds] : s.branch_rounds) std::cout << ' ' << name << '=' << rounds;
    std::cout << '\n';
    if (!args.out.empty()) ebs::write_trace(r.trace, trace_path(args.out, s.seed, several));
  }
  if (!args.summary_out.empty()) {
    std::ofstream out(args.summary_out, std::ios::binary);
    if (!out) throw ebs::IoError("cannot open '" + args.summary_out + "' for writing");
    out << "seed,horizon,epochs,target_p1,target_p2,regret_p1,regret_p2,pseudo_regret_p1,pseudo_regret_p2,"
           "regret_max,pseudo_regret_max,normalized_regret,error_branch_rounds\n";
    for (const auto& r : results) {
      const auto& s = r.summary;
      out << s.seed << ',' << s.horizon << ',' << s.epochs << ',' << ebs::format_double(s.target.v1) << ','
          << ebs::format_double(s.target.v2) << ',' << ebs::format_double(s.regret.v1) << ','
          << ebs::format_double(s.regret.v2) << ',' << ebs::format_double(s.pseudo_regret.v1) << ','
          << ebs::format_double(s.pseudo_regret.v2) << ',' << ebs::format_double(s.regret_max) << ','
          << ebs::format_double(s.pseudo_regret_max) << ',' << ebs::format_double(s.normalized_regret) << ','
          << s.error_branch_rounds << '\n';
    }
    if (!out) throw ebs::IoError("error writing '" + args.summary_out + "'");
  }
}

std::string action_name(ebs::JointAction a) {
  return "(" + std::to_string(a.a1) + "," + std::to_string(a.a2) + ")";
}

void print_solution(const ebs::EBSSolution& s) {
  std::cout << "maximin: ";
  print_pair(std::cout, s.maximin);
  std::cout << "\nebs_value: ";
  print_pair(std::cout, s.ebs_value);
  std::cout << "\nadvantage: ";
  print_pair(std::cout, s.egalitarian_advantage);
  std::cout << "\npolicy:";
  for (const auto& e : s.policy.entries()) std::cout << ' ' << action_name(e.action) << '=' << ebs::format_double(e.prob);
  std::cout << '\n';
}

// Self-play on one freshly drawn hard instance per seed.
int run_lowerbound(const CommonArgs& args, const ebs::RunOptions& options, const std::vector<std::uint64_t>& seeds,
                   int n1, int n2) {
  if (n1 < 2 || n2 < 2) throw UsageError("--n1 and --n2 must be >= 2");
  auto instance = [&](std::uint64_t s) {
    ebs::Rng rng(s);
    return ebs::gen_lowerbound_game(n1, n2, options.horizon, rng);
  };
  const auto results = ebs::run_seeds(
      seeds, [&](std::uint64_t s) { return ebs::run_selfplay(instance(s).game, options, s); }, args.workers);
  for (std::uint64_t s : seeds) {
    const ebs::LowerBoundGame lb = instance(s);
    std::cout << "seed " << s << ": Z=" << action_name(lb.z) << (lb.z == lb.a_star ? " (a_star)" : "")
              << " epsilon=" << ebs::format_double(lb.epsilon) << '\n';
  }
  report(results, args, "regret/T^(2/3)ln^(1/3)T");
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Egalitarian bargaining solutions and optimistic learning in repeated games"};
  app.require_subcommand(1);

  CommonArgs args;
  double w_step = 1e-5;
  std::string opponent = "adversary";
  std::string seat = "p1";
  int lb_n1 = 2, lb_n2 = 2;

  auto* solve = app.add_subcommand("solve", "Print the exact maximin and EBS of a game");
  add_game_flags(solve, args);

  auto* oracle = app.add_subcommand("oracle", "Cross-check the EBS against the brute-force grid");
  add_game_flags(oracle, args);
  oracle->add_option("--w-step", w_step, "Weight grid step in (0, 0.01]");

  auto* selfplay = app.add_subcommand("selfplay", "Two learners in self-play; regret to the EBS value");
  add_game_flags(selfplay, args);
  add_run_flags(selfplay, args);
  selfplay->add_option("--n1", lb_n1, "Player-1 actions for --builtin lowerbound");
  selfplay->add_option("--n2", lb_n2, "Player-2 actions for --builtin lowerbound");

  auto* safety = app.add_subcommand("safety", "Maximin learner against a fixed opponent; safety regret");
  add_game_flags(safety, args);
  add_run_flags(safety, args);
  safety->add_option("--opponent", opponent, "fixed:<a> | fixed:<p0>,<p1>,... | uniform | adversary");
  safety->add_option("--player", seat, "Seat of the learner: p1 or p2")->check(CLI::IsMember({"p1", "p2"}));

  auto* lowerbound = app.add_subcommand("lowerbound", "Self-play on random hard instances");
  lowerbound->add_option("--n1", lb_n1, "Player-1 actions (>= 2)");
  lowerbound->add_option("--n2", lb_n2, "Player-2 actions (>= 2)");
  add_run_flags(lowerbound, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (solve->parsed() || oracle->parsed()) {
    const ebs::GameSpec game = resolve_game(args);
    const ebs::EBSSolution exact = ebs::solve_game(game);
    print_solution(exact);
    if (oracle->parsed()) {
      if (!(w_step > 0.0 && w_step <= 0.01)) throw UsageError("--w-step must lie in (0, 0.01]");
      const ebs::EBSSolution grid = ebs::ebs_oracle_grid(game.means(), exact.maximin, w_step);
      const double spread = std::max(game.mean(ebs::PlayerId::P1).max() - game.mean(ebs::PlayerId::P1).min(),
                                     game.mean(ebs::PlayerId::P2).max() - game.mean(ebs::PlayerId::P2).min());
      const double gap = std::abs(grid.egalitarian_advantage.min() - exact.egalitarian_advantage.min());
      const double tol = 2.0 * w_step * std::max(spread, 1e-12);
      std::cout << "grid_min_advantage: " << ebs::format_double(grid.egalitarian_advantage.min())
                << "\nexact_min_advantage: " << ebs::format_double(exact.egalitarian_advantage.min())
                << "\ndifference: " << ebs::format_double(gap) << " (tolerance " << ebs::format_double(tol) << ")\n";
      if (gap > tol) {
        std::cerr << "error: exact solution disagrees with the grid oracle\n";
        return kExitNumeric;
      }
    }
    return kExitOk;
  }

  const auto seeds = resolve_seeds(args);
  const ebs::RunOptions options = resolve_options(args);

  if (selfplay->parsed()) {
    if (args.builtin == "lowerbound") return run_lowerbound(args, options, seeds, lb_n1, lb_n2);
    const ebs::GameSpec game = resolve_game(args);
    const auto results =
        ebs::run_seeds(seeds, [&](std::uint64_t s) { return ebs::run_selfplay(game, options, s); }, args.workers);
    report(results, args, "regret/T^(2/3)ln^(1/3)T");
    return kExitOk;
  }

  if (safety->parsed()) {
    const ebs::GameSpec game = resolve_game(args);
    ebs::RunOptions opts = options;
    opts.agent_seat = seat == "p2" ? ebs::PlayerId::P2 : ebs::PlayerId::P1;
    const ebs::PlayerId opp_seat = ebs::other(opts.agent_seat);
    const int opp_actions = opp_seat == ebs::PlayerId::P1 ? game.n1() : game.n2();
    ebs::OpponentKind kind;
    try {
      kind = ebs::parse_opponent(opponent, opp_seat, opp_actions);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto results =
        ebs::run_seeds(seeds, [&](std::uint64_t s) { return ebs::run_safety(game, opts, kind, s); }, args.workers);
    report(results, args, "regret/sqrt(T ln T)");
    return kExitOk;
  }

  return run_lowerbound(args, options, seeds, lb_n1, lb_n2);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ebs::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ebs::GameError& e) {
    std::cerr << "game error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
