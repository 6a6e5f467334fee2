#include <benchmark/benchmark.h>

#include "ebs/harness.h"
#include "ebs/learner.h"
#include "ebs/maximin.h"
#include "ebs/solution.h"

namespace {

using namespace ebs;

RewardTables random_means(int n, Rng& rng) {
  RewardTables t{Table(n, n), Table(n, n)};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      t.p1(r, c) = uniform01(rng);
      t.p2(r, c) = uniform01(rng);
    }
  return t;
}

void BM_MatrixMaximin(benchmark::State& state) {
  Rng rng(1);
  const RewardTables m = random_means(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_matrix_maximin(m.p1, PlayerId::P1));
}
BENCHMARK(BM_MatrixMaximin)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_EbsSolve(benchmark::State& state) {
  Rng rng(2);
  const RewardTables m = random_means(static_cast<int>(state.range(0)), rng);
  const ValuePair mm = maximin_pair(m);
  for (auto _ : state) benchmark::DoNotOptimize(ebs_solve(m, mm));
}
BENCHMARK(BM_EbsSolve)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ComputePolicy(benchmark::State& state) {
  Rng rng(3);
  const int n = static_cast<int>(state.range(0));
  const RewardTables m = random_means(n, rng);
  RewardTables lower = m;
  for (PlayerId p : {PlayerId::P1, PlayerId::P2})
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) lower[p](r, c) = std::max(0.0, m[p](r, c) - 0.05);
  const BoundedGame bounds{m, lower};
  const Table radii(n, n, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(compute_policy(bounds, radii, 0.2));
}
BENCHMARK(BM_ComputePolicy)->Arg(2)->Arg(4)->Arg(8);

void BM_SelfPlayRun(benchmark::State& state) {
  const GameSpec g = builtin_game("table1-bernoulli");
  RunOptions o;
  o.horizon = state.range(0);
  o.keep_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_selfplay(g, o, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SelfPlayRun)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
