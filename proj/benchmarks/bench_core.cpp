#include <benchmark/benchmark.h>

#include <cmath>

#include "nashphase/experiment.hpp"
#include "nashphase/game.hpp"
#include "nashphase/graph.hpp"
#include "nashphase/pne.hpp"
#include "nashphase/stein.hpp"
#include "nashphase/witness.hpp"

namespace {

using namespace nashphase;

void BM_GenGnp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  uint64_t seed = 1;
  for (auto _ : state) {
    Graph g = gen_gnp({n, 10.0 / n, seed++});
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_GenGnp)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SampleGame(benchmark::State& state) {
  Graph g = gen_gnp({static_cast<int>(state.range(0)), 0.45, 7});
  uint64_t seed = 1;
  for (auto _ : state) {
    GraphicalGame game = sample_game(g, seed++);
    benchmark::DoNotOptimize(game.tables.size());
  }
}
BENCHMARK(BM_SampleGame)->Arg(14)->Arg(20);

void BM_CountPneGnp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph g = gen_gnp({n, 3.0 * std::log(n) / n, 7});
  uint64_t seed = 1;
  for (auto _ : state) {
    GraphicalGame game = sample_game(g, seed++);
    benchmark::DoNotOptimize(count_pne(game).count);
  }
  state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(BM_CountPneGnp)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CountPneComplete(benchmark::State& state) {
  Graph g = gen_complete(static_cast<int>(state.range(0)));
  uint64_t seed = 1;
  for (auto _ : state) {
    GraphicalGame game = sample_game(g, seed++);
    benchmark::DoNotOptimize(count_pne(game).count);
  }
}
BENCHMARK(BM_CountPneComplete)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ExistsPneSparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  uint64_t seed = 1;
  for (auto _ : state) {
    Graph g = gen_gnp({n, 0.5 / n, seed});
    GraphicalGame game = sample_game(g, seed + 1);
    benchmark::DoNotOptimize(exists_pne(game));
    ++seed;
  }
}
BENCHMARK(BM_ExistsPneSparse)->Arg(100)->Arg(400);

void BM_SteinBounds(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph g = gen_gnp({n, 3.0 * std::log(n) / n, 7});
  for (auto _ : state)
    benchmark::DoNotOptimize(stein_bounds_exact(g).tv_bound);
  state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(BM_SteinBounds)->Arg(14)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FindWitness(benchmark::State& state) {
  Graph g = gen_path(static_cast<int>(state.range(0)));
  uint64_t seed = 1;
  for (auto _ : state) {
    GraphicalGame game = sample_game(g, seed++);
    benchmark::DoNotOptimize(find_witness(game, 2).has_value());
  }
}
BENCHMARK(BM_FindWitness)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
