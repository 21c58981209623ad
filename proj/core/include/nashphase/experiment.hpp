#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nashphase/graph.hpp"
#include "nashphase/pne.hpp"

namespace nashphase {

enum class GraphFamily { Gnp, Complete, Path, Grid, FromFile };
enum class CountMode { Exists, FullCount };

// Normal quantile at 0.995: the default 99% Wilson interval.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct SweepConfig {
  GraphFamily family = GraphFamily::Gnp;
  int n = 1;
  int rows = 1, cols = 1;        // Grid only
  std::string graph_file;       // FromFile only
  std::vector<double> p_grid{0.0};
  uint64_t trials = 1;
  uint64_t master_seed = 0;
  CountMode mode = CountMode::Exists;
  PneCaps caps;
  double wilson_z = kWilsonZ99;
};

struct TrialRecord {
  bool skipped = false;     // a component blew the enumeration cap
  bool pne_exists = false;
  uint64_t z = 0;           // equilibrium count; meaningful in FullCount
};

struct PointResult {
  double p = 0.0;
  uint64_t trials = 0;
  uint64_t skips = 0;
  uint64_t pne_exists_count = 0;          // over completed trials
  std::map<uint64_t, uint64_t> histogram;  // FullCount: z -> frequency
  double mean_z = 0.0;       // NaN when unavailable
  double tv_poisson1 = 0.0;  // NaN when unavailable
  double wilson_lo = 0.0, wilson_hi = 0.0;
  double seconds = 0.0;      // wall time; excluded from deterministic output
};

struct SweepResult {
  SweepConfig config;
  int resolved_n = 0;  // actual vertex count (grid product, file graph size)
  std::vector<PointResult> points;
};

// Sub-seed for one trial. Stream 0 draws the graph, stream 1 the game.
uint64_t trial_seed(uint64_t master_seed, uint64_t point_index,
                    uint64_t trial_index, uint64_t stream);

// One trial: sample the graph (random families), sample the game, count or
// decide. Fully determined by its arguments; enumeration-cap violations are
// recorded as skipped, never thrown.
TrialRecord run_trial(const SweepConfig& config, double p,
                      uint64_t graph_seed, uint64_t game_seed,
                      const Graph* preloaded = nullptr);

// Runs trials for every grid point with per-trial seeds derived from
// (master_seed, point, trial). Aggregation folds records in trial order, so
// the result is independent of the worker count.
SweepResult run_sweep(const SweepConfig& config, int threads = 1);

// Total variation distance between a histogram and Poisson(lambda); the
// Poisson tail is accumulated until its remaining mass drops below 1e-12.
double tv_distance(const std::map<uint64_t, uint64_t>& hist, double lambda);

double poisson_pmf(uint64_t k, double lambda);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials,
                                          double z);

// CSV columns: family,n,p,trials,skips,pne_count,mean_Z,tv_poisson1,
// wilson_lo,wilson_hi,seconds. The seconds field stays empty unless
// include_seconds is set, keeping default output byte-identical across
// re-runs and thread counts.
std::string sweep_csv(const SweepResult& result, bool include_seconds = false);

// Same fields plus full histograms and a config echo (RNG name included).
std::string sweep_json(const SweepResult& result, bool include_seconds = false);

std::string sweep_text(const SweepResult& result);

const char* family_name(GraphFamily family);

}  // namespace nashphase
