// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Heavy Monte Carlo; expect tens of minutes. Thread count comes from
// NASHPHASE_THREADS (default: hardware concurrency).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "exact_oracles.hpp"
#include "nashphase/experiment.hpp"
#include "nashphase/game.hpp"
#include "nashphase/graph.hpp"
#include "nashphase/pne.hpp"
#include "nashphase/rng.hpp"
#include "nashphase/stein.hpp"
#include "nashphase/witness.hpp"

using namespace nashphase;
namespace fs = std::filesystem;

namespace {

int g_threads = 1;
int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void parallel_for(uint64_t count, const std::function<void(uint64_t)>& fn) {
  int workers = std::min<uint64_t>(g_threads, count);
  if (workers <= 1) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (uint64_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

// Z histogram over `trials` games on a fixed graph, deterministic in the
// seed tag and independent of the thread count.
std::map<uint64_t, uint64_t> z_histogram(const Graph& g, uint64_t trials,
                                         uint64_t master, uint64_t tag) {
  int workers = std::max(1, g_threads);
  std::vector<std::map<uint64_t, uint64_t>> parts(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      PneCaps caps;
      caps.profile_retention = 0;
      for (uint64_t t = w; t < trials; t += workers)
        ++parts[w][count_pne(sample_game(g, derive_seed(master, tag, t, 1)),
                             caps)
                       .count];
    });
  for (auto& t : pool) t.join();
  std::map<uint64_t, uint64_t> hist;
  for (const auto& part : parts)
    for (const auto& [z, c] : part) hist[z] += c;
  return hist;
}

double hist_mean(const std::map<uint64_t, uint64_t>& hist) {
  double sum = 0, total = 0;
  for (const auto& [z, c] : hist) {
    sum += static_cast<double>(z) * c;
    total += c;
  }
  return sum / total;
}

double hist_mean_se(const std::map<uint64_t, uint64_t>& hist) {
  double mean = hist_mean(hist);
  double var = 0, total = 0;
  for (const auto& [z, c] : hist) {
    var += c * (z - mean) * (z - mean);
    total += c;
  }
  return std::sqrt(var / total / total);
}

// Delta-method estimate of the sampling noise of an empirical TV distance.
double tv_sampling_error(const std::map<uint64_t, uint64_t>& hist) {
  uint64_t total = 0;
  for (const auto& [k, c] : hist) total += c;
  double err = 0.0;
  for (const auto& [k, c] : hist) {
    double f = static_cast<double>(c) / static_cast<double>(total);
    err += std::sqrt(f * (1.0 - f) / static_cast<double>(total));
  }
  return 0.5 * err;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5g", x);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_mean_one() {
  struct Case {
    std::string label;
    SweepConfig cfg;
  };
  std::vector<Case> cases;
  auto base = [] {
    SweepConfig c;
    c.trials = 200000;
    c.mode = CountMode::FullCount;
    return c;
  };
  {
    Case c{"empty(8)", base()};
    c.cfg.family = GraphFamily::Gnp;
    c.cfg.n = 8;
    c.cfg.p_grid = {0.0};
    c.cfg.master_seed = 101;
    cases.push_back(c);
  }
  {
    Case c{"path(8)", base()};
    c.cfg.family = GraphFamily::Path;
    c.cfg.n = 8;
    c.cfg.master_seed = 102;
    cases.push_back(c);
  }
  {
    Case c{"grid(3x3)", base()};
    c.cfg.family = GraphFamily::Grid;
    c.cfg.rows = c.cfg.cols = 3;
    c.cfg.master_seed = 103;
    cases.push_back(c);
  }
  {
    Case c{"K_8", base()};
    c.cfg.family = GraphFamily::Complete;
    c.cfg.n = 8;
    c.cfg.master_seed = 104;
    cases.push_back(c);
  }
  fs::path tmp = fs::temp_directory_path() / "nashphase_acceptance_g12.graph";
  {
    std::ofstream out(tmp);
    out << write_graph(gen_gnp({12, 0.4, 20260810}));
  }
  {
    Case c{"G(12,0.4,#20260810)", base()};
    c.cfg.family = GraphFamily::FromFile;
    c.cfg.graph_file = tmp.string();
    c.cfg.master_seed = 105;
    cases.push_back(c);
  }

  bool all = true;
  std::string detail;
  for (auto& [label, cfg] : cases) {
    SweepResult r = run_sweep(cfg, g_threads);
    const auto& pt = r.points[0];
    double se = hist_mean_se(pt.histogram);
    bool ok = std::abs(pt.mean_z - 1.0) <= 4.0 * se;
    all = all && ok && pt.skips == 0;
    detail += label + " mean=" + fmt(pt.mean_z) + " se=" + fmt(se) + "; ";
  }
  report(1, "mean-one law (5 graphs, 2e5 trials each)", all, detail);
}

void criterion_2_complete_limit() {
  SweepConfig cfg;
  cfg.family = GraphFamily::Complete;
  cfg.n = 14;
  cfg.trials = 20000;
  cfg.master_seed = 202;
  cfg.mode = CountMode::Exists;
  SweepResult r = run_sweep(cfg, g_threads);
  const auto& pt = r.points[0];
  double est = static_cast<double>(pt.pne_exists_count) /
               static_cast<double>(pt.trials - pt.skips);
  double target = 1.0 - std::exp(-1.0);
  bool ok = std::abs(est - target) <= 0.03;
  report(2, "complete-graph limit (K_14, 2e4 trials)", ok,
         "P(PNE)=" + fmt(est) + " target=" + fmt(target) + " tol=0.03");
}

void criterion_3_low_connectivity() {
  SweepConfig cfg;
  cfg.family = GraphFamily::Gnp;
  cfg.n = 50;
  cfg.p_grid = {2.0 / 2500.0, 8.0 / 2500.0, 16.0 / 2500.0};
  cfg.trials = 20000;
  cfg.master_seed = 303;
  cfg.mode = CountMode::Exists;
  cfg.wilson_z = kWilsonZ99;
  SweepResult r = run_sweep(cfg, g_threads);
  const double cs[3] = {2.0, 8.0, 16.0};
  bool all = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const auto& pt = r.points[i];
    double pred = predict_low_connectivity(50, cs[i]);
    bool ok = pt.wilson_lo <= pred && pred <= pt.wilson_hi;
    all = all && ok;
    double est = static_cast<double>(pt.pne_exists_count) /
                 static_cast<double>(pt.trials - pt.skips);
    detail += "c=" + fmt(cs[i]) + " est=" + fmt(est) + " pred=" + fmt(pred) +
              " wilson=[" + fmt(pt.wilson_lo) + "," + fmt(pt.wilson_hi) +
              (ok ? "] ok; " : "] MISS; ");
  }
  report(3, "low-connectivity regime (G(50, c/2500), 2e4 trials)", all,
         detail);
}

void criterion_4_medium_decay() {
  double est[3] = {0, 0, 0};
  double skip_rate[3] = {0, 0, 0};
  const int ns[3] = {100, 200, 400};
  for (int i = 0; i < 3; ++i) {
    SweepConfig cfg;
    cfg.family = GraphFamily::Gnp;
    cfg.n = ns[i];
    cfg.p_grid = {0.5 / ns[i]};
    cfg.trials = 5000;
    cfg.master_seed = 404 + i;
    cfg.mode = CountMode::Exists;
    SweepResult r = run_sweep(cfg, g_threads);
    const auto& pt = r.points[0];
    est[i] = static_cast<double>(pt.pne_exists_count) /
             static_cast<double>(pt.trials - pt.skips);
    skip_rate[i] = static_cast<double>(pt.skips) /
                   static_cast<double>(pt.trials);
  }
  bool decreasing = est[0] > est[1] && est[1] > est[2];
  bool small_tail = est[2] < 0.2;
  bool skips_ok =
      skip_rate[0] < 0.01 && skip_rate[1] < 0.01 && skip_rate[2] < 0.01;
  std::ostringstream detail;
  detail << "P(PNE)=" << fmt(est[0]) << "/" << fmt(est[1]) << "/"
         << fmt(est[2]) << " skips=" << fmt(skip_rate[0]) << "/"
         << fmt(skip_rate[1]) << "/" << fmt(skip_rate[2]);
  report(4, "medium-connectivity decay (G(n, 0.5/n), 5e3 trials)",
         decreasing && small_tail && skips_ok, detail.str());
}

void criterion_5_poisson() {
  const double p = 3.0 * std::log(20.0) / 20.0;

  SweepConfig cfg;
  cfg.family = GraphFamily::Gnp;
  cfg.n = 20;
  cfg.p_grid = {p};
  cfg.trials = 20000;
  cfg.master_seed = 505;
  cfg.mode = CountMode::FullCount;
  SweepResult r = run_sweep(cfg, g_threads);
  double tv_mixed = r.points[0].tv_poisson1;
  bool mixed_ok = tv_mixed <= 0.05;

  bool per_graph_ok = true;
  double worst_margin = -1e9;
  std::string worst;
  for (int gi = 0; gi < 20; ++gi) {
    Graph g = gen_gnp({20, p, derive_seed(506, 5, gi, 0)});
    SteinBounds b = stein_bounds_exact(g);
    auto hist = z_histogram(g, 10000, 507, gi);
    double tv = tv_distance(hist, 1.0);
    double budget = b.tv_bound + 3.0 * tv_sampling_error(hist);
    double margin = tv - budget;
    if (margin > worst_margin) {
      worst_margin = margin;
      worst = "graph#" + std::to_string(gi) + " tv=" + fmt(tv) +
              " bound=" + fmt(budget);
    }
    if (tv > budget) per_graph_ok = false;
  }
  report(5, "Poisson approximation (G(20, 0.449), 2e4 + 20x1e4 trials)",
         mixed_ok && per_graph_ok,
         "tv(mixture)=" + fmt(tv_mixed) + " (cap 0.05); worst per-graph: " +
             worst);
}

void criterion_6_witness_exactness() {
  bool ok = witness_probability_exact(1, 1) == Rational{1, 8} &&
            witness_probability_exact(1, 2) == Rational{1, 32} &&
            witness_probability_exact(2, 2) == Rational{1, 128};

  // independent oracle: literal all-pairs enumeration through the public
  // detector on a two-star graph with the right endpoint degrees
  auto oracle = [](int da, int db) {
    Graph g(da + db);
    g.add_edge(1, 2);
    int next = 3;
    for (int i = 0; i < da - 1; ++i) g.add_edge(1, next++);
    for (int i = 0; i < db - 1; ++i) g.add_edge(2, next++);
    GraphicalGame game{g, {}, GameOrigin::SampledDirect, 0};
    game.tables.resize(g.vertex_count() + 1);
    for (int v = 1; v <= g.vertex_count(); ++v) {
      auto& t = game.tables[v];
      t.owner = v;
      t.neighbor_order = g.neighbors(v);
      t.rows = uint64_t{1} << t.neighbor_order.size();
      t.bits.assign(1, 0);
    }
    uint64_t hits = 0, total = 0;
    for (uint64_t ta = 0; ta < (uint64_t{1} << game.tables[1].rows); ++ta) {
      for (uint64_t tb = 0; tb < (uint64_t{1} << game.tables[2].rows); ++tb) {
        game.tables[1].bits[0] = ta;
        game.tables[2].bits[0] = tb;
        hits += is_indifferent_mp(game, {1, 2}).has_value();
        ++total;
      }
    }
    return std::pair<uint64_t, uint64_t>{hits, total};
  };
  for (auto [da, db] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 2}}) {
    auto [hits, total] = oracle(da, db);
    Rational r = witness_probability_exact(da, db);
    ok = ok && hits * r.den == r.num * total;
  }

  // the closed lower bound 8^(-2^(da+db-2)) really is a lower bound
  for (int da = 1; da <= 4 && ok; ++da)
    for (int db = 1; db <= 4; ++db)
      ok = ok && witness_probability_exact(da, db).value() >=
                     std::exp2(-3.0 * std::exp2(da + db - 2));

  // Monte Carlo frequency on a game's fixed edge, 1e6 trials, 5 sigma
  std::string mc_detail;
  auto mc = [&](const Graph& g, Edge e, int da, int db, uint64_t tag) {
    const uint64_t trials = 1000000;
    std::atomic<uint64_t> hits{0};
    parallel_for(trials, [&](uint64_t t) {
      GraphicalGame game = sample_game(g, derive_seed(606, tag, t, 1));
      if (is_indifferent_mp(game, e)) ++hits;
    });
    double pexact = witness_probability_exact(da, db).value();
    double freq = static_cast<double>(hits.load()) / trials;
    double sigma = std::sqrt(pexact * (1.0 - pexact) / trials);
    bool pass = std::abs(freq - pexact) <= 5.0 * sigma;
    mc_detail += "d(" + std::to_string(da) + "," + std::to_string(db) +
                 ") freq=" + fmt(freq) + " exact=" + fmt(pexact) + "; ";
    return pass;
  };
  Graph e2(2);
  e2.add_edge(1, 2);
  ok = ok && mc(e2, {1, 2}, 1, 1, 0);
  ok = ok && mc(gen_path(3), {1, 2}, 1, 2, 1);
  ok = ok && mc(gen_path(4), {2, 3}, 2, 2, 2);

  report(6, "witness exactness (brute force + 1e6-trial frequencies)", ok,
         "p(1,1)=1/8 p(1,2)=1/32 p(2,2)=1/128; " + mc_detail);
}

void criterion_7_witness_soundness() {
  const uint64_t trials = 10000;
  std::atomic<uint64_t> violations{0}, hits{0};
  parallel_for(trials, [&](uint64_t t) {
    Graph g = [&]() -> Graph {
      switch (t % 3) {
        case 0: return gen_path(12);
        case 1: return gen_grid(3, 4);
        default: return gen_gnp({12, 2.0 / 12.0, derive_seed(707, 7, t, 0)});
      }
    }();
    GraphicalGame game = sample_game(g, derive_seed(707, 7, t, 1));
    PneCaps caps;
    caps.profile_retention = 0;
    auto w = find_witness(game, 4);
    auto x = exposure_search(game);
    if (w || x) {
      ++hits;
      if (count_pne(game, caps).count != 0) ++violations;
    }
  });
  bool ok = violations == 0 && hits > 0;
  report(7, "witness soundness fuzz (1e4 games)", ok,
         "hits=" + std::to_string(hits.load()) +
             " violations=" + std::to_string(violations.load()));
}

void criterion_8_stein_exactness() {
  bool ok = true;
  std::string detail;
  for (int n : {3, 4, 5}) {
    SteinBounds b = stein_bounds_exact(gen_complete(n));
    ok = ok && b.b1 == std::ldexp(static_cast<double>(n + 1), -n) &&
         b.b2 == 0.0;
  }
  Graph e(2);
  e.add_edge(1, 2);
  SteinBounds se = stein_bounds_exact(e);
  ok = ok && se.b1 == 0.75 && se.b2 == 0.0;

  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<Edge> pairs;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    for (uint32_t mask = 0; mask < (uint32_t{1} << pairs.size()); ++mask) {
      Graph g(n);
      for (size_t i = 0; i < pairs.size(); ++i)
        if (mask & (uint32_t{1} << i))
          g.add_edge(pairs[i].first, pairs[i].second);
      double diff =
          std::abs(stein_bounds_exact(g).b2 - oracles::naive_b2(g));
      worst = std::max(worst, diff);
    }
  }
  ok = ok && worst <= 1e-12;
  report(8, "stein exactness (K_n, single edge, naive double sum n<=4)", ok,
         "max |orbit - naive| = " + fmt(worst));
}

void criterion_9_envelopes() {
  const double p = 3.0 * std::log(14.0) / 14.0;
  const int graphs = 200;
  std::vector<double> b1s(graphs), b2s(graphs);
  parallel_for(graphs, [&](uint64_t gi) {
    SteinBounds b =
        stein_bounds_exact(gen_gnp({14, p, derive_seed(909, 9, gi, 0)}));
    b1s[gi] = b.b1;
    b2s[gi] = b.b2;
  });
  auto mean_se = [](const std::vector<double>& xs) {
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size();
    return std::pair<double, double>{mean, std::sqrt(var / xs.size())};
  };
  auto [m1, se1] = mean_se(b1s);
  auto [m2, se2] = mean_se(b2s);
  double r_env = envelope_r(14, p);
  double s_env = envelope_s(14, p);
  bool env_ok = m1 <= r_env + 3 * se1 && m2 <= s_env + 3 * se2;

  double worst_rel = 0.0;
  for (int n = 1; n <= 20; ++n) {
    for (int tenth = 1; tenth <= 9; ++tenth) {
      mpq_class pq(tenth, 10);
      double pd = tenth / 10.0;
      double s_exact = oracles::exact_envelope_s(n, pq).get_d();
      double r_exact = oracles::exact_envelope_r(n, pq).get_d();
      if (s_exact > 0)
        worst_rel = std::max(
            worst_rel, std::abs(envelope_s(n, pd) - s_exact) / s_exact);
      if (r_exact > 0)
        worst_rel = std::max(
            worst_rel, std::abs(envelope_r(n, pd) - r_exact) / r_exact);
    }
  }
  bool oracle_ok = worst_rel <= 1e-6;
  report(9, "envelope bounds (200 graphs at n=14; exact oracle n<=20)",
         env_ok && oracle_ok,
         "mean b1=" + fmt(m1) + " R=" + fmt(r_env) + "; mean b2=" + fmt(m2) +
             " S=" + fmt(s_env) + "; worst rel err=" + fmt(worst_rel));
}

void criterion_10_expander() {
  auto oracle = [](const Graph& g, double alpha, double delta) {
    const int n = g.vertex_count();
    for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
      std::vector<int> subset;
      for (int v = 1; v <= n; ++v)
        if (mask & (uint32_t{1} << (v - 1))) subset.push_back(v);
      std::vector<int> nb = neighborhood(g, subset);
      if (static_cast<double>(subset.size()) <= delta * n) {
        if (static_cast<double>(nb.size()) < alpha * subset.size())
          return false;
      } else {
        if (static_cast<int>(nb.size()) != n) return false;
      }
    }
    return true;
  };
  Rng rng(1010);
  bool ok = true;
  int agreements = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);  // up to 10
    Graph g = gen_gnp({n, unit_double(rng()), rng()});
    double alpha = 0.25 + 3.0 * unit_double(rng());
    double delta = 0.05 + 0.95 * unit_double(rng());
    bool a = is_strong_expander(g, alpha, delta);
    bool b = oracle(g, alpha, delta);
    agreements += a == b;
    ok = ok && a == b;
  }
  ok = ok && is_strong_expander(gen_complete(8), 2.0, 0.25) &&
       !is_strong_expander(gen_path(8), 2.0, 0.25);
  report(10, "expander decision (500 fuzz graphs vs oracle)", ok,
         std::to_string(agreements) + "/500 agreements; K_8 yes, path(8) no");
}

void criterion_11_determinism() {
  SweepConfig cfg;
  cfg.family = GraphFamily::Gnp;
  cfg.n = 12;
  cfg.p_grid = {0.3};
  cfg.trials = 500;
  cfg.master_seed = 1111;
  cfg.mode = CountMode::FullCount;
  std::string c1 = sweep_csv(run_sweep(cfg, 1));
  std::string c2 = sweep_csv(run_sweep(cfg, 2));
  std::string c3 = sweep_csv(run_sweep(cfg, 3));
  bool ok = c1 == c2 && c1 == c3;
  report(11, "determinism across thread counts", ok,
         ok ? "CSV byte-identical for 1/2/3 threads" : "outputs differ");
}

}  // namespace

int main() {
  g_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NASHPHASE_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) g_threads = t;
  }
  if (g_threads < 1) g_threads = 1;
  std::printf("acceptance suite; threads=%d\n", g_threads);

  auto timed = [](const char* label, const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
                   .count();
    std::fprintf(stderr, "  (%s took %.1fs)\n", label, s);
  };

  timed("criterion 1", criterion_1_mean_one);
  timed("criterion 2", criterion_2_complete_limit);
  timed("criterion 3", criterion_3_low_connectivity);
  timed("criterion 4", criterion_4_medium_decay);
  timed("criterion 5", criterion_5_poisson);
  timed("criterion 6", criterion_6_witness_exactness);
  timed("criterion 7", criterion_7_witness_soundness);
  timed("criterion 8", criterion_8_stein_exactness);
  timed("criterion 9", criterion_9_envelopes);
  timed("criterion 10", criterion_10_expander);
  timed("criterion 11", criterion_11_determinism);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
