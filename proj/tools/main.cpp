// nashphase: random graphical games with binary strategies from the command
// line. Exact equilibrium counting, non-existence certificates, per-graph
// Poisson-approximation bounds, and reproducible Monte Carlo sweeps.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nashphase/errors.hpp"
#include "nashphase/experiment.hpp"
#include "nashphase/game.hpp"
#include "nashphase/graph.hpp"
#include "nashphase/pne.hpp"
#include "nashphase/rng.hpp"
#include "nashphase/stein.hpp"
#include "nashphase/witness.hpp"

namespace {

using namespace nashphase;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParam("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidParam("cannot write \"" + out_path + "\"");
  out << payload;
}

// Shared source flags for subcommands that operate on one graph or game.
struct InputOpts {
  std::string game_file;
  std::string graph_file;
  std::string family = "gnp";
  int n = 0;
  int rows = 0, cols = 0;
  double p = 0.0;
  uint64_t seed = 0;
  bool seed_given = false;
};

void add_graph_source(CLI::App* cmd, InputOpts& opts, bool with_game_file) {
  if (with_game_file)
    cmd->add_option("--game", opts.game_file, "game file to load");
  cmd->add_option("--graph", opts.graph_file, "graph file to load");
  cmd->add_option("--family", opts.family,
                  "graph family: gnp|complete|path|grid|empty");
  cmd->add_option("-n,--n", opts.n, "vertex count");
  cmd->add_option("--rows", opts.rows, "grid rows");
  cmd->add_option("--cols", opts.cols, "grid cols");
  cmd->add_option("-p,--p", opts.p, "edge probability (gnp)");
  cmd->add_option("--seed", opts.seed, "64-bit seed")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
}

Graph build_graph_from(const InputOpts& opts) {
  if (!opts.graph_file.empty()) return read_graph(slurp(opts.graph_file));
  if (opts.family == "gnp") {
    if (opts.n < 1) throw InvalidParam("gnp needs -n");
    return gen_gnp({opts.n, opts.p, opts.seed});
  }
  if (opts.family == "complete") return gen_complete(opts.n);
  if (opts.family == "path") return gen_path(opts.n);
  if (opts.family == "empty") return gen_empty(opts.n);
  if (opts.family == "grid") return gen_grid(opts.rows, opts.cols);
  throw InvalidParam("unknown family \"" + opts.family + "\"");
}

GraphicalGame load_game(const InputOpts& opts) {
  if (!opts.game_file.empty()) return read_game(slurp(opts.game_file));
  Graph g = build_graph_from(opts);
  if (!opts.seed_given && opts.graph_file.empty() && opts.family == "gnp")
    std::cerr << "note: no --seed given, using 0\n";
  // Game bits come from a sub-stream so the same seed can drive both the
  // graph and the game without reuse.
  return sample_game(g, derive_seed(opts.seed, 0, 0, 1));
}

void echo_config(const std::string& line) {
  std::cerr << "config: " << line << "\n";
}

std::string describe(const InputOpts& opts) {
  std::ostringstream s;
  if (!opts.game_file.empty()) {
    s << "game=" << opts.game_file;
  } else if (!opts.graph_file.empty()) {
    s << "graph=" << opts.graph_file << " seed=" << opts.seed;
  } else {
    s << "family=" << opts.family;
    if (opts.family == "grid")
      s << " rows=" << opts.rows << " cols=" << opts.cols;
    else
      s << " n=" << opts.n;
    if (opts.family == "gnp") s << " p=" << opts.p;
    s << " seed=" << opts.seed;
  }
  return s.str();
}

int threads_default() {
  if (const char* env = std::getenv("NASHPHASE_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random graphical games laboratory"};
  app.require_subcommand(1);

  // ---- gen ----
  InputOpts gen_opts;
  std::string gen_out;
  bool gen_game = false;
  uint64_t gen_game_seed = 0;
  bool gen_game_seed_given = false;
  auto* gen = app.add_subcommand("gen", "write a graph or game file");
  add_graph_source(gen, gen_opts, false);
  gen->add_flag("--game", gen_game, "emit a sampled game instead of a graph");
  gen->add_option("--game-seed", gen_game_seed,
                  "seed for the game bits (default: derived from --seed)")
      ->each([&](const std::string&) { gen_game_seed_given = true; });
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // ---- count / exists ----
  InputOpts count_opts, exists_opts;
  std::string count_out;
  int component_cap = kEnumerationCap;
  auto* count = app.add_subcommand("count", "exact equilibrium count");
  add_graph_source(count, count_opts, true);
  count->add_option("--component-cap", component_cap,
                    "max component size for enumeration");
  auto* exists = app.add_subcommand("exists", "decide equilibrium existence");
  add_graph_source(exists, exists_opts, true);

  // ---- witness / expose ----
  InputOpts witness_opts, expose_opts;
  int degree_cap = 3;
  auto* witness =
      app.add_subcommand("witness", "search d-bounded edges for a certificate");
  add_graph_source(witness, witness_opts, true);
  witness->add_option("-d,--degree-cap", degree_cap, "degree cap for edges");
  auto* expose = app.add_subcommand(
      "expose", "vertex-exposure search for an isolated certificate edge");
  add_graph_source(expose, expose_opts, true);

  // ---- stein ----
  InputOpts stein_opts;
  auto* stein = app.add_subcommand(
      "stein", "exact b1, b2 and the Poisson total-variation bound");
  add_graph_source(stein, stein_opts, false);

  // ---- bounds ----
  InputOpts bounds_opts;
  int bounds_n = 0;
  double bounds_p = -1.0;
  double bounds_c = -1.0;
  int bounds_degree_cap = 3;
  auto* bounds = app.add_subcommand(
      "bounds", "envelope sums and non-existence probability bounds");
  bounds->add_option("-n,--n", bounds_n, "n for the envelope sums");
  bounds->add_option("-p,--p", bounds_p, "p for the envelope sums");
  bounds->add_option("--c", bounds_c, "low-connectivity constant c (p=c/n^2)");
  bounds->add_option("--graph", bounds_opts.graph_file,
                     "graph file for the certificate bounds");
  bounds->add_option("-d,--degree-cap", bounds_degree_cap,
                     "degree cap for the certificate bounds");

  // ---- expander ----
  InputOpts expander_opts;
  double alpha = 1.0, delta = 0.5;
  auto* expander =
      app.add_subcommand("expander", "exhaustive strong-expander decision");
  add_graph_source(expander, expander_opts, false);
  expander->add_option("--alpha", alpha, "expansion factor")->required();
  expander->add_option("--delta", delta, "small-set fraction")->required();

  // ---- sweep ----
  SweepConfig sweep_cfg;
  std::string sweep_family = "gnp", sweep_out, sweep_format = "csv";
  std::string sweep_preset, sweep_mode = "exists", sweep_graph_file;
  std::vector<double> p_grid;
  std::vector<double> c_grid;
  double preset_eps = 1.0, preset_beta = 0.5;
  int sweep_n = 0, sweep_rows = 0, sweep_cols = 0;
  int sweep_threads = threads_default();
  bool sweep_timing = false;
  uint64_t sweep_trials = 1000, sweep_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a p grid");
  sweep->add_option("--family", sweep_family,
                    "gnp|complete|path|grid|file");
  sweep->add_option("-n,--n", sweep_n, "vertex count");
  sweep->add_option("--rows", sweep_rows, "grid rows");
  sweep->add_option("--cols", sweep_cols, "grid cols");
  sweep->add_option("--graph", sweep_graph_file, "graph file (family=file)");
  sweep->add_option("-p,--p-grid", p_grid, "explicit p values");
  sweep->add_option("--preset", sweep_preset,
                    "regime preset: high|medium|low");
  sweep->add_option("--eps", preset_eps, "high preset: p=(2+eps)log(n)/n");
  sweep->add_option("--beta", preset_beta, "medium preset: p=beta/n");
  sweep->add_option("--c", c_grid, "low preset: p=c/n^2 per value");
  sweep->add_option("--trials", sweep_trials, "trials per grid point");
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--mode", sweep_mode, "exists|count");
  sweep->add_option("--threads", sweep_threads, "worker threads")
      ->envname("NASHPHASE_THREADS");
  sweep->add_option("--format", sweep_format, "csv|json|text");
  sweep->add_option("-o,--out", sweep_out, "output path (default stdout)");
  sweep->add_option("--component-cap", sweep_cfg.caps.component_limit,
                    "max component size before a trial is skipped");
  sweep->add_flag("--timing", sweep_timing,
                  "include wall-clock seconds in the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      echo_config("gen " + describe(gen_opts) +
                  (gen_game ? " game=yes" : ""));
      Graph g = build_graph_from(gen_opts);
      if (gen_game) {
        uint64_t gs = gen_game_seed_given ? gen_game_seed
                                          : derive_seed(gen_opts.seed, 0, 0, 1);
        emit(gen_out, write_game(sample_game(g, gs)));
      } else {
        emit(gen_out, write_graph(g));
      }
    } else if (*count) {
      echo_config("count " + describe(count_opts) +
                  " component-cap=" + std::to_string(component_cap));
      GraphicalGame game = load_game(count_opts);
      PneCaps caps;
      caps.component_limit = component_cap;
      PneResult r = count_pne(game, caps);
      std::cout << "Z = " << r.count << "\n";
      std::cout << "profiles examined: " << r.work << "\n";
      if (r.profiles && r.count > 0 && r.count <= 32) {
        std::cout << "equilibria:";
        for (Profile p : *r.profiles) std::cout << " " << p;
        std::cout << "\n";
      }
    } else if (*exists) {
      echo_config("exists " + describe(exists_opts));
      GraphicalGame game = load_game(exists_opts);
      if (exists_pne(game))
        std::cout << "PNE exists (Z >= 1)\n";
      else
        std::cout << "no PNE (Z = 0)\n";
    } else if (*witness) {
      echo_config("witness " + describe(witness_opts) +
                  " degree-cap=" + std::to_string(degree_cap));
      GraphicalGame game = load_game(witness_opts);
      auto report = find_witness(game, degree_cap);
      if (report)
        std::cout << write_certificate(*report, game);
      else
        std::cout << "no witness found\n";
    } else if (*expose) {
      echo_config("expose " + describe(expose_opts));
      GraphicalGame game = load_game(expose_opts);
      auto report = exposure_search(game);
      if (report)
        std::cout << write_certificate(*report, game);
      else
        std::cout << "no witness found\n";
    } else if (*stein) {
      echo_config("stein " + describe(stein_opts));
      Graph g = build_graph_from(stein_opts);
      SteinBounds b = stein_bounds_exact(g);
      std::cout << "b1 = " << b.b1 << "\n"
                << "b2 = " << b.b2 << "\n"
                << "tv_bound = " << b.tv_bound << "\n"
                << "|B0| = " << b.b0_size << "\n";
    } else if (*bounds) {
      std::ostringstream cfg;
      cfg << "bounds n=" << bounds_n << " p=" << bounds_p << " c=" << bounds_c
          << " graph=" << bounds_opts.graph_file
          << " degree-cap=" << bounds_degree_cap;
      echo_config(cfg.str());
      if (bounds_n >= 1 && bounds_p >= 0.0) {
        std::cout << "S(" << bounds_n << ", " << bounds_p
                  << ") = " << envelope_s(bounds_n, bounds_p) << "\n";
        std::cout << "R(" << bounds_n << ", " << bounds_p
                  << ") = " << envelope_r(bounds_n, bounds_p) << "\n";
      }
      if (bounds_n >= 2 && bounds_c >= 0.0)
        std::cout << "predict_low_connectivity(" << bounds_n << ", " << bounds_c
                  << ") = " << predict_low_connectivity(bounds_n, bounds_c)
                  << "\n";
      if (bounds_n >= 1 && bounds_p > 0.0 && bounds_p < 1.0)
        std::cout << "medium_regime_bound(" << bounds_n << ", " << bounds_p
                  << ") = " << medium_regime_bound(bounds_n, bounds_p) << "\n";
      if (!bounds_opts.graph_file.empty()) {
        Graph g = read_graph(slurp(bounds_opts.graph_file));
        NonexistenceBounds nb =
            nonexistence_probability_bound(g, bounds_degree_cap);
        std::cout << "no-PNE bound (vertex-disjoint, m'=" << nb.matching_size
                  << "): " << nb.vertex_disjoint << "\n";
        std::cout << "no-PNE bound (edge count, m=" << nb.d_bounded_count
                  << "): " << nb.edge_count << "\n";
        std::cout << "no-PNE bound (weighted, w=" << nb.matching_weight
                  << "): " << nb.weighted << "\n";
      }
    } else if (*expander) {
      std::ostringstream cfg;
      cfg << "expander " << describe(expander_opts) << " alpha=" << alpha
          << " delta=" << delta;
      echo_config(cfg.str());
      Graph g = build_graph_from(expander_opts);
      auto violation = find_expander_violation(g, alpha, delta);
      if (!violation) {
        std::cout << "strong (" << alpha << ", " << delta << ")-expander: yes\n";
      } else {
        std::cout << "strong (" << alpha << ", " << delta << ")-expander: no\n";
        std::cout << "violating subset:";
        for (int v : *violation) std::cout << " " << v;
        std::cout << "\n";
      }
    } else if (*sweep) {
      if (sweep_family == "gnp") sweep_cfg.family = GraphFamily::Gnp;
      else if (sweep_family == "complete") sweep_cfg.family = GraphFamily::Complete;
      else if (sweep_family == "path") sweep_cfg.family = GraphFamily::Path;
      else if (sweep_family == "grid") sweep_cfg.family = GraphFamily::Grid;
      else if (sweep_family == "file") sweep_cfg.family = GraphFamily::FromFile;
      else throw InvalidParam("unknown family \"" + sweep_family + "\"");
      sweep_cfg.n = sweep_n;
      sweep_cfg.rows = sweep_rows;
      sweep_cfg.cols = sweep_cols;
      sweep_cfg.graph_file = sweep_graph_file;
      sweep_cfg.trials = sweep_trials;
      sweep_cfg.master_seed = sweep_seed;
      if (sweep_mode == "exists") sweep_cfg.mode = CountMode::Exists;
      else if (sweep_mode == "count") sweep_cfg.mode = CountMode::FullCount;
      else throw InvalidParam("unknown mode \"" + sweep_mode + "\"");

      if (!sweep_preset.empty() && sweep_cfg.family != GraphFamily::Gnp)
        throw InvalidParam("presets apply to the gnp family");
      if (sweep_preset.empty()) {
        if (!p_grid.empty()) sweep_cfg.p_grid = p_grid;
        else if (sweep_cfg.family != GraphFamily::Gnp) sweep_cfg.p_grid = {0.0};
        else throw InvalidParam("sweep: give --p-grid or --preset");
      } else if (sweep_preset == "high") {
        if (sweep_n < 2) throw InvalidParam("preset high needs -n >= 2");
        sweep_cfg.p_grid = {(2.0 + preset_eps) * std::log(sweep_n) / sweep_n};
      } else if (sweep_preset == "medium") {
        if (sweep_n < 1) throw InvalidParam("preset medium needs -n");
        sweep_cfg.p_grid = {preset_beta / sweep_n};
      } else if (sweep_preset == "low") {
        if (sweep_n < 1) throw InvalidParam("preset low needs -n");
        if (c_grid.empty()) c_grid = {2.0, 8.0, 16.0};
        sweep_cfg.p_grid.clear();
        for (double c : c_grid)
          sweep_cfg.p_grid.push_back(c / (static_cast<double>(sweep_n) * sweep_n));
      } else {
        throw InvalidParam("unknown preset \"" + sweep_preset + "\"");
      }

      std::ostringstream cfg;
      cfg << "sweep family=" << sweep_family << " n=" << sweep_n;
      if (sweep_cfg.family == GraphFamily::Grid)
        cfg << " rows=" << sweep_rows << " cols=" << sweep_cols;
      cfg << " p-grid=[";
      for (size_t i = 0; i < sweep_cfg.p_grid.size(); ++i)
        cfg << (i ? "," : "") << sweep_cfg.p_grid[i];
      cfg << "] trials=" << sweep_trials << " seed=" << sweep_seed
          << " mode=" << sweep_mode << " threads=" << sweep_threads
          << " format=" << sweep_format << " rng=" << rng_name();
      echo_config(cfg.str());

      SweepResult result = run_sweep(sweep_cfg, sweep_threads);
      if (sweep_format == "csv") emit(sweep_out, sweep_csv(result, sweep_timing));
      else if (sweep_format == "json") emit(sweep_out, sweep_json(result, sweep_timing));
      else if (sweep_format == "text") emit(sweep_out, sweep_text(result));
      else throw InvalidParam("unknown format \"" + sweep_format + "\"");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
