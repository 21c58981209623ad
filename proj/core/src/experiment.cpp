#include "nashphase/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nashphase/errors.hpp"
#include "nashphase/game.hpp"
#include "nashphase/rng.hpp"

namespace nashphase {

uint64_t trial_seed(uint64_t master_seed, uint64_t point_index,
                    uint64_t trial_index, uint64_t stream) {
  return derive_seed(master_seed, point_index, trial_index, stream);
}

namespace {

Graph build_graph(const SweepConfig& config, double p, uint64_t graph_seed,
                  const Graph* preloaded) {
  switch (config.family) {
    case GraphFamily::Gnp:
      return gen_gnp({config.n, p, graph_seed});
    case GraphFamily::Complete:
      return gen_complete(config.n);
    case GraphFamily::Path:
      return gen_path(config.n);
    case GraphFamily::Grid:
      return gen_grid(config.rows, config.cols);
    case GraphFamily::FromFile: {
      if (preloaded) return *preloaded;
      std::ifstream in(config.graph_file);
      if (!in)
        throw InvalidParam("cannot open graph file \"" + config.graph_file +
                           "\"");
      std::ostringstream buf;
      buf << in.rdbuf();
      return read_graph(buf.str());
    }
  }
  throw InvalidParam("unknown graph family");
}

void validate(const SweepConfig& config) {
  if (config.trials < 1) throw InvalidParam("sweep: trials must be >= 1");
  if (config.p_grid.empty()) throw InvalidParam("sweep: empty p grid");
  for (double p : config.p_grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidParam("sweep: every p must lie in [0,1]");
  if (config.family == GraphFamily::Grid &&
      (config.rows < 1 || config.cols < 1))
    throw InvalidParam("sweep: grid dimensions must be >= 1");
  if (config.family != GraphFamily::Grid &&
      config.family != GraphFamily::FromFile && config.n < 1)
    throw InvalidParam("sweep: n must be >= 1");
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

TrialRecord run_trial(const SweepConfig& config, double p,
                      uint64_t graph_seed, uint64_t game_seed,
                      const Graph* preloaded) {
  Graph graph = build_graph(config, p, graph_seed, preloaded);
  GraphicalGame game = sample_game(graph, game_seed);
  TrialRecord rec;
  try {
    if (config.mode == CountMode::FullCount) {
      PneCaps caps = config.caps;
      caps.profile_retention = 0;  // counts only; no profile storage
      PneResult r = count_pne(game, caps);
      rec.z = r.count;
      rec.pne_exists = r.count > 0;
    } else {
      rec.pne_exists = exists_pne(game, config.caps);
    }
  } catch (const SizeLimitExceeded&) {
    rec.skipped = true;
  }
  return rec;
}

SweepResult run_sweep(const SweepConfig& config, int threads) {
  validate(config);
  if (threads < 1) threads = 1;
  SweepResult result;
  result.config = config;

  std::optional<Graph> preloaded;
  if (config.family == GraphFamily::FromFile)
    preloaded.emplace(build_graph(config, 0.0, 0, nullptr));
  switch (config.family) {
    case GraphFamily::Grid:
      result.resolved_n = config.rows * config.cols;
      break;
    case GraphFamily::FromFile:
      result.resolved_n = preloaded->vertex_count();
      break;
    default:
      result.resolved_n = config.n;
  }

  const Graph* base = preloaded ? &*preloaded : nullptr;
  for (size_t pi = 0; pi < config.p_grid.size(); ++pi) {
    const double p = config.p_grid[pi];
    auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialRecord> records(config.trials);
    auto worker = [&](uint64_t first) {
      for (uint64_t t = first; t < config.trials;
           t += static_cast<uint64_t>(threads))
        records[t] = run_trial(config, p, trial_seed(config.master_seed, pi, t, 0),
                               trial_seed(config.master_seed, pi, t, 1), base);
    };
    if (threads == 1 || config.trials == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }

    PointResult point;
    point.p = p;
    point.trials = config.trials;
    for (const TrialRecord& rec : records) {
      if (rec.skipped) {
        ++point.skips;
        continue;
      }
      point.pne_exists_count += rec.pne_exists;
      if (config.mode == CountMode::FullCount) ++point.histogram[rec.z];
    }
    const uint64_t completed = point.trials - point.skips;
    if (completed > 0) {
      auto [lo, hi] =
          wilson_interval(point.pne_exists_count, completed, config.wilson_z);
      point.wilson_lo = lo;
      point.wilson_hi = hi;
    } else {
      point.wilson_lo = point.wilson_hi = kNan;
    }
    if (config.mode == CountMode::FullCount && completed > 0) {
      double sum = 0.0;
      for (const auto& [z, cnt] : point.histogram)
        sum += static_cast<double>(z) * static_cast<double>(cnt);
      point.mean_z = sum / static_cast<double>(completed);
      point.tv_poisson1 = tv_distance(point.histogram, 1.0);
    } else {
      point.mean_z = kNan;
      point.tv_poisson1 = kNan;
    }
    point.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    result.points.push_back(std::move(point));
  }
  return result;
}

double poisson_pmf(uint64_t k, double lambda) {
  if (!(lambda > 0.0)) throw InvalidParam("poisson_pmf: lambda must be > 0");
  double kk = static_cast<double>(k);
  return std::exp(-lambda + kk * std::log(lambda) - std::lgamma(kk + 1.0));
}

double tv_distance(const std::map<uint64_t, uint64_t>& hist, double lambda) {
  if (!(lambda > 0.0)) throw InvalidParam("tv_distance: lambda must be > 0");
  uint64_t total = 0;
  for (const auto& [z, cnt] : hist) total += cnt;
  if (total == 0) throw EmptyHistogram("tv_distance: empty histogram");
  const uint64_t k_max = hist.rbegin()->first;
  double sum = 0.0;
  double tail = 1.0;  // Poisson mass not yet accounted for
  for (uint64_t k = 0;; ++k) {
    double pmf = poisson_pmf(k, lambda);
    tail -= pmf;
    auto it = hist.find(k);
    double freq =
        it == hist.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(total);
    sum += std::abs(freq - pmf);
    if (k >= k_max && tail < 1e-12) break;
  }
  if (tail > 0.0) sum += tail;  // remaining |0 - pmf| terms
  return 0.5 * sum;
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials,
                                          double z) {
  if (trials == 0) throw InvalidParam("wilson_interval: trials must be >= 1");
  if (successes > trials)
    throw InvalidParam("wilson_interval: successes exceed trials");
  if (!(z > 0.0)) throw InvalidParam("wilson_interval: z must be > 0");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

const char* family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::Gnp: return "gnp";
    case GraphFamily::Complete: return "complete";
    case GraphFamily::Path: return "path";
    case GraphFamily::Grid: return "grid";
    case GraphFamily::FromFile: return "file";
  }
  return "?";
}

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

const char* mode_name(CountMode mode) {
  return mode == CountMode::Exists ? "exists" : "count";
}

}  // namespace

std::string sweep_csv(const SweepResult& result, bool include_seconds) {
  std::ostringstream out;
  out << "family,n,p,trials,skips,pne_count,mean_Z,tv_poisson1,wilson_lo,"
         "wilson_hi,seconds\n";
  for (const auto& pt : result.points) {
    out << family_name(result.config.family) << ',' << result.resolved_n << ','
        << format_double(pt.p) << ',' << pt.trials << ',' << pt.skips << ','
        << pt.pne_exists_count << ',' << format_double(pt.mean_z) << ','
        << format_double(pt.tv_poisson1) << ',' << format_double(pt.wilson_lo)
        << ',' << format_double(pt.wilson_hi) << ',';
    if (include_seconds) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", pt.seconds);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result, bool include_seconds) {
  nlohmann::json j;
  const SweepConfig& c = result.config;
  j["config"] = {{"family", family_name(c.family)},
                 {"n", result.resolved_n},
                 {"p_grid", c.p_grid},
                 {"trials", c.trials},
                 {"master_seed", c.master_seed},
                 {"mode", mode_name(c.mode)},
                 {"component_limit", c.caps.component_limit},
                 {"profile_retention", c.caps.profile_retention},
                 {"wilson_z", c.wilson_z},
                 {"rng", rng_name()}};
  if (c.family == GraphFamily::Grid) {
    j["config"]["rows"] = c.rows;
    j["config"]["cols"] = c.cols;
  }
  if (c.family == GraphFamily::FromFile)
    j["config"]["graph_file"] = c.graph_file;
  j["points"] = nlohmann::json::array();
  for (const auto& pt : result.points) {
    nlohmann::json pj = {{"p", pt.p},
                         {"trials", pt.trials},
                         {"skips", pt.skips},
                         {"pne_count", pt.pne_exists_count}};
    auto set_opt = [&pj](const char* key, double v) {
      if (!std::isnan(v)) pj[key] = v;
    };
    set_opt("mean_Z", pt.mean_z);
    set_opt("tv_poisson1", pt.tv_poisson1);
    set_opt("wilson_lo", pt.wilson_lo);
    set_opt("wilson_hi", pt.wilson_hi);
    if (include_seconds) pj["seconds"] = pt.seconds;
    if (result.config.mode == CountMode::FullCount) {
      nlohmann::json h = nlohmann::json::object();
      for (const auto& [z, cnt] : pt.histogram) h[std::to_string(z)] = cnt;
      pj["histogram"] = h;
    }
    j["points"].push_back(std::move(pj));
  }
  return j.dump(2) + "\n";
}

std::string sweep_text(const SweepResult& result) {
  std::ostringstream out;
  out << "family=" << family_name(result.config.family)
      << " n=" << result.resolved_n << " trials=" << result.config.trials
      << " mode=" << mode_name(result.config.mode)
      << " seed=" << result.config.master_seed << " rng=" << rng_name()
      << "\n";
  for (const auto& pt : result.points) {
    const uint64_t completed = pt.trials - pt.skips;
    out << "p=" << format_double(pt.p) << "  P(PNE)="
        << format_double(completed
                             ? static_cast<double>(pt.pne_exists_count) /
                                   static_cast<double>(completed)
                             : std::numeric_limits<double>::quiet_NaN())
        << "  wilson=[" << format_double(pt.wilson_lo) << ", "
        << format_double(pt.wilson_hi) << "]";
    if (!std::isnan(pt.mean_z))
      out << "  mean_Z=" << format_double(pt.mean_z)
          << "  tv_poisson1=" << format_double(pt.tv_poisson1);
    if (pt.skips) out << "  skips=" << pt.skips;
    out << "\n";
  }
  return out.str();
}

}  // namespace nashphase
