#include "nashphase/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nashphase/errors.hpp"

namespace nashphase {

namespace {

struct MpRole {
  bool matcher = false;
  bool mismatcher = false;
  uint64_t rows_examined = 0;
};

// Classifies one table against the partner bit at position `pos` in its
// rows. Early-exits once both patterns are dead.
MpRole mp_role(const BestResponseTable& t, size_t pos) {
  MpRole role{true, true, 0};
  for (uint64_t r = 0; r < t.rows; ++r) {
    ++role.rows_examined;
    bool partner = (r >> pos) & 1;
    bool reply = t.get(r);
    if (reply != partner) role.matcher = false;
    if (reply == partner) role.mismatcher = false;
    if (!role.matcher && !role.mismatcher) break;
  }
  return role;
}

size_t partner_pos(const BestResponseTable& t, int partner) {
  const auto& ord = t.neighbor_order;
  return std::lower_bound(ord.begin(), ord.end(), partner) - ord.begin();
}

struct MpCheck {
  std::optional<MpOrientation> orientation;
  uint64_t rows_examined = 0;
};

MpCheck check_indifferent_mp(const GraphicalGame& game, Edge e) {
  auto [a, b] = e;
  if (!game.graph.has_edge(a, b))
    throw EdgeAbsent("edge " + std::to_string(a) + " " + std::to_string(b) +
                     " not in graph");
  MpRole ra = mp_role(game.tables[a], partner_pos(game.tables[a], b));
  MpRole rb = mp_role(game.tables[b], partner_pos(game.tables[b], a));
  MpCheck out;
  out.rows_examined = ra.rows_examined + rb.rows_examined;
  if (ra.matcher && rb.mismatcher)
    out.orientation = MpOrientation{a, b};
  else if (rb.matcher && ra.mismatcher)
    out.orientation = MpOrientation{b, a};
  return out;
}

}  // namespace

std::optional<MpOrientation> is_indifferent_mp(const GraphicalGame& game,
                                               Edge e) {
  return check_indifferent_mp(game, e).orientation;
}

std::optional<WitnessReport> find_witness(const GraphicalGame& game,
                                          int degree_cap) {
  uint64_t rows = 0;
  for (const Edge& e : d_bounded_edges(game.graph, degree_cap)) {
    MpCheck c = check_indifferent_mp(game, e);
    rows += c.rows_examined;
    if (c.orientation)
      return WitnessReport{WitnessKind::IndifferentMatchingPennies, e,
                           *c.orientation, rows};
  }
  return std::nullopt;
}

std::optional<WitnessReport> exposure_search(const GraphicalGame& game,
                                             ExposureTrace* trace) {
  const Graph& g = game.graph;
  const int n = g.vertex_count();
  std::vector<char> alive(n + 1, 1);
  int alive_count = n;
  int cursor = 1;  // the examined vertex is removed every iteration
  uint64_t rows = 0;
  auto alive_neighbors = [&](int v) {
    std::vector<int> out;
    for (int u : g.neighbors(v))
      if (alive[u]) out.push_back(u);
    return out;
  };
  auto remove = [&](int v, ExposureTrace::Step* step) {
    if (!alive[v]) return;
    alive[v] = 0;
    --alive_count;
    if (step) step->removed.push_back(v);
  };
  while (2 * alive_count >= n) {
    while (cursor <= n && !alive[cursor]) ++cursor;
    if (cursor > n) break;
    int j = cursor;
    ExposureTrace::Step step;
    step.examined = j;
    auto nb = alive_neighbors(j);
    if (nb.size() != 1) {
      remove(j, &step);
      for (int u : nb) remove(u, &step);
    } else {
      int j2 = nb[0];
      step.partner = j2;
      auto nb2 = alive_neighbors(j2);
      nb2.erase(std::remove(nb2.begin(), nb2.end(), j), nb2.end());
      if (!nb2.empty()) {
        remove(j, &step);
        remove(j2, &step);
        for (int u : nb2) remove(u, &step);
      } else {
        step.tested_edge = true;
        Edge e{std::min(j, j2), std::max(j, j2)};
        MpCheck c = check_indifferent_mp(game, e);
        rows += c.rows_examined;
        if (c.orientation) {
          if (trace) trace->steps.push_back(std::move(step));
          return WitnessReport{WitnessKind::IsolatedMatchingPennies, e,
                               *c.orientation, rows};
        }
        remove(j, &step);
        remove(j2, &step);
      }
    }
    if (trace) trace->steps.push_back(std::move(step));
  }
  return std::nullopt;
}

Rational witness_probability_exact(int d_a, int d_b) {
  for (int d : {d_a, d_b})
    if (d < 1 || d > 4)
      throw DegreeTooLarge("witness_probability_exact: degree " +
                           std::to_string(d) + " outside 1..4");
  // Enumerate every table on each side and classify it; an edge is an
  // indifferent matching pennies game iff one side is a matcher and the
  // other a mismatcher, and the two orientations are disjoint events, so
  // the pair count factorizes exactly.
  auto classify = [](int deg) {
    BestResponseTable t;
    t.owner = 1;
    t.neighbor_order.resize(deg);
    std::iota(t.neighbor_order.begin(), t.neighbor_order.end(), 2);
    t.rows = uint64_t{1} << deg;
    t.bits.assign(1, 0);
    uint64_t match = 0, mismatch = 0;
    const uint64_t tables = uint64_t{1} << t.rows;
    for (uint64_t value = 0; value < tables; ++value) {
      t.bits[0] = value;
      MpRole r = mp_role(t, 0);  // partner at position 0
      match += r.matcher;
      mismatch += r.mismatcher;
    }
    return std::pair<uint64_t, uint64_t>{match, mismatch};
  };
  auto [ma, mma] = classify(d_a);
  auto [mb, mmb] = classify(d_b);
  uint64_t accepted = ma * mmb + mma * mb;
  uint64_t total = (uint64_t{1} << (uint64_t{1} << d_a)) *
                   (uint64_t{1} << (uint64_t{1} << d_b));
  uint64_t gcd = std::gcd(accepted, total);
  if (gcd == 0) gcd = 1;
  return Rational{accepted / gcd, total / gcd};
}

NonexistenceBounds nonexistence_probability_bound(const Graph& g, int d) {
  NonexistenceBounds out;
  auto bounded = d_bounded_edges(g, d);
  out.d_bounded_count = static_cast<int>(bounded.size());
  // Greedy maximal matching inside the d-bounded edges, canonical order.
  std::vector<char> used(g.vertex_count() + 1, 0);
  for (const auto& [u, v] : bounded) {
    if (used[u] || used[v]) continue;
    used[u] = used[v] = 1;
    ++out.matching_size;
  }
  const double p_imp = std::exp2(-3.0 * std::exp2(2.0 * d - 2.0));
  out.vertex_disjoint = -std::expm1(-out.matching_size * p_imp);
  out.edge_count = -std::expm1(-(out.d_bounded_count / (2.0 * d)) * p_imp);
  auto matching = weighted_independent_edge_set(g);
  out.matching_weight = matching.total_weight;
  out.weighted = -std::expm1(-matching.total_weight);
  return out;
}

namespace {

const char* kind_name(WitnessKind k) {
  return k == WitnessKind::IndifferentMatchingPennies
             ? "indifferent-matching-pennies"
             : "isolated-matching-pennies";
}

std::string table_bits(const BestResponseTable& t) {
  std::string s;
  s.reserve(t.rows);
  for (uint64_t r = 0; r < t.rows; ++r) s.push_back(t.get(r) ? '1' : '0');
  return s;
}

}  // namespace

std::string write_certificate(const WitnessReport& report,
                              const GraphicalGame& game) {
  std::ostringstream out;
  out << "kind: " << kind_name(report.kind) << "\n";
  out << "edge: " << report.edge.first << " " << report.edge.second << "\n";
  out << "matcher: " << report.orientation.matcher << "\n";
  out << "mismatcher: " << report.orientation.mismatcher << "\n";
  out << "checked-rows: " << report.checked_rows << "\n";
  out << "table " << report.edge.first << ": "
      << table_bits(game.tables[report.edge.first]) << "\n";
  out << "table " << report.edge.second << ": "
      << table_bits(game.tables[report.edge.second]) << "\n";
  return out.str();
}

bool verify_certificate(const std::string& text, const GraphicalGame& game) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string kind;
  Edge edge{0, 0};
  int matcher = -1, mismatcher = -1;
  std::vector<std::pair<int, std::string>> tables;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(line_no, "expected \"key: value\"");
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    key = trim(key);
    value = trim(value);
    try {
      if (key == "kind") {
        kind = value;
      } else if (key == "edge") {
        std::istringstream vs(value);
        if (!(vs >> edge.first >> edge.second))
          throw ParseError(line_no, "bad edge");
      } else if (key == "matcher") {
        matcher = std::stoi(value);
      } else if (key == "mismatcher") {
        mismatcher = std::stoi(value);
      } else if (key == "checked-rows") {
        // informational only
      } else if (key.rfind("table ", 0) == 0) {
        tables.emplace_back(std::stoi(key.substr(6)), value);
      } else {
        throw ParseError(line_no, "unknown key \"" + key + "\"");
      }
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError(line_no, "malformed value for \"" + key + "\"");
    }
  }
  if (kind != "indifferent-matching-pennies" &&
      kind != "isolated-matching-pennies")
    throw ParseError(line_no + 1, "missing or unknown kind");
  if (edge.first == 0 || matcher < 0 || mismatcher < 0 || tables.size() != 2)
    throw ParseError(line_no + 1, "incomplete certificate");

  const Graph& g = game.graph;
  if (edge.first < 1 || edge.first > g.vertex_count() || edge.second < 1 ||
      edge.second > g.vertex_count() || !g.has_edge(edge.first, edge.second))
    return false;
  for (const auto& [v, bits] : tables) {
    if (v != edge.first && v != edge.second) return false;
    if (bits != table_bits(game.tables[v])) return false;
  }
  auto orientation = is_indifferent_mp(game, edge);
  return orientation && orientation->matcher == matcher &&
         orientation->mismatcher == mismatcher;
}

}  // namespace nashphase
