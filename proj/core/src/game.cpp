#include "nashphase/game.hpp"

#include <algorithm>
#include <sstream>

#include "nashphase/errors.hpp"
#include "nashphase/rng.hpp"

namespace nashphase {

namespace {

BestResponseTable empty_table(const Graph& g, int v) {
  BestResponseTable t;
  t.owner = v;
  t.neighbor_order = g.neighbors(v);
  if (t.neighbor_order.size() >= 64)
    throw SizeLimitExceeded("table for vertex " + std::to_string(v) +
                            " would need 2^" +
                            std::to_string(t.neighbor_order.size()) + " rows");
  t.rows = uint64_t{1} << t.neighbor_order.size();
  t.bits.assign((t.rows + 63) / 64, 0);
  return t;
}

// Zeroes bits past `rows` so packed tables compare bit-for-bit.
void mask_tail(BestResponseTable& t) {
  uint64_t tail = t.rows & 63;
  if (tail) t.bits.back() &= (uint64_t{1} << tail) - 1;
}

}  // namespace

GraphicalGame sample_game(const Graph& g, uint64_t seed) {
  GraphicalGame game{g, {}, GameOrigin::SampledDirect, 0};
  game.tables.resize(g.vertex_count() + 1);
  Rng rng(seed);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    auto& t = game.tables[v] = empty_table(g, v);
    for (auto& word : t.bits) word = rng();
    mask_tail(t);
  }
  return game;
}

PayoffTables sample_payoffs(const Graph& g, uint64_t seed) {
  PayoffTables p{g, {}};
  p.entries.resize(g.vertex_count() + 1);
  Rng rng(seed);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    int deg = g.degree(v);
    if (deg >= 62)
      throw SizeLimitExceeded("payoff table for vertex " + std::to_string(v) +
                              " too large");
    p.entries[v].resize(uint64_t{2} << deg);
    for (auto& x : p.entries[v]) x = unit_double(rng());
  }
  return p;
}

GraphicalGame derive_best_response(const PayoffTables& payoffs) {
  GraphicalGame game{payoffs.graph, {}, GameOrigin::DerivedFromPayoffs, 0};
  const Graph& g = payoffs.graph;
  game.tables.resize(g.vertex_count() + 1);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    auto& t = game.tables[v] = empty_table(g, v);
    for (uint64_t r = 0; r < t.rows; ++r) {
      double u0 = payoffs.entry(v, 0, r);
      double u1 = payoffs.entry(v, 1, r);
      if (u1 == u0) ++game.tie_count;
      t.set(r, u1 > u0);
    }
  }
  return game;
}

uint64_t table_row(const GraphicalGame& game, int v, Profile profile) {
  const auto& order = game.tables[v].neighbor_order;
  uint64_t row = 0;
  for (size_t j = 0; j < order.size(); ++j)
    row |= static_cast<uint64_t>(profile_bit(profile, order[j])) << j;
  return row;
}

bool is_best_response(const GraphicalGame& game, int v, Profile profile) {
  return game.tables[v].get(table_row(game, v, profile)) ==
         (profile_bit(profile, v) != 0);
}

bool is_pne(const GraphicalGame& game, Profile profile) {
  for (int v = 1; v <= game.graph.vertex_count(); ++v)
    if (!is_best_response(game, v, profile)) return false;
  return true;
}

std::string write_game(const GraphicalGame& game) {
  std::ostringstream out;
  out << write_graph(game.graph);
  for (int v = 1; v <= game.graph.vertex_count(); ++v) {
    const auto& t = game.tables[v];
    out << v << ": ";
    for (uint64_t r = 0; r < t.rows; ++r) out << (t.get(r) ? '1' : '0');
    out << "\n";
  }
  return out.str();
}

GraphicalGame read_game(const std::string& text) {
  // Graph block ends where the first "v: bits" line begins.
  std::istringstream in(text);
  std::string raw;
  std::ostringstream graph_text;
  std::vector<std::pair<int, std::string>> table_lines;  // (line_no, content)
  int line_no = 0;
  bool in_tables = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string no_comment = raw.substr(0, raw.find('#'));
    bool is_table = no_comment.find(':') != std::string::npos;
    if (is_table) in_tables = true;
    if (in_tables) {
      if (no_comment.find_first_not_of(" \t\r") != std::string::npos) {
        if (!is_table) throw ParseError(line_no, "expected table line");
        table_lines.emplace_back(line_no, no_comment);
      }
    } else {
      graph_text << raw << "\n";
    }
  }
  Graph g = read_graph(graph_text.str());
  GraphicalGame game{g, {}, GameOrigin::SampledDirect, 0};
  game.tables.resize(g.vertex_count() + 1);
  std::vector<char> seen(g.vertex_count() + 1, 0);
  for (const auto& [ln, content] : table_lines) {
    size_t colon = content.find(':');
    long long v = 0;
    try {
      size_t pos = 0;
      v = std::stoll(content.substr(0, colon), &pos);
      std::string rest = content.substr(0, colon).substr(pos);
      if (rest.find_first_not_of(" \t") != std::string::npos)
        throw std::invalid_argument("");
    } catch (...) {
      throw ParseError(ln, "expected \"v: bits\"");
    }
    if (v < 1 || v > g.vertex_count())
      throw ParseError(ln, "table vertex out of range");
    if (seen[v]) throw ParseError(ln, "duplicate table for vertex " +
                                          std::to_string(v));
    seen[v] = 1;
    std::string bits = content.substr(colon + 1);
    bits.erase(std::remove_if(bits.begin(), bits.end(),
                              [](char c) { return c == ' ' || c == '\t' ||
                                                  c == '\r'; }),
               bits.end());
    auto& t = game.tables[v] = empty_table(g, static_cast<int>(v));
    if (bits.size() != t.rows)
      throw ParseError(ln, "table for vertex " + std::to_string(v) +
                               " must have " + std::to_string(t.rows) +
                               " bits, got " + std::to_string(bits.size()));
    for (uint64_t r = 0; r < t.rows; ++r) {
      if (bits[r] != '0' && bits[r] != '1')
        throw ParseError(ln, "table bits must be 0 or 1");
      t.set(r, bits[r] == '1');
    }
  }
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (!seen[v])
      throw ParseError(line_no + 1,
                       "missing table for vertex " + std::to_string(v));
  return game;
}

}  // namespace nashphase
