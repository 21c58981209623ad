#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nashphase/graph.hpp"

namespace nashphase {

// Strategy profile packed into an unsigned integer: player k plays bit
// (k-1), least significant bit = player 1. Valid for n <= 64.
using Profile = uint64_t;

inline int profile_bit(Profile p, int player) {
  return static_cast<int>((p >> (player - 1)) & 1);
}

// One best-reply bit per neighbor configuration. Row index encoding: bit j
// of the row is the strategy of the j-th smallest neighbor (j = 0 least
// significant). Rows are packed 64 per word.
struct BestResponseTable {
  int owner = 0;
  std::vector<int> neighbor_order;  // sorted ascending
  uint64_t rows = 0;                // 2^deg(owner)
  std::vector<uint64_t> bits;       // bit r of word r/64; tail bits zero

  bool get(uint64_t row) const {
    return (bits[row >> 6] >> (row & 63)) & 1;
  }
  void set(uint64_t row, bool value) {
    uint64_t m = uint64_t{1} << (row & 63);
    if (value)
      bits[row >> 6] |= m;
    else
      bits[row >> 6] &= ~m;
  }

  bool operator==(const BestResponseTable&) const = default;
};

enum class GameOrigin { SampledDirect, DerivedFromPayoffs };

struct GraphicalGame {
  Graph graph;
  std::vector<BestResponseTable> tables;  // indexed by vertex; [0] unused
  GameOrigin origin = GameOrigin::SampledDirect;
  // Exact payoff ties broken to strategy 0 during derivation; nonzero here
  // means finite-precision contamination of the atomless model.
  uint64_t tie_count = 0;
};

// Real payoff entries, i.i.d. uniform [0,1). entry(v, s, r) is the payoff
// to v for own strategy s when v's neighbors sit in row r.
struct PayoffTables {
  Graph graph;
  std::vector<std::vector<double>> entries;  // [v][2*r + s]; [0] unused

  double entry(int v, int own, uint64_t row) const {
    return entries[v][2 * row + own];
  }
};

// Uniform measure over best-response tables: every row bit an independent
// fair coin, driven solely by seed.
GraphicalGame sample_game(const Graph& g, uint64_t seed);

PayoffTables sample_payoffs(const Graph& g, uint64_t seed);

// Argmax per row over own strategies; exact ties go to strategy 0 and are
// counted in tie_count.
GraphicalGame derive_best_response(const PayoffTables& payoffs);

// Row of v's table selected by the given profile.
uint64_t table_row(const GraphicalGame& game, int v, Profile profile);

bool is_best_response(const GraphicalGame& game, int v, Profile profile);
bool is_pne(const GraphicalGame& game, Profile profile);

// Text format: graph block, then one line "v: <bitstring>" per vertex with
// rows ordered by row index ascending.
std::string write_game(const GraphicalGame& game);
GraphicalGame read_game(const std::string& text);

}  // namespace nashphase
