#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nashphase/game.hpp"

namespace nashphase {

// Full-profile enumeration is capped at 2^30 states per connected piece.
inline constexpr int kEnumerationCap = 30;

struct PneCaps {
  int component_limit = kEnumerationCap;       // max vertices per component
  uint64_t profile_retention = uint64_t{1} << 20;  // max stored PNE profiles
};

struct PneResult {
  uint64_t count = 0;
  // Present only when count fits the retention cap and n <= 64; the count
  // itself is always exact.
  std::optional<std::vector<Profile>> profiles;
  uint64_t work = 0;  // profiles examined
};

// Exact count by full enumeration over all 2^n profiles (n <= 30).
// Profiles are visited in Gray-code order so each step revalidates only the
// flipped player and its neighbors.
PneResult count_pne_exhaustive(const GraphicalGame& game,
                               const PneCaps& caps = {});

// Product of per-component counts; the default entry point. Equals
// count_pne_exhaustive whenever the whole graph fits the cap.
PneResult count_pne(const GraphicalGame& game, const PneCaps& caps = {});

// True iff count_pne(game).count > 0, with early exit: a component stops
// scanning at its first equilibrium, and a component with none
// short-circuits the whole answer.
bool exists_pne(const GraphicalGame& game, const PneCaps& caps = {});

// B_0: profiles j such that some player has every neighbor playing 0 in j.
// A neighborless player satisfies the condition vacuously. Sorted
// ascending; requires n <= 30.
std::vector<Profile> dependence_neighborhood_b0(const Graph& g);

// B_i = i XOR B_0, returned sorted. Same cardinality as the input.
std::vector<Profile> translate_b(Profile i, const std::vector<Profile>& b0);

}  // namespace nashphase
