#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashphase/game.hpp"

namespace nashphase {

enum class WitnessKind { IndifferentMatchingPennies, IsolatedMatchingPennies };

// Which endpoint copies and which negates. The matcher's best reply equals
// the other player's strategy in every row; the mismatcher's is the
// negation in every row.
struct MpOrientation {
  int matcher = 0;
  int mismatcher = 0;
};

// A game containing such an edge has no pure Nash equilibrium, regardless
// of every other table: the two constraints sigma_m = sigma_x and
// sigma_x = 1 - sigma_m cannot hold together.
struct WitnessReport {
  WitnessKind kind = WitnessKind::IndifferentMatchingPennies;
  Edge edge{0, 0};
  MpOrientation orientation;
  uint64_t checked_rows = 0;  // table rows examined by the search
};

// Tests the indifferent-matching-pennies pattern on (a,b) at the
// best-response level, quantifying over all configurations of the other
// neighbors. Both orientations accepted. Cost O(2^deg(a) + 2^deg(b)).
std::optional<MpOrientation> is_indifferent_mp(const GraphicalGame& game,
                                               Edge e);

// Scans d-bounded edges in canonical order; first hit wins.
std::optional<WitnessReport> find_witness(const GraphicalGame& game,
                                          int degree_cap);

struct ExposureTrace {
  struct Step {
    int examined = 0;            // minimal surviving vertex j
    int partner = 0;             // unique neighbor j', 0 if none
    std::vector<int> removed;    // vertices removed this iteration
    bool tested_edge = false;
  };
  std::vector<Step> steps;
};

// Iterative vertex-revealing search: while at least n/2 vertices survive,
// examine the minimal one; isolated surviving edges get the matching
// pennies test. Degrees are always with respect to the surviving set.
std::optional<WitnessReport> exposure_search(const GraphicalGame& game,
                                             ExposureTrace* trace = nullptr);

struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;
  double value() const { return static_cast<double>(num) / den; }
  bool operator==(const Rational&) const = default;
};

// Exact probability that an edge with endpoint degrees (d_a, d_b) is an
// indifferent matching pennies game, by enumerating every table on each
// side. Supported for 1 <= d <= 4. Closed form: 2^(1 - 2^d_a - 2^d_b).
Rational witness_probability_exact(int d_a, int d_b);

struct NonexistenceBounds {
  // 1 - exp(-m' * p_imp) over a greedy matching of d-bounded edges.
  double vertex_disjoint = 0.0;
  // 1 - exp(-(m / 2d) * p_imp) with m the count of all d-bounded edges.
  double edge_count = 0.0;
  // 1 - exp(-w) with w the weighted independent edge set value.
  double weighted = 0.0;
  int matching_size = 0;    // m'
  int d_bounded_count = 0;  // m
  double matching_weight = 0.0;
};

NonexistenceBounds nonexistence_probability_bound(const Graph& g, int d);

// Certificate block: kind, edge, orientation, and the two table bitstrings.
std::string write_certificate(const WitnessReport& report,
                              const GraphicalGame& game);

// Recomputes acceptance from scratch: the edge must exist, the recorded
// tables must match the game bit-for-bit, and the orientation must be the
// one the detector finds. Malformed text throws ParseError.
bool verify_certificate(const std::string& text, const GraphicalGame& game);

}  // namespace nashphase
