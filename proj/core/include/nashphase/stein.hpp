#pragma once

#include <cstdint>

#include "nashphase/graph.hpp"

namespace nashphase {

// Exact per-graph pair-sum quantities for the Poisson approximation of the
// equilibrium count. 2*(b1+b2) upper-bounds the total variation distance
// between the count's distribution and Poisson(1).
struct SteinBounds {
  double b1 = 0.0;        // |B_0| / 2^n
  double b2 = 0.0;
  double tv_bound = 0.0;  // 2*(b1+b2)
  uint64_t b0_size = 0;
};

// Requires n <= 24. b2 is computed over the single orbit of the zero
// profile: translation by XOR and per-row strategy relabeling preserve the
// table measure, so every profile's dependence neighborhood contributes the
// same sum. Validated against the naive double sum in the test suite.
SteinBounds stein_bounds_exact(const Graph& g);

// Envelope sum S(n,p) = sum_s C(n,s) 2^-n [(1+q^s)^(n-s) - (1-q^s)^(n-s)],
// q = 1-p. The bracket is evaluated by an odd-power series when q^s is
// small, avoiding the catastrophic cancellation of the direct difference.
double envelope_s(int n, double p);

// Envelope sum R(n,p) = sum_s C(n,s) 2^-n min(1, n q^(s-1)).
double envelope_r(int n, double p);

// (1 - c/(8n^2))^(n(n-1)/2): the chance that no present edge forms a
// matching pennies game when edges are this rare. Tends to exp(-c/16).
double predict_low_connectivity(int n, double c);

// Pre-asymptotic certificate exp(-m * 0.01 * n p (1-p)^(2n)) with
// m = 0.1 n/(np+1). An upper bound on the equilibrium probability up to a
// suppressed exp(-Omega(n)) failure term; vacuous at small sizes.
double medium_regime_bound(int n, double p);

}  // namespace nashphase
