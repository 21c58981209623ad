#include "nashphase/stein.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nashphase/errors.hpp"
#include "nashphase/pne.hpp"

namespace nashphase {

SteinBounds stein_bounds_exact(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 24)
    throw SizeLimitExceeded("stein_bounds_exact: n = " + std::to_string(n) +
                            " exceeds 24");
  std::vector<uint64_t> masks(n + 1, 0);
  for (int v = 1; v <= n; ++v) masks[v] = g.neighbor_mask(v);

  auto b0 = dependence_neighborhood_b0(g);
  SteinBounds out;
  out.b0_size = b0.size();
  out.b1 = std::ldexp(static_cast<double>(b0.size()), -n);

  // Joint term for profile pair (0, j): a player is touched when some
  // neighbor flips; each touched player contributes 1/4, each untouched
  // 1/2, and an untouched player that itself flips kills the term (both of
  // its strategies would have to be the best reply to one row). The 2^n
  // orbit factor cancels the 2^-n in each term, leaving sum of 2^-touched.
  for (Profile j : b0) {
    if (j == 0) continue;
    int touched = 0;
    bool dead = false;
    for (int k = 1; k <= n; ++k) {
      bool t = (j & masks[k]) != 0;
      touched += t;
      if (!t && ((j >> (k - 1)) & 1)) {
        dead = true;
        break;
      }
    }
    if (!dead) out.b2 += std::ldexp(1.0, -touched);
  }
  out.tv_bound = 2.0 * (out.b1 + out.b2);
  return out;
}

namespace {

double log_choose(int n, int s) {
  return std::lgamma(n + 1.0) - std::lgamma(s + 1.0) -
         std::lgamma(n - s + 1.0);
}

// (1+x)^k - (1-x)^k for x in [0,1]. The direct difference loses all
// precision when k*x is tiny; switch to the odd-power expansion
// 2*sum_{i odd} C(k,i) x^i there.
double pow1p_diff(int k, double x) {
  if (k == 0 || x == 0.0) return 0.0;
  if (k * x > 0.5)
    return std::exp(k * std::log1p(x)) - std::exp(k * std::log1p(-x));
  double term = 2.0 * k * x;
  double sum = term;
  for (int i = 1; i + 2 <= k; i += 2) {
    term *= (static_cast<double>(k - i) * (k - i - 1)) /
            (static_cast<double>(i + 1) * (i + 2)) * x * x;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

void check_np(int n, double p, const char* who) {
  if (n < 1) throw InvalidParam(std::string(who) + ": n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParam(std::string(who) + ": p must lie in [0,1]");
}

}  // namespace

double envelope_s(int n, double p) {
  check_np(n, p, "envelope_s");
  const double q = 1.0 - p;
  const double ln2 = std::log(2.0);
  double total = 0.0;
  for (int s = 1; s <= n; ++s) {
    double x = std::pow(q, s);
    double bracket = pow1p_diff(n - s, x);
    if (bracket == 0.0) continue;
    total += std::exp(log_choose(n, s) - n * ln2) * bracket;
  }
  return total;
}

double envelope_r(int n, double p) {
  check_np(n, p, "envelope_r");
  const double q = 1.0 - p;
  const double ln2 = std::log(2.0);
  double total = 0.0;
  for (int s = 1; s <= n; ++s) {
    double tail = std::min(1.0, n * std::pow(q, s - 1));
    total += std::exp(log_choose(n, s) - n * ln2) * tail;
  }
  return total;
}

double predict_low_connectivity(int n, double c) {
  if (n < 2) throw InvalidParam("predict_low_connectivity: n must be >= 2");
  if (c < 0) throw InvalidParam("predict_low_connectivity: c must be >= 0");
  double x = c / (8.0 * n * n);
  if (x > 1.0)
    throw InvalidParam("predict_low_connectivity: c/(8n^2) exceeds 1");
  double pairs = 0.5 * n * (n - 1);
  if (x == 1.0) return 0.0;
  return std::exp(pairs * std::log1p(-x));
}

double medium_regime_bound(int n, double p) {
  if (n < 1) throw InvalidParam("medium_regime_bound: n must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw InvalidParam("medium_regime_bound: p must lie in (0,1)");
  double m = 0.1 * n / (n * p + 1.0);
  double omega = m * 0.01 * n * p * std::exp(2.0 * n * std::log1p(-p));
  return std::exp(-omega);
}

}  // namespace nashphase
