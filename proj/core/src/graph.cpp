#include "nashphase/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "nashphase/errors.hpp"
#include "nashphase/rng.hpp"

namespace nashphase {

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw InvalidParam("graph: vertex count must be >= 1");
  adj_.resize(n + 1);
}

void Graph::check_vertex(int v) const {
  if (v < 1 || v > n_)
    throw InvalidParam("graph: vertex " + std::to_string(v) +
                       " out of range 1.." + std::to_string(n_));
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InvalidParam("graph: self-loop at " + std::to_string(u));
  if (u > v) std::swap(u, v);
  if (has_edge(u, v))
    throw InvalidParam("graph: duplicate edge " + std::to_string(u) + " " +
                       std::to_string(v));
  auto insert_sorted = [](std::vector<int>& vec, int x) {
    vec.insert(std::lower_bound(vec.begin(), vec.end(), x), x);
  };
  insert_sorted(adj_[u], v);
  insert_sorted(adj_[v], u);
  Edge e{u, v};
  if (edges_.empty() || edges_.back() < e) {
    edges_.push_back(e);
  } else {
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
  }
}

int Graph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[v].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

uint64_t Graph::neighbor_mask(int v) const {
  check_vertex(v);
  if (n_ > 64) throw SizeLimitExceeded("neighbor_mask: n > 64");
  uint64_t m = 0;
  for (int u : adj_[v]) m |= uint64_t{1} << (u - 1);
  return m;
}

bool Graph::operator==(const Graph& other) const {
  return n_ == other.n_ && edges_ == other.edges_;
}

namespace {

// Maps a 0-based linear pair index to (u,v) in canonical enumeration order
// (1,2),(1,3),...,(1,n),(2,3),... Indices must be queried in increasing
// order; the cursor only moves forward.
class PairCursor {
 public:
  explicit PairCursor(int n) : n_(n) {}

  Edge at(uint64_t idx) {
    while (idx >= row_start_ + static_cast<uint64_t>(n_ - u_)) {
      row_start_ += n_ - u_;
      ++u_;
    }
    int v = u_ + 1 + static_cast<int>(idx - row_start_);
    return {u_, v};
  }

 private:
  int n_;
  int u_ = 1;
  uint64_t row_start_ = 0;
};

}  // namespace

Graph gen_gnp(const GnpParams& params) {
  if (params.n < 1) throw InvalidParam("gnp: n must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw InvalidParam("gnp: p must lie in [0,1]");
  Graph g(params.n);
  const int n = params.n;
  const uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
  if (params.p <= 0.0 || total == 0) return g;
  if (params.p >= 1.0) {
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
  }
  // Geometric jumps between successive present pairs; O(n + edges) instead
  // of one Bernoulli draw per pair.
  Rng rng(params.seed);
  const double log_q = std::log1p(-params.p);
  PairCursor cursor(n);
  uint64_t idx = 0;
  while (idx < total) {
    double skip = std::floor(std::log(open_unit_double(rng())) / log_q);
    if (skip >= static_cast<double>(total - idx)) break;
    idx += static_cast<uint64_t>(skip);
    if (idx >= total) break;
    auto [u, v] = cursor.at(idx);
    g.add_edge(u, v);
    ++idx;
  }
  return g;
}

Graph gen_complete(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

Graph gen_empty(int n) { return Graph(n); }

Graph gen_path(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidParam("grid: rows, cols must be >= 1");
  Graph g(rows * cols);
  auto id = [cols](int r, int c) { return (r - 1) * cols + c; };
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      if (c < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  }
  return g;
}

std::vector<Edge> d_bounded_edges(const Graph& g, int d) {
  if (d < 1) throw InvalidParam("d_bounded_edges: d must be >= 1");
  std::vector<Edge> out;
  for (const auto& [u, v] : g.edges())
    if (g.degree(u) <= d && g.degree(v) <= d) out.emplace_back(u, v);
  return out;
}

double edge_witness_weight(int deg_u, int deg_v) {
  if (deg_u < 1 || deg_v < 1)
    throw InvalidParam("edge_witness_weight: degrees must be >= 1");
  // p = 8^(-2^(du+dv-2)) = 2^(-3 * 2^(du+dv-2)); underflows to 0 for large
  // degrees, where the weight is ~p anyway.
  double exponent = 3.0 * std::exp2(static_cast<double>(deg_u + deg_v - 2));
  double p = std::exp2(-exponent);
  return -std::log1p(-p);
}

WeightedMatching weighted_independent_edge_set(const Graph& g) {
  struct Cand {
    double w;
    Edge e;
  };
  std::vector<Cand> cands;
  cands.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges())
    cands.push_back({edge_witness_weight(g.degree(u), g.degree(v)), {u, v}});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.e < b.e;
  });
  WeightedMatching m;
  std::vector<char> used(g.vertex_count() + 1, 0);
  for (const auto& c : cands) {
    auto [u, v] = c.e;
    if (used[u] || used[v]) continue;
    used[u] = used[v] = 1;
    m.edges.push_back(c.e);
    m.total_weight += c.w;
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent, rank_;

  explicit UnionFind(int n) : parent(n + 1), rank_(n + 1, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }
};

}  // namespace

std::vector<std::vector<int>> connected_components(const Graph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& [u, v] : g.edges()) uf.unite(u, v);
  std::vector<int> slot(g.vertex_count() + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    int root = uf.find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;  // members ascending by construction; parts by first member
}

std::vector<int> neighborhood(const Graph& g, const std::vector<int>& vset) {
  std::vector<char> mark(g.vertex_count() + 1, 0);
  for (int v : vset) {
    if (v < 1 || v > g.vertex_count())
      throw InvalidParam("neighborhood: vertex out of range");
    for (int u : g.neighbors(v)) mark[u] = 1;
  }
  std::vector<int> out;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

std::optional<std::vector<int>> find_expander_violation(const Graph& g,
                                                        double alpha,
                                                        double delta) {
  const int n = g.vertex_count();
  if (n > 24)
    throw SizeLimitExceeded("expander check: n = " + std::to_string(n) +
                            " exceeds the exhaustive cap of 24");
  if (!(alpha > 0)) throw InvalidParam("expander check: alpha must be > 0");
  if (!(delta > 0 && delta <= 1))
    throw InvalidParam("expander check: delta must lie in (0,1]");
  std::vector<uint32_t> adj_mask(n + 1, 0);
  for (int v = 1; v <= n; ++v)
    for (int u : g.neighbors(v)) adj_mask[v] |= uint32_t{1} << (u - 1);
  const uint32_t all = (n == 32) ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);
  const double cutoff = delta * n;
  for (uint32_t mask = 1; mask <= all; ++mask) {
    uint32_t nb = 0;
    for (uint32_t rest = mask; rest;) {
      int v = std::countr_zero(rest) + 1;
      rest &= rest - 1;
      nb |= adj_mask[v];
    }
    int sz = std::popcount(mask);
    int nb_sz = std::popcount(nb);
    bool ok = (sz <= cutoff) ? (nb_sz >= alpha * sz) : (nb == all);
    if (!ok) {
      std::vector<int> subset;
      for (int v = 1; v <= n; ++v)
        if (mask & (uint32_t{1} << (v - 1))) subset.push_back(v);
      return subset;
    }
  }
  return std::nullopt;
}

bool is_strong_expander(const Graph& g, double alpha, double delta) {
  return !find_expander_violation(g, alpha, delta).has_value();
}

namespace {

// Strips comments/whitespace; empty result means the line is skipped.
std::string clean_line(const std::string& raw) {
  std::string s = raw.substr(0, raw.find('#'));
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& tok, long long& out) {
  try {
    size_t pos = 0;
    out = std::stoll(tok, &pos);
    return pos == tok.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

Graph read_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  long long n = -1;
  std::optional<Graph> g;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok1, tok2, extra;
    ls >> tok1;
    bool has2 = static_cast<bool>(ls >> tok2);
    bool has3 = static_cast<bool>(ls >> extra);
    if (n < 0) {
      if (has2 || !parse_int(tok1, n) || n < 1)
        throw ParseError(line_no, "expected vertex count");
      g.emplace(static_cast<int>(n));
      continue;
    }
    long long u, v;
    if (!has2 || has3 || !parse_int(tok1, u) || !parse_int(tok2, v))
      throw ParseError(line_no, "expected edge line \"u v\"");
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError(line_no, "vertex out of range 1.." + std::to_string(n));
    if (u == v) throw ParseError(line_no, "self-loop");
    if (u > v) throw ParseError(line_no, "edges must be written with u < v");
    if (g->has_edge(static_cast<int>(u), static_cast<int>(v)))
      throw ParseError(line_no, "duplicate edge");
    g->add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (!g) throw ParseError(line_no + 1, "missing vertex count");
  return *g;
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

}  // namespace nashphase
