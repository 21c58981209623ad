#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nashphase {

// Unordered edge in canonical form: first < second.
using Edge = std::pair<int, int>;

// Undirected simple graph on vertices 1..n. Built once, then treated as
// immutable; safe to share across threads.
class Graph {
 public:
  explicit Graph(int n);

  // Inserts (u,v) in canonical form. Rejects self-loops, out-of-range
  // vertices and duplicates.
  void add_edge(int u, int v);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;  // sorted ascending
  const std::vector<Edge>& edges() const { return edges_; }  // canonical order
  bool has_edge(int u, int v) const;

  // Bit (k-1) set for every neighbor k of v. Only valid for n <= 64.
  uint64_t neighbor_mask(int v) const;

  bool operator==(const Graph& other) const;

 private:
  void check_vertex(int v) const;

  int n_;
  std::vector<std::vector<int>> adj_;  // index 0 unused
  std::vector<Edge> edges_;
};

struct GnpParams {
  int n = 1;
  double p = 0.0;
  uint64_t seed = 0;
};

// G(n,p): each of the C(n,2) pairs present independently with probability p.
// Identical params give an identical graph.
Graph gen_gnp(const GnpParams& params);

Graph gen_complete(int n);
Graph gen_empty(int n);
Graph gen_path(int n);           // edges (i, i+1)
Graph gen_grid(int rows, int cols);  // row-major ids, 4-neighborhoods

// Edges whose endpoints both have degree <= d, in canonical order.
std::vector<Edge> d_bounded_edges(const Graph& g, int d);

// Per-edge certificate weight -log(1 - p_uv) with p_uv = 8^(-2^(du+dv-2)).
// Evaluated via log1p so the astronomically small p of high-degree edges
// degrades to w ~ p instead of garbage.
double edge_witness_weight(int deg_u, int deg_v);

struct WeightedMatching {
  std::vector<Edge> edges;  // pairwise vertex-disjoint
  double total_weight = 0.0;
};

// Greedy maximal matching: edges taken by descending witness weight, ties
// broken by canonical edge order. Not a maximum-weight matching; the bound
// it feeds holds for any independent edge set.
WeightedMatching weighted_independent_edge_set(const Graph& g);

// Partition of 1..n into maximal connected sets. Each part sorted, parts
// ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Vertices adjacent to at least one member of vset. A member appears only
// if it has a neighbor inside vset.
std::vector<int> neighborhood(const Graph& g, const std::vector<int>& vset);

// Exhaustive strong (alpha,delta)-expander check over every nonempty
// vertex subset. Hard cap n <= 24; this is a decision procedure, there is
// no sampling fallback.
bool is_strong_expander(const Graph& g, double alpha, double delta);

// First subset violating the expander condition, or nullopt when g passes.
std::optional<std::vector<int>> find_expander_violation(const Graph& g,
                                                        double alpha,
                                                        double delta);

// Text format: first line n; then one "u v" per edge with 1 <= u < v <= n;
// '#' starts a comment; blank lines ignored; duplicates rejected.
Graph read_graph(const std::string& text);
std::string write_graph(const Graph& g);

}  // namespace nashphase
