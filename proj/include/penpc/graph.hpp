#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "penpc/rng.hpp"

namespace penpc {

// Ordered (from, to) for directed edges, canonical (min, max) for
// undirected edges. Vertex indices are 0-based everywhere.
using Edge = std::pair<int, int>;

bool is_acyclic(int p, const std::vector<Edge>& edges);

// Kahn ordering; nullopt when the edge set has a cycle.
std::optional<std::vector<int>> topological_order(int p,
                                                  const std::vector<Edge>& edges);

// Directed acyclic graph over vertices 0..p-1. Immutable after
// construction; construction rejects self-loops, duplicates, and cycles.
class DirectedGraph {
 public:
  DirectedGraph(int p, std::vector<Edge> edges);

  int vertex_count() const { return p_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }  // sorted
  bool has_edge(int from, int to) const;
  const std::vector<int>& parents(int v) const;   // sorted
  const std::vector<int>& children(int v) const;  // sorted
  const std::vector<int>& topo_order() const { return topo_; }

  bool operator==(const DirectedGraph& other) const {
    return p_ == other.p_ && edges_ == other.edges_;
  }

 private:
  int p_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<int> topo_;
};

// Undirected graph over vertices 0..p-1; every pair stored once in
// canonical (min, max) order. Immutable after construction.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int p);
  UndirectedGraph(int p, const std::vector<Edge>& edges);  // dedups

  int vertex_count() const { return p_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }  // sorted
  bool has_edge(int i, int j) const;
  const std::vector<int>& adjacency(int v) const;  // sorted

  bool operator==(const UndirectedGraph& other) const {
    return p_ == other.p_ && edges_ == other.edges_;
  }

 private:
  int p_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// Partially directed graph produced by orientation: some edges directed,
// the rest undirected; the two sets are disjoint as vertex pairs.
class Cpdag {
 public:
  Cpdag(int p, std::vector<Edge> directed, std::vector<Edge> undirected);

  int vertex_count() const { return p_; }
  const std::vector<Edge>& directed_edges() const { return directed_; }
  const std::vector<Edge>& undirected_edges() const { return undirected_; }
  UndirectedGraph skeleton() const;

  bool operator==(const Cpdag& other) const {
    return p_ == other.p_ && directed_ == other.directed_ &&
           undirected_ == other.undirected_;
  }

 private:
  int p_ = 0;
  std::vector<Edge> directed_;    // sorted (from, to)
  std::vector<Edge> undirected_;  // sorted canonical
};

// Erdos-Renyi DAG: edge i->j present with probability edge_prob for every
// i < j in the fixed vertex order.
DirectedGraph gen_er_dag(int p, double edge_prob, Rng& rng);

// Barabasi-Albert DAG: vertices added one at a time; each new vertex
// proposes edges_per_step targets among existing vertices with probability
// proportional to their current degree (uniform while all degrees are 0);
// duplicate proposals collapse; edges point new -> existing.
DirectedGraph gen_ba_dag(int p, int edges_per_step, Rng& rng);

UndirectedGraph skeleton_of(const DirectedGraph& g);

// Moral-graph structure: skeleton edges plus an edge between every pair of
// distinct vertices sharing at least one common child.
UndirectedGraph true_ggm_of(const DirectedGraph& g);

// True iff `cond` blocks every chain between i and j (reachability
// formulation; see tests for the chain-enumeration oracle).
bool d_separated(const DirectedGraph& g, int i, int j,
                 const std::vector<int>& cond);

// All vertices reachable from any member of `seed` in the subgraph with i,
// j, and their incident edges removed; includes `seed`, sorted.
std::vector<int> connected_to_set(const UndirectedGraph& g, int i, int j,
                                  const std::vector<int>& seed);

}  // namespace penpc
