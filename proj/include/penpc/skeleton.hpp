#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "penpc/citest.hpp"
#include "penpc/graph.hpp"

namespace penpc {

// Separation sets keyed by unordered vertex pair. Pairs whose set is "all
// remaining vertices" (the convention for pairs absent from the input GGM)
// are stored as one bit each and materialized on lookup, so large sparse
// problems do not hold p-2 indices per non-edge.
class SepSetMap {
 public:
  explicit SepSetMap(int p);

  int vertex_count() const { return p_; }
  std::size_t size() const { return explicit_.size() + full_count_; }

  void set(int i, int j, std::vector<int> sep);
  void set_full_complement(int i, int j);

  bool contains(int i, int j) const;
  std::optional<std::vector<int>> find(int i, int j) const;

  // Visits recorded pairs in lexicographic (i, j) order.
  void for_each(
      const std::function<void(int, int, const std::vector<int>&)>& fn) const;

 private:
  std::size_t tri_index(int i, int j) const;

  int p_ = 0;
  std::map<Edge, std::vector<int>> explicit_;
  std::vector<char> full_;
  std::size_t full_count_ = 0;
};

// For a pair (i, j) on a working graph: A = (adj(i) u adj(j)) \ {i,j},
// B = (adj(i) n adj(j)) \ {i,j}, C = A n (B u Con^{(i,j)}(B)).
struct CandidateSets {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> c;
};

CandidateSets candidate_sets(const UndirectedGraph& g, int i, int j);

// All K = A \ Gamma for Gamma subseteq C with |Gamma| = level, in
// lexicographic order of Gamma; empty when level > |C|.
std::vector<std::vector<int>> candidate_conditioning_sets(
    const CandidateSets& cs, int level);

struct SkeletonResult {
  UndirectedGraph skeleton;
  SepSetMap sepsets;
  long long tests_run = 0;
  long long skipped_sets = 0;  // conditioning sets too large for the sample
  int levels_completed = 0;
};

// Step 2: marginal screen of every GGM edge, then level-wise tests with
// conditioning sets restricted to the Pi family of the frozen per-level
// snapshot. Pairs not adjacent in the input GGM get full-complement
// separation sets. max_level < 0 means no cap (natural termination).
SkeletonResult modified_pc_stable(const UndirectedGraph& ggm,
                                  const CorrelationMatrix& r, double alpha,
                                  int max_level = -1);

// Baseline PC-stable from the complete graph; per-level frozen adjacency
// snapshots. max_level < 0 defaults to p - 2.
SkeletonResult pc_stable(const CorrelationMatrix& r, double alpha,
                         int max_level = -1);

struct OrientResult {
  Cpdag cpdag;
  int conflict_count = 0;  // edges demanded in both directions
};

// V-structures (i -> k <- j for common neighbors k not in S(i,j)) followed
// by orientation rules 1-3 applied to a fixpoint. Conflicting v-structure
// demands leave the edge undirected and are counted.
OrientResult orient_cpdag(const UndirectedGraph& skel, const SepSetMap& seps);

}  // namespace penpc
