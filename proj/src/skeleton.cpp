#include "penpc/skeleton.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "penpc/errors.hpp"

namespace penpc {

namespace {

void check_pair(int i, int j, int p) {
  if (i < 0 || i >= p || j < 0 || j >= p)
    throw std::invalid_argument("vertex index outside [0, " +
                                std::to_string(p) + ")");
  if (i == j) throw std::invalid_argument("i and j must differ");
}

}  // namespace

SepSetMap::SepSetMap(int p) : p_(p) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
  full_.assign(static_cast<std::size_t>(p) * (p - 1) / 2, 0);
}

std::size_t SepSetMap::tri_index(int i, int j) const {
  // i < j assumed; row-major upper triangle.
  return static_cast<std::size_t>(i) * p_ -
         static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

void SepSetMap::set(int i, int j, std::vector<int> sep) {
  check_pair(i, j, p_);
  if (i > j) std::swap(i, j);
  std::sort(sep.begin(), sep.end());
  sep.erase(std::unique(sep.begin(), sep.end()), sep.end());
  for (int v : sep) {
    if (v < 0 || v >= p_)
      throw std::invalid_argument("separation vertex outside range");
    if (v == i || v == j)
      throw std::invalid_argument("separation set contains an endpoint");
  }
  if (static_cast<int>(sep.size()) == p_ - 2) {
    set_full_complement(i, j);
    return;
  }
  std::size_t t = tri_index(i, j);
  if (full_[t]) {
    full_[t] = 0;
    --full_count_;
  }
  explicit_[{i, j}] = std::move(sep);
}

void SepSetMap::set_full_complement(int i, int j) {
  check_pair(i, j, p_);
  if (i > j) std::swap(i, j);
  explicit_.erase({i, j});
  std::size_t t = tri_index(i, j);
  if (!full_[t]) {
    full_[t] = 1;
    ++full_count_;
  }
}

bool SepSetMap::contains(int i, int j) const {
  check_pair(i, j, p_);
  if (i > j) std::swap(i, j);
  return full_[tri_index(i, j)] || explicit_.count({i, j}) > 0;
}

std::optional<std::vector<int>> SepSetMap::find(int i, int j) const {
  check_pair(i, j, p_);
  if (i > j) std::swap(i, j);
  if (full_[tri_index(i, j)]) {
    std::vector<int> sep;
    sep.reserve(p_ - 2);
    for (int v = 0; v < p_; ++v)
      if (v != i && v != j) sep.push_back(v);
    return sep;
  }
  auto it = explicit_.find({i, j});
  if (it == explicit_.end()) return std::nullopt;
  return it->second;
}

void SepSetMap::for_each(
    const std::function<void(int, int, const std::vector<int>&)>& fn) const {
  auto it = explicit_.begin();
  for (int i = 0; i < p_; ++i) {
    for (int j = i + 1; j < p_; ++j) {
      if (full_[tri_index(i, j)]) {
        std::vector<int> sep;
        sep.reserve(p_ - 2);
        for (int v = 0; v < p_; ++v)
          if (v != i && v != j) sep.push_back(v);
        fn(i, j, sep);
      } else if (it != explicit_.end() && it->first == Edge{i, j}) {
        fn(i, j, it->second);
      }
      if (it != explicit_.end() && it->first == Edge{i, j}) ++it;
    }
  }
}

CandidateSets candidate_sets(const UndirectedGraph& g, int i, int j) {
  check_pair(i, j, g.vertex_count());
  const auto& ni = g.adjacency(i);
  const auto& nj = g.adjacency(j);
  CandidateSets cs;
  std::set_union(ni.begin(), ni.end(), nj.begin(), nj.end(),
                 std::back_inserter(cs.a));
  std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                        std::back_inserter(cs.b));
  auto drop_endpoints = [&](std::vector<int>& v) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](int x) { return x == i || x == j; }),
            v.end());
  };
  drop_endpoints(cs.a);
  drop_endpoints(cs.b);
  if (!cs.b.empty()) {
    std::vector<int> con = connected_to_set(g, i, j, cs.b);  // includes B
    std::set_intersection(cs.a.begin(), cs.a.end(), con.begin(), con.end(),
                          std::back_inserter(cs.c));
  }
  return cs;
}

std::vector<std::vector<int>> candidate_conditioning_sets(
    const CandidateSets& cs, int level) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  const int m = static_cast<int>(cs.c.size());
  std::vector<std::vector<int>> out;
  if (level > m) return out;

  std::vector<int> pick(level);
  for (int k = 0; k < level; ++k) pick[k] = k;
  while (true) {
    std::vector<int> k_set;
    k_set.reserve(cs.a.size());
    {
      // A \ Gamma with Gamma = { c[pick[0]], ..., c[pick[level-1]] }.
      std::size_t g = 0;
      for (int v : cs.a) {
        if (g < pick.size() && v == cs.c[pick[g]]) {
          ++g;
          continue;
        }
        k_set.push_back(v);
      }
    }
    out.push_back(std::move(k_set));
    // Next combination in lexicographic order.
    int k = level - 1;
    while (k >= 0 && pick[k] == m - level + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int t = k + 1; t < level; ++t) pick[t] = pick[t - 1] + 1;
  }
  return out;
}

namespace {

struct WorkingGraph {
  explicit WorkingGraph(const UndirectedGraph& g)
      : p(g.vertex_count()), adj(p) {
    for (const auto& [a, b] : g.edges()) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }
  explicit WorkingGraph(int p_complete) : p(p_complete), adj(p) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j) adj[i].insert(j);
  }
  void remove(int i, int j) {
    adj[i].erase(j);
    adj[j].erase(i);
  }
  UndirectedGraph freeze() const {
    std::vector<Edge> edges;
    for (int i = 0; i < p; ++i)
      for (int j : adj[i])
        if (j > i) edges.emplace_back(i, j);
    return UndirectedGraph(p, edges);
  }
  int p;
  std::vector<std::set<int>> adj;
};

}  // namespace

SkeletonResult modified_pc_stable(const UndirectedGraph& ggm,
                                  const CorrelationMatrix& r, double alpha,
                                  int max_level) {
  const int p = ggm.vertex_count();
  if (p != r.p())
    throw std::invalid_argument("graph and correlation sizes differ");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");

  SkeletonResult res{UndirectedGraph(p), SepSetMap(p), 0, 0, 0};
  // Convention for pairs never adjacent in the GGM: separated by all
  // remaining variables.
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (!ggm.has_edge(i, j)) res.sepsets.set_full_complement(i, j);

  WorkingGraph work(ggm);

  // Marginal screen of every GGM edge.
  static const std::vector<int> kEmpty;
  for (const auto& [i, j] : ggm.edges()) {
    try {
      const bool dependent = ci_test(r, i, j, kEmpty, alpha);
      ++res.tests_run;
      if (!dependent) {
        work.remove(i, j);
        res.sepsets.set(i, j, {});
      }
    } catch (const insufficient_sample&) {
      ++res.skipped_sets;
    }
  }

  std::vector<int> cond;
  for (int level = 0; max_level < 0 || level <= max_level; ++level) {
    const UndirectedGraph snapshot = work.freeze();
    bool any_eligible = false;
    for (const auto& [i, j] : snapshot.edges()) {
      const CandidateSets cs = candidate_sets(snapshot, i, j);
      const int m = static_cast<int>(cs.c.size());
      if (m < level) continue;
      any_eligible = true;
      // Gamma runs over level-sized subsets of C in lexicographic order;
      // test K = A \ Gamma, deleting on the first independent verdict.
      std::vector<int> pick(level);
      for (int k = 0; k < level; ++k) pick[k] = k;
      bool removed = false;
      while (!removed) {
        cond.clear();
        {
          std::size_t g = 0;
          for (int v : cs.a) {
            if (g < pick.size() && v == cs.c[pick[g]]) {
              ++g;
              continue;
            }
            cond.push_back(v);
          }
        }
        bool tested = true;
        bool dependent = true;
        try {
          dependent = ci_test(r, i, j, cond, alpha);
        } catch (const insufficient_sample&) {
          ++res.skipped_sets;
          tested = false;
        }
        if (tested) {
          ++res.tests_run;
          if (!dependent) {
            work.remove(i, j);
            res.sepsets.set(i, j, cond);
            removed = true;
            break;
          }
        }
        int k = level - 1;
        while (k >= 0 && pick[k] == m - level + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int t = k + 1; t < level; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
    if (!any_eligible) break;
    res.levels_completed = level + 1;
  }

  res.skeleton = work.freeze();
  return res;
}

SkeletonResult pc_stable(const CorrelationMatrix& r, double alpha,
                         int max_level) {
  const int p = r.p();
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (max_level < 0) max_level = std::max(p - 2, 0);

  SkeletonResult res{UndirectedGraph(p), SepSetMap(p), 0, 0, 0};
  WorkingGraph work(p);

  std::vector<int> side;
  std::vector<int> cond;
  for (int level = 0; level <= max_level; ++level) {
    const UndirectedGraph snapshot = work.freeze();
    bool any_eligible = false;
    for (const auto& [i, j] : snapshot.edges()) {
      bool removed = false;
      // Both endpoint sides, i first; j-side sets already enumerable from
      // the i side are skipped.
      const auto& adj_i = snapshot.adjacency(i);
      std::vector<int> side_i;
      std::copy_if(adj_i.begin(), adj_i.end(), std::back_inserter(side_i),
                   [j](int v) { return v != j; });
      for (int endpoint = 0; endpoint < 2 && !removed; ++endpoint) {
        side.clear();
        if (endpoint == 0) {
          side = side_i;
        } else {
          const auto& adj_j = snapshot.adjacency(j);
          std::copy_if(adj_j.begin(), adj_j.end(), std::back_inserter(side),
                       [i](int v) { return v != i; });
        }
        const int m = static_cast<int>(side.size());
        if (m < level) continue;
        any_eligible = true;
        std::vector<int> pick(level);
        for (int k = 0; k < level; ++k) pick[k] = k;
        while (!removed) {
          cond.clear();
          for (int k : pick) cond.push_back(side[k]);
          const bool duplicate =
              endpoint == 1 && std::includes(side_i.begin(), side_i.end(),
                                             cond.begin(), cond.end());
          if (!duplicate) {
            bool dependent = true;
            bool counted = true;
            try {
              dependent = ci_test(r, i, j, cond, alpha);
            } catch (const insufficient_sample&) {
              ++res.skipped_sets;
              counted = false;
            }
            if (counted) {
              ++res.tests_run;
              if (!dependent) {
                work.remove(i, j);
                res.sepsets.set(i, j, cond);
                removed = true;
                break;
              }
            }
          }
          int k = level - 1;
          while (k >= 0 && pick[k] == m - level + k) --k;
          if (k < 0) break;
          ++pick[k];
          for (int t = k + 1; t < level; ++t) pick[t] = pick[t - 1] + 1;
        }
      }
    }
    if (!any_eligible) break;
    res.levels_completed = level + 1;
  }

  res.skeleton = work.freeze();
  return res;
}

namespace {

struct MixedGraph {
  explicit MixedGraph(const UndirectedGraph& skel)
      : p(skel.vertex_count()), undirected(skel.edges().begin(),
                                           skel.edges().end()) {}

  bool adjacent(int a, int b) const {
    Edge c{std::min(a, b), std::max(a, b)};
    return undirected.count(c) > 0 || directed.count({a, b}) > 0 ||
           directed.count({b, a}) > 0;
  }
  bool has_directed(int from, int to) const {
    return directed.count({from, to}) > 0;
  }
  bool has_undirected(int a, int b) const {
    return undirected.count({std::min(a, b), std::max(a, b)}) > 0;
  }
  void orient(int from, int to) {
    undirected.erase({std::min(from, to), std::max(from, to)});
    directed.insert({from, to});
  }

  int p;
  std::set<Edge> undirected;
  std::set<Edge> directed;
};

}  // namespace

OrientResult orient_cpdag(const UndirectedGraph& skel, const SepSetMap& seps) {
  const int p = skel.vertex_count();
  if (seps.vertex_count() != p)
    throw std::invalid_argument("skeleton and sepset sizes differ");
  MixedGraph g(skel);

  // V-structure demands: arrowheads at common neighbors outside S(i,j).
  std::set<Edge> demands;
  for (int k = 0; k < p; ++k) {
    const auto& nbrs = skel.adjacency(k);
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        const int i = nbrs[a];
        const int j = nbrs[b];
        if (skel.has_edge(i, j)) continue;
        auto sep = seps.find(i, j);
        if (!sep) continue;
        if (!std::binary_search(sep->begin(), sep->end(), k)) {
          demands.insert({i, k});
          demands.insert({j, k});
        }
      }
    }
  }

  OrientResult res{Cpdag(p, {}, {}), 0};
  for (const auto& [from, to] : demands) {
    if (demands.count({to, from}) > 0) {
      if (from < to) ++res.conflict_count;  // count each pair once
      continue;
    }
    g.orient(from, to);
  }

  // Orientation rules to a fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Edge> pending(g.undirected.begin(), g.undirected.end());
    for (const auto& [a, b] : pending) {
      if (!g.has_undirected(a, b)) continue;  // oriented earlier this pass
      int oriented = 0;  // 0 none, 1 a->b, 2 b->a
      for (int dir = 0; dir < 2 && !oriented; ++dir) {
        const int x = dir == 0 ? a : b;
        const int y = dir == 0 ? b : a;
        // Rule 1: some i -> x with i, y nonadjacent gives x -> y.
        for (const auto& [i, t] : g.directed) {
          if (t != x) continue;
          if (!g.adjacent(i, y) && i != y) {
            oriented = dir == 0 ? 1 : 2;
            break;
          }
        }
        if (oriented) break;
        // Rule 2: a chain x -> k -> y gives x -> y.
        for (int k = 0; k < g.p && !oriented; ++k)
          if (g.has_directed(x, k) && g.has_directed(k, y))
            oriented = dir == 0 ? 1 : 2;
        if (oriented) break;
        // Rule 3: chains x - k -> y and x - l -> y with k, l nonadjacent.
        std::vector<int> mids;
        for (int k = 0; k < g.p; ++k)
          if (g.has_undirected(x, k) && g.has_directed(k, y))
            mids.push_back(k);
        for (std::size_t s = 0; s < mids.size() && !oriented; ++s)
          for (std::size_t t = s + 1; t < mids.size() && !oriented; ++t)
            if (!g.adjacent(mids[s], mids[t]))
              oriented = dir == 0 ? 1 : 2;
      }
      if (oriented == 1) {
        g.orient(a, b);
        changed = true;
      } else if (oriented == 2) {
        g.orient(b, a);
        changed = true;
      }
    }
  }

  res.cpdag = Cpdag(p, {g.directed.begin(), g.directed.end()},
                    {g.undirected.begin(), g.undirected.end()});
  return res;
}

}  // namespace penpc
