#include "penpc/graph.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace penpc {

namespace {

void check_vertex(int v, int p, const char* what) {
  if (v < 0 || v >= p)
    throw std::invalid_argument(std::string(what) + " index " +
                                std::to_string(v) + " outside [0, " +
                                std::to_string(p) + ")");
}

}  // namespace

std::optional<std::vector<int>> topological_order(
    int p, const std::vector<Edge>& edges) {
  if (p < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::vector<int>> children(p);
  std::vector<int> indegree(p, 0);
  for (const auto& [from, to] : edges) {
    check_vertex(from, p, "edge");
    check_vertex(to, p, "edge");
    children[from].push_back(to);
    ++indegree[to];
  }
  // Min-heap keeps the order deterministic (lowest index first among ready
  // vertices), which simulate_sem relies on for reproducibility.
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < p; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(p);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != p) return std::nullopt;
  return order;
}

bool is_acyclic(int p, const std::vector<Edge>& edges) {
  return topological_order(p, edges).has_value();
}

DirectedGraph::DirectedGraph(int p, std::vector<Edge> edges) : p_(p) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& [from, to] = edges[k];
    check_vertex(from, p, "edge");
    check_vertex(to, p, "edge");
    if (from == to) throw std::invalid_argument("self-loop");
    if (k > 0 && edges[k] == edges[k - 1])
      throw std::invalid_argument("duplicate edge");
  }
  auto order = topological_order(p, edges);
  if (!order) throw std::invalid_argument("edge set has a cycle");
  topo_ = std::move(*order);
  edges_ = std::move(edges);
  parents_.resize(p);
  children_.resize(p);
  for (const auto& [from, to] : edges_) {
    children_[from].push_back(to);
    parents_[to].push_back(from);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  // children_ is already sorted because edges_ is sorted by (from, to).
}

bool DirectedGraph::has_edge(int from, int to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

const std::vector<int>& DirectedGraph::parents(int v) const {
  check_vertex(v, p_, "vertex");
  return parents_[v];
}

const std::vector<int>& DirectedGraph::children(int v) const {
  check_vertex(v, p_, "vertex");
  return children_[v];
}

UndirectedGraph::UndirectedGraph(int p) : p_(p), adj_(std::max(p, 0)) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
}

UndirectedGraph::UndirectedGraph(int p, const std::vector<Edge>& edges)
    : UndirectedGraph(p) {
  std::vector<Edge> canonical;
  canonical.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    check_vertex(a, p, "edge");
    check_vertex(b, p, "edge");
    if (a == b) throw std::invalid_argument("self-loop");
    canonical.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()),
                  canonical.end());
  edges_ = std::move(canonical);
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& v : adj_) std::sort(v.begin(), v.end());
}

bool UndirectedGraph::has_edge(int i, int j) const {
  return std::binary_search(edges_.begin(), edges_.end(),
                            Edge{std::min(i, j), std::max(i, j)});
}

const std::vector<int>& UndirectedGraph::adjacency(int v) const {
  check_vertex(v, p_, "vertex");
  return adj_[v];
}

Cpdag::Cpdag(int p, std::vector<Edge> directed, std::vector<Edge> undirected)
    : p_(p) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
  std::set<Edge> pairs;
  for (const auto& [from, to] : directed) {
    check_vertex(from, p, "edge");
    check_vertex(to, p, "edge");
    if (from == to) throw std::invalid_argument("self-loop");
    if (!pairs.emplace(std::min(from, to), std::max(from, to)).second)
      throw std::invalid_argument("duplicate vertex pair in cpdag");
  }
  std::vector<Edge> canonical;
  canonical.reserve(undirected.size());
  for (const auto& [a, b] : undirected) {
    check_vertex(a, p, "edge");
    check_vertex(b, p, "edge");
    if (a == b) throw std::invalid_argument("self-loop");
    Edge e{std::min(a, b), std::max(a, b)};
    if (!pairs.insert(e).second)
      throw std::invalid_argument("duplicate vertex pair in cpdag");
    canonical.push_back(e);
  }
  std::sort(directed.begin(), directed.end());
  std::sort(canonical.begin(), canonical.end());
  directed_ = std::move(directed);
  undirected_ = std::move(canonical);
}

UndirectedGraph Cpdag::skeleton() const {
  std::vector<Edge> edges = undirected_;
  edges.insert(edges.end(), directed_.begin(), directed_.end());
  return UndirectedGraph(p_, edges);
}

DirectedGraph gen_er_dag(int p, double edge_prob, Rng& rng) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("edge probability outside [0,1]");
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Edge> edges;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return DirectedGraph(p, std::move(edges));
}

DirectedGraph gen_ba_dag(int p, int edges_per_step, Rng& rng) {
  if (p < 1) throw std::invalid_argument("vertex count must be positive");
  if (edges_per_step < 1)
    throw std::invalid_argument("edges per step must be positive");
  std::vector<long long> degree(p, 0);
  std::vector<Edge> edges;
  for (int t = 1; t < p; ++t) {
    // Snapshot of pre-step degrees: all proposals within this step use it.
    std::vector<long long> cum(t);
    long long total = 0;
    for (int v = 0; v < t; ++v) {
      total += degree[v];
      cum[v] = total;
    }
    std::set<int> targets;
    for (int k = 0; k < edges_per_step; ++k) {
      int pick;
      if (total == 0) {
        pick = std::uniform_int_distribution<int>(0, t - 1)(rng);
      } else {
        double r = std::uniform_real_distribution<double>(
                       0.0, static_cast<double>(total))(rng);
        pick = static_cast<int>(
            std::lower_bound(cum.begin(), cum.end(),
                             static_cast<long long>(r) + 1) -
            cum.begin());
        if (pick >= t) pick = t - 1;
      }
      targets.insert(pick);
    }
    for (int v : targets) {
      edges.emplace_back(t, v);
      ++degree[t];
      ++degree[v];
    }
  }
  return DirectedGraph(p, std::move(edges));
}

UndirectedGraph skeleton_of(const DirectedGraph& g) {
  return UndirectedGraph(g.vertex_count(), g.edges());
}

UndirectedGraph true_ggm_of(const DirectedGraph& g) {
  std::vector<Edge> edges = g.edges();
  for (int child = 0; child < g.vertex_count(); ++child) {
    const auto& pa = g.parents(child);
    for (std::size_t a = 0; a < pa.size(); ++a)
      for (std::size_t b = a + 1; b < pa.size(); ++b)
        edges.emplace_back(pa[a], pa[b]);
  }
  return UndirectedGraph(g.vertex_count(), edges);
}

bool d_separated(const DirectedGraph& g, int i, int j,
                 const std::vector<int>& cond) {
  const int p = g.vertex_count();
  check_vertex(i, p, "vertex");
  check_vertex(j, p, "vertex");
  if (i == j) throw std::invalid_argument("i and j must differ");
  std::vector<char> in_cond(p, 0);
  for (int v : cond) {
    check_vertex(v, p, "conditioning vertex");
    if (v == i || v == j)
      throw std::invalid_argument("conditioning set contains an endpoint");
    in_cond[v] = 1;
  }

  // Ancestors of the conditioning set (including it): colliders relay a
  // trail exactly when they lie in this set.
  std::vector<char> anc(p, 0);
  std::queue<int> frontier;
  for (int v = 0; v < p; ++v)
    if (in_cond[v]) {
      anc[v] = 1;
      frontier.push(v);
    }
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int pa : g.parents(v))
      if (!anc[pa]) {
        anc[pa] = 1;
        frontier.push(pa);
      }
  }

  // Reachability over (vertex, arrival direction) states; arrival "up"
  // means the trail entered v from a child, "down" from a parent.
  constexpr int kUp = 0, kDown = 1;
  std::vector<std::array<char, 2>> seen(p, {0, 0});
  std::queue<std::pair<int, int>> active;
  active.emplace(i, kUp);
  while (!active.empty()) {
    auto [v, dir] = active.front();
    active.pop();
    if (seen[v][dir]) continue;
    seen[v][dir] = 1;
    if (v == j) return false;  // an active trail reaches j
    if (dir == kUp) {
      if (!in_cond[v]) {
        for (int pa : g.parents(v)) active.emplace(pa, kUp);
        for (int ch : g.children(v)) active.emplace(ch, kDown);
      }
    } else {
      if (!in_cond[v])
        for (int ch : g.children(v)) active.emplace(ch, kDown);
      if (anc[v])
        for (int pa : g.parents(v)) active.emplace(pa, kUp);
    }
  }
  return true;
}

std::vector<int> connected_to_set(const UndirectedGraph& g, int i, int j,
                                  const std::vector<int>& seed) {
  const int p = g.vertex_count();
  check_vertex(i, p, "vertex");
  check_vertex(j, p, "vertex");
  if (i == j) throw std::invalid_argument("i and j must differ");
  std::vector<char> visited(p, 0);
  std::queue<int> frontier;
  for (int v : seed) {
    check_vertex(v, p, "seed vertex");
    if (v == i || v == j)
      throw std::invalid_argument("seed set contains an excluded vertex");
    if (!visited[v]) {
      visited[v] = 1;
      frontier.push(v);
    }
  }
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : g.adjacency(v)) {
      if (w == i || w == j || visited[w]) continue;
      visited[w] = 1;
      frontier.push(w);
    }
  }
  std::vector<int> out;
  for (int v = 0; v < p; ++v)
    if (visited[v]) out.push_back(v);
  return out;
}

}  // namespace penpc
