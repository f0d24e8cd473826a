#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>

namespace oracles {

namespace {

std::vector<char> descendant_mask(const penpc::DirectedGraph& g, int v) {
  std::vector<char> mask(g.vertex_count(), 0);
  std::queue<int> frontier;
  mask[v] = 1;
  frontier.push(v);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int c : g.children(u))
      if (!mask[c]) {
        mask[c] = 1;
        frontier.push(c);
      }
  }
  return mask;
}

// One undirected chain is active iff every interior vertex passes its rule.
bool chain_active(const penpc::DirectedGraph& g,
                  const std::vector<int>& chain,
                  const std::vector<char>& in_cond,
                  const std::vector<std::vector<char>>& desc) {
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
    const int prev = chain[k - 1];
    const int v = chain[k];
    const int next = chain[k + 1];
    const bool collider = g.has_edge(prev, v) && g.has_edge(next, v);
    if (collider) {
      bool opened = false;
      for (int z = 0; z < g.vertex_count(); ++z)
        if (in_cond[z] && desc[v][z]) {
          opened = true;
          break;
        }
      if (!opened) return false;
    } else if (in_cond[v]) {
      return false;
    }
  }
  return true;
}

bool any_active_chain(const penpc::DirectedGraph& g, int i, int j,
                      const std::vector<char>& in_cond,
                      const std::vector<std::vector<char>>& desc,
                      std::vector<int>& chain, std::vector<char>& used) {
  const int v = chain.back();
  if (v == j) return chain_active(g, chain, in_cond, desc);
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (used[w]) continue;
    if (!g.has_edge(v, w) && !g.has_edge(w, v)) continue;
    used[w] = 1;
    chain.push_back(w);
    if (any_active_chain(g, i, j, in_cond, desc, chain, used)) return true;
    chain.pop_back();
    used[w] = 0;
  }
  return false;
}

}  // namespace

bool d_separated_by_chains(const penpc::DirectedGraph& g, int i, int j,
                           const std::vector<int>& cond) {
  const int p = g.vertex_count();
  std::vector<char> in_cond(p, 0);
  for (int z : cond) in_cond[z] = 1;
  std::vector<std::vector<char>> desc(p);
  for (int v = 0; v < p; ++v) desc[v] = descendant_mask(g, v);
  std::vector<int> chain{i};
  std::vector<char> used(p, 0);
  used[i] = 1;
  return !any_active_chain(g, i, j, in_cond, desc, chain, used);
}

double univariate_grid_min(double z, double lambda, double tau) {
  auto objective = [&](double b) {
    return 0.5 * (b - z) * (b - z) + lambda * std::log(std::abs(b) + tau);
  };
  double lo = -std::abs(z) - 1.0;
  double hi = std::abs(z) + 1.0;
  double best_b = 0.0;
  double best_val = objective(0.0);
  constexpr int kPoints = 2001;
  for (int round = 0; round < 12; ++round) {
    const double step = (hi - lo) / (kPoints - 1);
    double round_b = lo;
    double round_val = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kPoints; ++k) {
      const double b = lo + step * k;
      const double val = objective(b);
      if (val < round_val) {
        round_val = val;
        round_b = b;
      }
    }
    if (round_val < best_val) {
      best_val = round_val;
      best_b = round_b;
    }
    lo = round_b - 2.0 * step;
    hi = round_b + 2.0 * step;
  }
  return best_val <= objective(0.0) ? best_b : 0.0;
}

penpc::SemSpec generic_spec(const penpc::DirectedGraph& dag, penpc::Rng& rng,
                            double noise_variance) {
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);
  std::bernoulli_distribution flip(0.5);
  std::map<penpc::Edge, double> weights;
  for (const penpc::Edge& e : dag.edges()) {
    double w = magnitude(rng);
    if (flip(rng)) w = -w;
    weights[e] = w;
  }
  return penpc::SemSpec(dag, std::move(weights), noise_variance);
}

}  // namespace oracles
