#include "penpc/eval.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "penpc/errors.hpp"

namespace penpc {

Confusion confusion(const UndirectedGraph& est, const UndirectedGraph& truth) {
  if (est.vertex_count() != truth.vertex_count())
    throw std::invalid_argument("graphs have different vertex counts");
  const int p = est.vertex_count();
  Confusion c;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const bool in_est = est.has_edge(i, j);
      const bool in_truth = truth.has_edge(i, j);
      if (in_est && in_truth)
        ++c.tp;
      else if (in_est)
        ++c.fp;
      else if (in_truth)
        ++c.fn;
      else
        ++c.tn;
    }
  }
  return c;
}

double tpr(const Confusion& c) {
  if (c.tp + c.fn <= 0)
    throw numeric_error("tpr undefined: no true edges");
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double fpr(const Confusion& c) {
  if (c.fp + c.tn <= 0)
    throw numeric_error("fpr undefined: no true non-edges");
  return static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
}

long long hamming(const Confusion& c) { return c.fp + c.fn; }

std::vector<std::pair<double, double>> roc_points(
    const std::vector<std::pair<double, Confusion>>& runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to aggregate");
  std::map<double, std::pair<std::pair<double, double>, long long>> groups;
  for (const auto& [alpha, c] : runs) {
    auto& [sums, count] = groups[alpha];
    sums.first += fpr(c);
    sums.second += tpr(c);
    ++count;
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(groups.size());
  for (const auto& [alpha, entry] : groups) {
    const auto& [sums, count] = entry;
    points.emplace_back(sums.first / static_cast<double>(count),
                        sums.second / static_cast<double>(count));
  }
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace penpc
