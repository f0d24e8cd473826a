#pragma once

#include <utility>
#include <vector>

#include "penpc/graph.hpp"

namespace penpc {

// Pairwise confusion counts over all unordered vertex pairs.
struct Confusion {
  long long tp = 0;
  long long fp = 0;
  long long tn = 0;
  long long fn = 0;

  long long total() const { return tp + fp + tn + fn; }
};

Confusion confusion(const UndirectedGraph& est, const UndirectedGraph& truth);

double tpr(const Confusion& c);  // tp / (tp + fn)
double fpr(const Confusion& c);  // fp / (fp + tn)
long long hamming(const Confusion& c);  // fp + fn

// Mean (fpr, tpr) per alpha across replicates, sorted by fpr (then tpr).
std::vector<std::pair<double, double>> roc_points(
    const std::vector<std::pair<double, Confusion>>& runs);

}  // namespace penpc
