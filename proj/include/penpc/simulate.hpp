#pragma once

#include <Eigen/Dense>
#include <map>

#include "penpc/graph.hpp"
#include "penpc/rng.hpp"

namespace penpc {

// Observation matrix: one sample per row, one variable per column.
struct DataMatrix {
  Eigen::MatrixXd values;
  bool standardized = false;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index p() const { return values.cols(); }
};

// Linear Gaussian structural model x_j = sum_{k in pa(j)} b_jk x_k + eps_j
// with eps_j ~ N(0, noise_variance), one coefficient per DAG edge.
class SemSpec {
 public:
  SemSpec(DirectedGraph dag, std::map<Edge, double> coefficients,
          double noise_variance);

  // The benchmark default: every b_jk = 1, sigma^2 = 1.
  static SemSpec unit_weights(DirectedGraph dag);

  const DirectedGraph& dag() const { return dag_; }
  const std::map<Edge, double>& coefficients() const { return coefficients_; }
  double coefficient(int from, int to) const;
  double noise_variance() const { return noise_variance_; }

 private:
  DirectedGraph dag_;
  std::map<Edge, double> coefficients_;
  double noise_variance_;
};

// Draws n samples; variables are generated in topological order.
DataMatrix simulate_sem(const SemSpec& spec, int n, Rng& rng);

// Exact implied covariance (I-B)^{-1} D (I-B)^{-T} with B[to,from] = b and
// D = noise_variance * I. Symmetric positive definite.
Eigen::MatrixXd analytic_covariance(const SemSpec& spec);

// Centers each column and rescales to squared norm n (x'x = n). Errors on
// constant columns.
DataMatrix standardize(const DataMatrix& d);

}  // namespace penpc
