#include "penpc/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "penpc/errors.hpp"

namespace penpc {

SemSpec::SemSpec(DirectedGraph dag, std::map<Edge, double> coefficients,
                 double noise_variance)
    : dag_(std::move(dag)),
      coefficients_(std::move(coefficients)),
      noise_variance_(noise_variance) {
  if (!(noise_variance_ > 0.0))
    throw std::invalid_argument("noise variance must be positive");
  if (coefficients_.size() != dag_.edges().size())
    throw std::invalid_argument("one coefficient per DAG edge required");
  for (const auto& [edge, b] : coefficients_) {
    if (!dag_.has_edge(edge.first, edge.second))
      throw std::invalid_argument("coefficient for a non-edge");
    if (!std::isfinite(b))
      throw std::invalid_argument("non-finite coefficient");
  }
}

SemSpec SemSpec::unit_weights(DirectedGraph dag) {
  std::map<Edge, double> coef;
  for (const Edge& e : dag.edges()) coef[e] = 1.0;
  return SemSpec(std::move(dag), std::move(coef), 1.0);
}

double SemSpec::coefficient(int from, int to) const {
  auto it = coefficients_.find({from, to});
  if (it == coefficients_.end())
    throw std::invalid_argument("no such edge: " + std::to_string(from) +
                                "->" + std::to_string(to));
  return it->second;
}

DataMatrix simulate_sem(const SemSpec& spec, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  const DirectedGraph& g = spec.dag();
  const int p = g.vertex_count();
  const double sd = std::sqrt(spec.noise_variance());
  std::normal_distribution<double> gauss(0.0, 1.0);

  DataMatrix d;
  d.values.resize(n, p);
  for (int j : g.topo_order()) {
    auto col = d.values.col(j);
    for (int r = 0; r < n; ++r) col(r) = sd * gauss(rng);
    for (int k : g.parents(j)) col += spec.coefficient(k, j) * d.values.col(k);
  }
  return d;
}

Eigen::MatrixXd analytic_covariance(const SemSpec& spec) {
  const int p = spec.dag().vertex_count();
  Eigen::MatrixXd eye_minus_b = Eigen::MatrixXd::Identity(p, p);
  for (const auto& [edge, b] : spec.coefficients())
    eye_minus_b(edge.second, edge.first) = -b;
  // I - B is a permuted triangular matrix, always invertible for a DAG.
  Eigen::MatrixXd m = eye_minus_b.partialPivLu().solve(
      Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd sigma = spec.noise_variance() * m * m.transpose();
  return ((sigma + sigma.transpose()) / 2.0).eval();
}

DataMatrix standardize(const DataMatrix& d) {
  const Eigen::Index n = d.n();
  if (n < 2) throw std::invalid_argument("need at least two samples");
  DataMatrix out;
  out.values = d.values;
  for (Eigen::Index j = 0; j < d.p(); ++j) {
    auto col = out.values.col(j);
    col.array() -= col.mean();
    double ss = col.squaredNorm();
    if (!(ss > 0.0) || !std::isfinite(ss))
      throw numeric_error("constant column " + std::to_string(j) +
                          " cannot be standardized");
    col *= std::sqrt(static_cast<double>(n) / ss);
  }
  out.standardized = true;
  return out;
}

}  // namespace penpc
