#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "penpc/simulate.hpp"

namespace penpc {

// Correlation matrix together with the sample size backing it. A missing
// n_effective marks an analytic (population) matrix, which switches the
// independence test to exact-zero thresholding.
class CorrelationMatrix {
 public:
  CorrelationMatrix(Eigen::MatrixXd r, std::optional<int> n_effective);

  // R_ij = sigma_ij / sqrt(sigma_ii sigma_jj); population mode.
  static CorrelationMatrix from_covariance(const Eigen::MatrixXd& sigma);

  const Eigen::MatrixXd& values() const { return r_; }
  std::optional<int> n_effective() const { return n_; }
  bool population() const { return !n_.has_value(); }
  int p() const { return static_cast<int>(r_.rows()); }

 private:
  Eigen::MatrixXd r_;
  std::optional<int> n_;
};

// R = X'X / n on standardized data.
CorrelationMatrix sample_correlation(const DataMatrix& standardized);

// Partial correlation of i and j given K, via principal-submatrix
// inversion: -H_ij / sqrt(H_ii H_jj) with H = inverse(R[{i,j,K}]).
double partial_correlation(const CorrelationMatrix& r, int i, int j,
                           const std::vector<int>& cond);

// z = 0.5 log((1+rho)/(1-rho)); rho is clamped to +-(1 - 1e-12) first.
double fisher_z(double rho);

// Phi^{-1}: quantile of the standard normal (rational approximation,
// absolute error well below 1e-9).
double normal_quantile(double prob);

// True when independence of i and j given K is rejected. Sample mode uses
// the Fisher-z rule sqrt(n-|K|-3)|z| > Phi^{-1}(1-alpha/2); population mode
// declares dependence iff |rho| > 1e-10. Throws insufficient_sample when
// n - |K| - 3 < 1.
bool ci_test(const CorrelationMatrix& r, int i, int j,
             const std::vector<int>& cond, double alpha);

}  // namespace penpc
