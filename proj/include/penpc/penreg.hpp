#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "penpc/graph.hpp"
#include "penpc/simulate.hpp"

namespace penpc {

// Log-penalty tuning pair: p(|b|; lambda, tau) = lambda * log(|b| + tau).
struct PenaltyParams {
  double lambda = 0.0;
  double tau = 1.0;
};

struct RegressionFit {
  Eigen::VectorXd coefficients;  // length q
  std::vector<int> support;      // indices with nonzero coefficient, sorted
  double rss = 0.0;
  PenaltyParams params;
  double ebic = std::numeric_limits<double>::quiet_NaN();
  int sweeps = 0;
  bool converged = false;
};

struct PenregConfig {
  double gamma = 1.0;            // EBIC weight
  int lambda_grid_size = 100;    // log-spaced from lambda_max downward
  double lambda_min_ratio = 1e-3;
  int tau_grid_size = 10;        // log-spaced over [tau_min, tau_max]
  double tau_min = 1e-4;
  double tau_max = 1.0;
  double tol = 1e-6;             // max absolute coefficient change
  int max_iter = 1000;           // sweep budget per fit
  int threads = 0;               // <= 0: hardware concurrency
};

double log_penalty(double t, const PenaltyParams& p);
double log_penalty_deriv(double t, const PenaltyParams& p);

// n*log(rss/n) + support_size*(log n + 2*gamma*log q). Errors on rss <= 0.
double ebic(double rss, int support_size, int n, int q, double gamma);

// Minimizes 0.5*||y - X b||^2 + n * sum_j lambda*log(|b_j| + tau) by cyclic
// coordinate descent with exact univariate updates. Columns of X must be
// standardized (x_j'x_j = n). When `objective_trace` is given, the
// objective value is appended once before the first sweep and once after
// every sweep. The `ebic` field of the result is left NaN (no gamma here).
RegressionFit coord_descent(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                            const PenaltyParams& params,
                            const Eigen::VectorXd& init, double tol,
                            int max_iter,
                            std::vector<double>* objective_trace = nullptr);

// Covariance-form solver over gram = X'X, xty = X'y, yty = y'y; the data
// matrix itself is never touched, so population problems (gram built from
// n * Sigma) run through the same code path.
RegressionFit coord_descent_cov(const Eigen::MatrixXd& gram,
                                const Eigen::VectorXd& xty, double yty, int n,
                                const PenaltyParams& params,
                                const Eigen::VectorXd& init, double tol,
                                int max_iter,
                                std::vector<double>* objective_trace = nullptr);

// Smallest lambda whose solution from a zero start is all-zero at penalty
// shape tau (per-coordinate bisection; lambda_max = max over coordinates).
double lambda_max_for(const Eigen::VectorXd& xty, int n, double tau);

// 100 (by default) log-spaced values from lambda_max down to
// lambda_max * lambda_min_ratio.
std::vector<double> make_lambda_grid(const Eigen::VectorXd& xty, int n,
                                     const PenregConfig& config);

// 10 (by default) log-spaced values over [tau_min, tau_max], ascending.
std::vector<double> make_tau_grid(const PenregConfig& config);

// Fits every (lambda, tau) pair with warm starts along each lambda path
// (zero start at the largest lambda) and returns the EBIC minimizer; ties
// broken by smaller support, then larger lambda. lambda_grid must be
// non-increasing and positive.
RegressionFit grid_search_fit(const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& x,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& tau_grid,
                              double gamma, double tol, int max_iter);

// Convenience overload: grids built from the config.
RegressionFit grid_search_fit(const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& x,
                              const PenregConfig& config);

RegressionFit grid_search_fit_cov(const Eigen::MatrixXd& gram,
                                  const Eigen::VectorXd& xty, double yty,
                                  int n,
                                  const std::vector<double>& lambda_grid,
                                  const std::vector<double>& tau_grid,
                                  double gamma, double tol, int max_iter);

// Step 1: regress every variable on the rest, keep EBIC-selected supports,
// join by the OR rule into an undirected graph.
UndirectedGraph neighborhood_select(const DataMatrix& d,
                                    const PenregConfig& config);

}  // namespace penpc
