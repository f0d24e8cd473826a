#include "penpc/penreg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "penpc/errors.hpp"
#include "penpc/parallel.hpp"

namespace penpc {

namespace {

constexpr double kZeroClamp = 1e-12;

// Minimizes h(b) = 0.5*(b - z)^2 + lambda*log(|b| + tau) exactly. The
// stationarity condition on the sign(z) branch is the upward parabola
// b^2 + (tau - |z|) b + (lambda - tau|z|) = 0; the larger root is the only
// interior local minimum, so the answer is that root or 0, whichever
// scores lower.
double univariate_min(double z, double lambda, double tau) {
  if (lambda < 0.0 || !(tau > 0.0))
    throw std::invalid_argument("invalid penalty parameters");
  double a = std::abs(z);
  if (a <= kZeroClamp) return 0.0;
  if (lambda == 0.0) return z;
  const double disc = (a + tau) * (a + tau) - 4.0 * lambda;
  if (disc <= 0.0) return 0.0;
  const double root = ((a - tau) + std::sqrt(disc)) / 2.0;
  if (root <= kZeroClamp) return 0.0;
  // h(0) - h(root), sharing the constant 0.5*a^2 + lambda*log(tau) terms.
  const double gain = 0.5 * a * a - 0.5 * (root - a) * (root - a) +
                      lambda * (std::log(tau) - std::log(root + tau));
  if (gain <= 0.0) return 0.0;
  return z > 0.0 ? root : -root;
}

void check_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                double yty, int n) {
  const Eigen::Index q = gram.rows();
  if (gram.cols() != q || xty.size() != q)
    throw std::invalid_argument("gram/xty dimension mismatch");
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  if (!gram.allFinite() || !xty.allFinite() || !std::isfinite(yty))
    throw std::invalid_argument("non-finite values in inputs");
  for (Eigen::Index j = 0; j < q; ++j)
    if (std::abs(gram(j, j) - static_cast<double>(n)) >
        1e-6 * static_cast<double>(n))
      throw std::invalid_argument(
          "columns must be standardized (x_j'x_j = n)");
}

struct CovWorkspace {
  Eigen::VectorXd b;  // current coefficients
  Eigen::VectorXd s;  // gram * b, maintained incrementally
};

double cov_objective(const Eigen::VectorXd& b, const Eigen::VectorXd& s,
                     const Eigen::VectorXd& xty, double yty, int n,
                     const PenaltyParams& params) {
  double fit = yty;
  double penalty = 0.0;
  int nonzero = 0;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (b(j) != 0.0) {
      fit += b(j) * (s(j) - 2.0 * xty(j));
      penalty += std::log(std::abs(b(j)) + params.tau);
      ++nonzero;
    }
  }
  penalty += static_cast<double>(b.size() - nonzero) * std::log(params.tau);
  return 0.5 * fit + static_cast<double>(n) * params.lambda * penalty;
}

}  // namespace

double log_penalty(double t, const PenaltyParams& p) {
  if (t < 0.0) throw std::invalid_argument("penalty argument must be >= 0");
  if (p.lambda < 0.0 || !(p.tau > 0.0))
    throw std::invalid_argument("invalid penalty parameters");
  return p.lambda * std::log(t + p.tau);
}

double log_penalty_deriv(double t, const PenaltyParams& p) {
  if (t < 0.0) throw std::invalid_argument("penalty argument must be >= 0");
  if (p.lambda < 0.0 || !(p.tau > 0.0))
    throw std::invalid_argument("invalid penalty parameters");
  return p.lambda / (t + p.tau);
}

double ebic(double rss, int support_size, int n, int q, double gamma) {
  if (!(rss > 0.0))
    throw numeric_error("degenerate saturated fit (rss <= 0)");
  if (support_size < 0 || support_size > q)
    throw std::invalid_argument("support size outside [0, q]");
  if (n < 1 || q < 1) throw std::invalid_argument("n and q must be positive");
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("gamma must lie in [0,1]");
  return static_cast<double>(n) * std::log(rss / static_cast<double>(n)) +
         static_cast<double>(support_size) *
             (std::log(static_cast<double>(n)) +
              2.0 * gamma * std::log(static_cast<double>(q)));
}

RegressionFit coord_descent_cov(const Eigen::MatrixXd& gram,
                                const Eigen::VectorXd& xty, double yty, int n,
                                const PenaltyParams& params,
                                const Eigen::VectorXd& init, double tol,
                                int max_iter,
                                std::vector<double>* objective_trace) {
  check_gram(gram, xty, yty, n);
  const Eigen::Index q = gram.rows();
  if (init.size() != q) throw std::invalid_argument("init length mismatch");
  if (!init.allFinite())
    throw std::invalid_argument("non-finite values in inputs");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");

  CovWorkspace w;
  w.b = init;
  for (Eigen::Index j = 0; j < q; ++j)
    if (std::abs(w.b(j)) < kZeroClamp) w.b(j) = 0.0;
  w.s = Eigen::VectorXd::Zero(q);
  for (Eigen::Index j = 0; j < q; ++j)
    if (w.b(j) != 0.0) w.s += w.b(j) * gram.col(j);

  const double dn = static_cast<double>(n);
  auto update_one = [&](Eigen::Index j) -> double {
    const double z = (xty(j) - w.s(j)) / dn + w.b(j);
    double nb = univariate_min(z, params.lambda, params.tau);
    if (std::abs(nb) < kZeroClamp) nb = 0.0;
    const double delta = nb - w.b(j);
    if (delta != 0.0) {
      w.b(j) = nb;
      w.s += delta * gram.col(j);
    }
    return std::abs(delta);
  };

  double prev_obj = cov_objective(w.b, w.s, xty, yty, n, params);
  if (objective_trace) objective_trace->push_back(prev_obj);
  auto end_sweep = [&]() {
    const double obj = cov_objective(w.b, w.s, xty, yty, n, params);
    if (obj > prev_obj + 1e-8 * (1.0 + std::abs(prev_obj)))
      throw numeric_error("coordinate descent objective increased");
    prev_obj = obj;
    if (objective_trace) objective_trace->push_back(obj);
  };

  int sweeps = 0;
  bool converged = false;
  std::vector<Eigen::Index> active;
  while (sweeps < max_iter) {
    double change = 0.0;
    for (Eigen::Index j = 0; j < q; ++j)
      change = std::max(change, update_one(j));
    ++sweeps;
    end_sweep();
    if (change < tol) {
      converged = true;
      break;
    }
    // Refine the current support until quiet, then re-check all coordinates.
    while (sweeps < max_iter) {
      active.clear();
      for (Eigen::Index j = 0; j < q; ++j)
        if (w.b(j) != 0.0) active.push_back(j);
      double inner = 0.0;
      for (Eigen::Index j : active) inner = std::max(inner, update_one(j));
      ++sweeps;
      end_sweep();
      if (inner < tol) break;
    }
  }

  RegressionFit fit;
  fit.coefficients = w.b;
  for (Eigen::Index j = 0; j < q; ++j)
    if (w.b(j) != 0.0) fit.support.push_back(static_cast<int>(j));
  fit.rss = std::max(0.0, yty - 2.0 * w.b.dot(xty) + w.b.dot(w.s));
  fit.params = params;
  fit.sweeps = sweeps;
  fit.converged = converged;
  return fit;
}

RegressionFit coord_descent(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                            const PenaltyParams& params,
                            const Eigen::VectorXd& init, double tol,
                            int max_iter,
                            std::vector<double>* objective_trace) {
  if (y.size() != x.rows())
    throw std::invalid_argument("y/X dimension mismatch");
  if (!y.allFinite() || !x.allFinite())
    throw std::invalid_argument("non-finite values in inputs");
  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd xty = x.transpose() * y;
  RegressionFit fit =
      coord_descent_cov(gram, xty, y.squaredNorm(), static_cast<int>(x.rows()),
                        params, init, tol, max_iter, objective_trace);
  fit.rss = (y - x * fit.coefficients).squaredNorm();
  return fit;
}

double lambda_max_for(const Eigen::VectorXd& xty, int n, double tau) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  double lambda_max = 0.0;
  for (Eigen::Index j = 0; j < xty.size(); ++j) {
    const double z = xty(j) / static_cast<double>(n);
    if (univariate_min(z, 0.0, tau) == 0.0) continue;
    double lo = 0.0;  // nonzero solution side
    double hi = (std::abs(z) + tau) * (std::abs(z) + tau) / 4.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = (lo + hi) / 2.0;
      if (univariate_min(z, mid, tau) == 0.0)
        hi = mid;
      else
        lo = mid;
    }
    lambda_max = std::max(lambda_max, hi);
  }
  return std::max(lambda_max, 1e-10);
}

std::vector<double> make_lambda_grid(const Eigen::VectorXd& xty, int n,
                                     const PenregConfig& config) {
  if (config.lambda_grid_size < 1)
    throw std::invalid_argument("lambda grid size must be positive");
  if (!(config.lambda_min_ratio > 0.0 && config.lambda_min_ratio <= 1.0))
    throw std::invalid_argument("lambda_min_ratio must lie in (0,1]");
  const double lambda_max = lambda_max_for(xty, n, config.tau_max);
  std::vector<double> grid(config.lambda_grid_size);
  if (config.lambda_grid_size == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double step = std::log(config.lambda_min_ratio) /
                      static_cast<double>(config.lambda_grid_size - 1);
  for (int k = 0; k < config.lambda_grid_size; ++k)
    grid[k] = lambda_max * std::exp(step * static_cast<double>(k));
  return grid;
}

std::vector<double> make_tau_grid(const PenregConfig& config) {
  if (config.tau_grid_size < 1)
    throw std::invalid_argument("tau grid size must be positive");
  if (!(config.tau_min > 0.0) || config.tau_min > config.tau_max)
    throw std::invalid_argument("need 0 < tau_min <= tau_max");
  std::vector<double> grid(config.tau_grid_size);
  if (config.tau_grid_size == 1) {
    grid[0] = config.tau_max;
    return grid;
  }
  const double step = (std::log(config.tau_max) - std::log(config.tau_min)) /
                      static_cast<double>(config.tau_grid_size - 1);
  for (int k = 0; k < config.tau_grid_size; ++k)
    grid[k] = std::exp(std::log(config.tau_min) +
                       step * static_cast<double>(k));
  return grid;
}

RegressionFit grid_search_fit_cov(const Eigen::MatrixXd& gram,
                                  const Eigen::VectorXd& xty, double yty,
                                  int n,
                                  const std::vector<double>& lambda_grid,
                                  const std::vector<double>& tau_grid,
                                  double gamma, double tol, int max_iter) {
  if (lambda_grid.empty() || tau_grid.empty())
    throw std::invalid_argument("tuning grids must be nonempty");
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    if (!(lambda_grid[k] > 0.0))
      throw std::invalid_argument("lambda grid must be positive");
    if (k > 0 && lambda_grid[k] > lambda_grid[k - 1])
      throw std::invalid_argument("lambda grid must be non-increasing");
  }
  const Eigen::Index q = gram.rows();
  const int qi = static_cast<int>(q);

  RegressionFit best;
  bool have_best = false;
  for (double tau : tau_grid) {
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(q);
    for (double lambda : lambda_grid) {
      RegressionFit fit = coord_descent_cov(gram, xty, yty, n, {lambda, tau},
                                            warm, tol, max_iter);
      warm = fit.coefficients;
      fit.ebic = ebic(fit.rss, static_cast<int>(fit.support.size()), n, qi,
                      gamma);
      const bool better =
          !have_best || fit.ebic < best.ebic ||
          (fit.ebic == best.ebic &&
           (fit.support.size() < best.support.size() ||
            (fit.support.size() == best.support.size() &&
             fit.params.lambda > best.params.lambda)));
      if (better) {
        best = fit;
        have_best = true;
      }
    }
  }
  return best;
}

RegressionFit grid_search_fit(const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& x,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& tau_grid,
                              double gamma, double tol, int max_iter) {
  if (y.size() != x.rows())
    throw std::invalid_argument("y/X dimension mismatch");
  if (!y.allFinite() || !x.allFinite())
    throw std::invalid_argument("non-finite values in inputs");
  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd xty = x.transpose() * y;
  RegressionFit fit = grid_search_fit_cov(gram, xty, y.squaredNorm(),
                                          static_cast<int>(x.rows()),
                                          lambda_grid, tau_grid, gamma, tol,
                                          max_iter);
  fit.rss = (y - x * fit.coefficients).squaredNorm();
  fit.ebic = ebic(fit.rss, static_cast<int>(fit.support.size()),
                  static_cast<int>(x.rows()), static_cast<int>(x.cols()),
                  gamma);
  return fit;
}

RegressionFit grid_search_fit(const Eigen::VectorXd& y,
                              const Eigen::MatrixXd& x,
                              const PenregConfig& config) {
  const Eigen::VectorXd xty = x.transpose() * y;
  return grid_search_fit(y, x,
                         make_lambda_grid(xty, static_cast<int>(x.rows()),
                                          config),
                         make_tau_grid(config), config.gamma, config.tol,
                         config.max_iter);
}

UndirectedGraph neighborhood_select(const DataMatrix& d,
                                    const PenregConfig& config) {
  if (!d.standardized)
    throw std::invalid_argument("neighborhood_select needs standardized data");
  const int p = static_cast<int>(d.p());
  const int n = static_cast<int>(d.n());
  if (p < 2) throw std::invalid_argument("need at least two variables");
  if (n < 2) throw std::invalid_argument("need at least two samples");

  const Eigen::MatrixXd gram = d.values.transpose() * d.values;
  const std::vector<double> tau_grid = make_tau_grid(config);

  std::vector<std::vector<int>> neighbors(p);
  parallel_for(static_cast<std::size_t>(p), config.threads, [&](std::size_t t) {
    const int i = static_cast<int>(t);
    const Eigen::Index q = p - 1;
    Eigen::MatrixXd sub(q, q);
    Eigen::VectorXd xty(q);
    for (Eigen::Index a = 0; a < q; ++a) {
      const Eigen::Index va = a < i ? a : a + 1;
      xty(a) = gram(va, i);
      for (Eigen::Index b = 0; b < q; ++b) {
        const Eigen::Index vb = b < i ? b : b + 1;
        sub(a, b) = gram(va, vb);
      }
    }
    RegressionFit fit = grid_search_fit_cov(
        sub, xty, gram(i, i), n, make_lambda_grid(xty, n, config), tau_grid,
        config.gamma, config.tol, config.max_iter);
    for (int idx : fit.support)
      neighbors[i].push_back(idx < i ? idx : idx + 1);
  });

  std::vector<Edge> edges;
  for (int i = 0; i < p; ++i)
    for (int j : neighbors[i])
      edges.emplace_back(std::min(i, j), std::max(i, j));
  return UndirectedGraph(p, edges);
}

}  // namespace penpc
