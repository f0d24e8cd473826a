#include "penpc/citest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "penpc/errors.hpp"

namespace penpc {

namespace {

constexpr double kPopulationZeroTol = 1e-10;
constexpr double kRhoClamp = 1.0 - 1e-12;

void check_correlation(const Eigen::MatrixXd& r) {
  if (r.rows() != r.cols() || r.rows() < 1)
    throw std::invalid_argument("correlation matrix must be square");
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    if (std::abs(r(i, i) - 1.0) > 1e-10)
      throw std::invalid_argument("correlation diagonal must be 1");
    for (Eigen::Index j = i + 1; j < r.cols(); ++j) {
      if (std::abs(r(i, j) - r(j, i)) > 1e-12)
        throw std::invalid_argument("correlation matrix must be symmetric");
      if (std::abs(r(i, j)) > 1.0 + 1e-10 || !std::isfinite(r(i, j)))
        throw std::invalid_argument("correlation entries must lie in [-1,1]");
    }
  }
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd r,
                                     std::optional<int> n_effective)
    : r_(std::move(r)), n_(n_effective) {
  check_correlation(r_);
  if (n_ && *n_ < 2)
    throw std::invalid_argument("effective sample size must be >= 2");
  // Tiny floating-point overshoot is tolerated above, then removed.
  r_ = r_.cwiseMax(-1.0).cwiseMin(1.0);
}

CorrelationMatrix CorrelationMatrix::from_covariance(
    const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw std::invalid_argument("covariance matrix must be square");
  Eigen::VectorXd scale = sigma.diagonal();
  for (Eigen::Index i = 0; i < scale.size(); ++i)
    if (!(scale(i) > 0.0))
      throw std::invalid_argument("covariance diagonal must be positive");
  scale = scale.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd r = scale.asDiagonal() * sigma * scale.asDiagonal();
  r.diagonal().setOnes();
  return CorrelationMatrix(std::move(r), std::nullopt);
}

CorrelationMatrix sample_correlation(const DataMatrix& d) {
  if (!d.standardized)
    throw std::invalid_argument("sample_correlation needs standardized data");
  if (d.n() < 2) throw std::invalid_argument("need at least two samples");
  Eigen::MatrixXd r =
      (d.values.transpose() * d.values) / static_cast<double>(d.n());
  return CorrelationMatrix(std::move(r), static_cast<int>(d.n()));
}

double partial_correlation(const CorrelationMatrix& r, int i, int j,
                           const std::vector<int>& cond) {
  const int p = r.p();
  auto check = [p](int v) {
    if (v < 0 || v >= p)
      throw std::invalid_argument("vertex index " + std::to_string(v) +
                                  " outside [0, " + std::to_string(p) + ")");
  };
  check(i);
  check(j);
  if (i == j) throw std::invalid_argument("i and j must differ");
  if (cond.empty())
    return std::clamp(r.values()(i, j), -1.0, 1.0);

  std::vector<int> idx{i, j};
  for (int v : cond) {
    check(v);
    if (v == i || v == j)
      throw std::invalid_argument("conditioning set contains an endpoint");
    for (std::size_t k = 2; k < idx.size(); ++k)
      if (idx[k] == v)
        throw std::invalid_argument("duplicate conditioning vertex");
    idx.push_back(v);
  }

  const int m = static_cast<int>(idx.size());
  Eigen::MatrixXd sub(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) sub(a, b) = r.values()(idx[a], idx[b]);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
  if (!lu.isInvertible())
    throw numeric_error("collinear variables: singular correlation submatrix");
  Eigen::MatrixXd h = lu.inverse();
  double denom = h(0, 0) * h(1, 1);
  if (!(denom > 0.0))
    throw numeric_error("correlation submatrix is not positive definite");
  double rho = -h(0, 1) / std::sqrt(denom);
  if (!std::isfinite(rho))
    throw numeric_error("partial correlation is not finite");
  return std::clamp(rho, -1.0, 1.0);
}

double fisher_z(double rho) {
  if (!std::isfinite(rho)) throw std::invalid_argument("non-finite rho");
  return std::atanh(std::clamp(rho, -kRhoClamp, kRhoClamp));
}

// Wichura's algorithm AS 241 (PPND16): rational approximations on three
// regimes, |error| < 1e-15 over (0,1).
double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("quantile probability must lie in (0,1)");
  const double q = prob - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? prob : 1.0 - prob;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r +
                   2.27238449892691845833e-2) *
                      r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e0) *
                    r +
                3.64784832476320460504e0) *
                   r +
               5.76949722146069140550e0) *
                  r +
              4.63033784615654529590e0) *
                 r +
             1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r +
                   5.47593808499534494600e-4) *
                      r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e0) *
                  r +
              2.05319162663775882187e0) *
                 r +
             1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r +
                   2.71155556874348757815e-5) *
                      r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e0) *
                  r +
              5.46378491116411436990e0) *
                 r +
             6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r +
                   1.42151175831644588870e-7) *
                      r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
  }
  return q < 0.0 ? -value : value;
}

bool ci_test(const CorrelationMatrix& r, int i, int j,
             const std::vector<int>& cond, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (r.population())
    return std::abs(partial_correlation(r, i, j, cond)) > kPopulationZeroTol;

  // Degrees of freedom are checked before any matrix work: with too few
  // samples the conditioning submatrix is exactly singular, and that case
  // must surface as insufficient_sample, not as a numeric failure.
  const double dof =
      static_cast<double>(*r.n_effective()) - static_cast<double>(cond.size()) - 3.0;
  if (dof < 1.0)
    throw insufficient_sample(
        "sample size too small for conditioning set of size " +
        std::to_string(cond.size()));
  const double stat =
      std::sqrt(dof) * std::abs(fisher_z(partial_correlation(r, i, j, cond)));
  return stat > normal_quantile(1.0 - alpha / 2.0);
}

}  // namespace penpc
