#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "penpc/errors.hpp"
#include "penpc/graph.hpp"
#include "penpc/rng.hpp"
#include "penpc/simulate.hpp"

using penpc::DirectedGraph;
using penpc::Edge;
using penpc::SemSpec;

TEST_CASE("sem spec demands one coefficient per edge") {
  DirectedGraph g(2, {{0, 1}});
  CHECK_THROWS_AS(SemSpec(g, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      SemSpec(g, {{Edge{0, 1}, 1.0}, {Edge{1, 0}, 1.0}}, 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(SemSpec(g, {{Edge{0, 1}, 1.0}}, 0.0),
                  std::invalid_argument);
  auto spec = SemSpec::unit_weights(g);
  CHECK(spec.coefficient(0, 1) == 1.0);
  CHECK(spec.noise_variance() == 1.0);
  CHECK_THROWS_AS(spec.coefficient(1, 0), std::invalid_argument);
}

TEST_CASE("analytic covariance of a weighted two-variable chain") {
  DirectedGraph g(2, {{0, 1}});
  SemSpec spec(g, {{Edge{0, 1}, 2.0}}, 1.0);
  Eigen::MatrixXd sigma = penpc::analytic_covariance(spec);
  CHECK(sigma(0, 0) == doctest::Approx(1.0));
  CHECK(sigma(0, 1) == doctest::Approx(2.0));
  CHECK(sigma(1, 0) == doctest::Approx(2.0));
  CHECK(sigma(1, 1) == doctest::Approx(5.0));
}

TEST_CASE("analytic covariance matches the four-variable goldens") {
  Eigen::MatrixXd sigma =
      penpc::analytic_covariance(SemSpec::unit_weights(fixtures::four_dag()));
  CHECK((sigma - fixtures::four_sigma()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd omega = sigma.inverse();
  CHECK((omega - fixtures::four_omega()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("analytic covariance is symmetric positive definite") {
  auto rng = penpc::make_rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    auto g = penpc::gen_er_dag(8, 0.3, rng);
    Eigen::MatrixXd sigma =
        penpc::analytic_covariance(oracles::generic_spec(g, rng));
    CHECK((sigma - sigma.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("simulated samples reproduce the analytic covariance") {
  auto spec = SemSpec::unit_weights(fixtures::four_dag());
  auto rng = penpc::make_rng(2024);
  auto d = penpc::simulate_sem(spec, 200000, rng);
  REQUIRE(d.n() == 200000);
  REQUIRE(d.p() == 4);
  CHECK_FALSE(d.standardized);
  Eigen::MatrixXd centered = d.values.rowwise() - d.values.colwise().mean();
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(d.n());
  CHECK((cov - fixtures::four_sigma()).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("simulation is reproducible and seed sensitive") {
  auto spec = SemSpec::unit_weights(fixtures::four_dag());
  auto r1 = penpc::make_rng(5);
  auto r2 = penpc::make_rng(5);
  auto r3 = penpc::make_rng(6);
  auto a = penpc::simulate_sem(spec, 50, r1);
  auto b = penpc::simulate_sem(spec, 50, r2);
  auto c = penpc::simulate_sem(spec, 50, r3);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
  auto r4 = penpc::make_rng(5);
  CHECK_THROWS_AS(penpc::simulate_sem(spec, 0, r4), std::invalid_argument);
}

TEST_CASE("derived seeds separate substreams") {
  CHECK(penpc::derive_seed(1, {2, 3}) == penpc::derive_seed(1, {2, 3}));
  CHECK(penpc::derive_seed(1, {2, 3}) != penpc::derive_seed(1, {3, 2}));
  CHECK(penpc::derive_seed(1, {2}) != penpc::derive_seed(2, {2}));
  CHECK(penpc::derive_seed(7, {}) != penpc::derive_seed(7, {0}));
}

TEST_CASE("standardize centers and rescales to squared norm n") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  auto d = penpc::standardize({x, false});
  CHECK(d.standardized);
  const double root = std::sqrt(1.5);  // 1.2247448713915890
  CHECK(d.values(0, 0) == doctest::Approx(-root).epsilon(1e-12));
  CHECK(std::abs(d.values(1, 0)) < 1e-15);
  CHECK(d.values(2, 0) == doctest::Approx(root).epsilon(1e-12));

  auto rng = penpc::make_rng(31);
  auto spec = SemSpec::unit_weights(fixtures::four_dag());
  auto raw = penpc::simulate_sem(spec, 57, rng);
  auto std57 = penpc::standardize(raw);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(std57.values.col(j).mean()) < 1e-12);
    CHECK(std57.values.col(j).squaredNorm() == doctest::Approx(57.0));
  }
}

TEST_CASE("standardize rejects constant columns and single samples") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 5, 2, 5, 3, 5;
  CHECK_THROWS_AS(penpc::standardize({x, false}), penpc::numeric_error);
  Eigen::MatrixXd one(1, 1);
  one << 2;
  CHECK_THROWS_AS(penpc::standardize({one, false}), std::invalid_argument);
}
