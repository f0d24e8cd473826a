// Acceptance gate: eight checks, one [PASS]/[FAIL] line each, nonzero exit
// on any failure. Each check carries a wall-clock budget that is enforced.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "penpc/citest.hpp"
#include "penpc/eval.hpp"
#include "penpc/graph.hpp"
#include "penpc/penreg.hpp"
#include "penpc/rng.hpp"
#include "penpc/simulate.hpp"
#include "penpc/skeleton.hpp"

namespace {

using penpc::CorrelationMatrix;
using penpc::DirectedGraph;
using penpc::UndirectedGraph;

struct Check {
  std::string name;
  double budget_seconds;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

// ---------------------------------------------------------------- 1
void golden_matrices(std::ostringstream& note) {
  Eigen::MatrixXd sigma =
      penpc::analytic_covariance(penpc::SemSpec::unit_weights(
          fixtures::four_dag()));
  const double sigma_err =
      (sigma - fixtures::four_sigma()).cwiseAbs().maxCoeff();
  Eigen::MatrixXd omega = sigma.inverse();
  const double omega_err =
      (omega - fixtures::four_omega()).cwiseAbs().maxCoeff();
  require(sigma_err < 1e-10, "covariance mismatch " + std::to_string(sigma_err));
  require(omega_err < 1e-10, "precision mismatch " + std::to_string(omega_err));
  note << "max errors " << sigma_err << " / " << omega_err;
}

// ---------------------------------------------------------------- 2
void population_recovery(std::ostringstream& note) {
  const std::vector<DirectedGraph> dags{fixtures::five_a(), fixtures::five_b(),
                                        fixtures::five_c(),
                                        fixtures::five_d()};
  // the separations each variant was built around, checked graphically
  require(penpc::d_separated(dags[0], 0, 2, {}), "variant a: not marginal");
  require(penpc::d_separated(dags[1], 0, 2, {1}), "variant b: {1} fails");
  require(!penpc::d_separated(dags[1], 0, 2, {}), "variant b: marginal");
  require(!penpc::d_separated(dags[1], 0, 2, {1, 3}),
          "variant b: collider ignored");
  require(penpc::d_separated(dags[2], 0, 2, {1, 4}), "variant c: {1,4} fails");
  require(!penpc::d_separated(dags[2], 0, 2, {1}), "variant c: {1} separates");
  require(penpc::d_separated(dags[3], 0, 2, {1}), "variant d: {1} fails");
  require(!penpc::d_separated(dags[3], 0, 2, {1, 4}),
          "variant d: descendant ignored");

  for (std::size_t k = 0; k < dags.size(); ++k) {
    const auto& dag = dags[k];
    auto r = CorrelationMatrix::from_covariance(
        penpc::analytic_covariance(penpc::SemSpec::unit_weights(dag)));
    auto res = penpc::modified_pc_stable(penpc::true_ggm_of(dag), r, 0.01);
    require(res.skeleton == penpc::skeleton_of(dag),
            "variant " + std::to_string(k) + ": wrong skeleton");
    auto sep = res.sepsets.find(0, 2);
    require(sep.has_value(),
            "variant " + std::to_string(k) + ": no separator recorded");
    require(penpc::d_separated(dag, 0, 2, *sep),
            "variant " + std::to_string(k) + ": separator does not separate");
  }
  note << "4 variants recovered";
}

// ---------------------------------------------------------------- 3
void moral_structure_oracles(std::ostringstream& note) {
  auto rng = penpc::make_rng(20240001);
  int coparent_edges = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int p = 4 + rep % 5;  // 4..8
    auto dag = penpc::gen_er_dag(p, 0.3, rng);
    auto spec = oracles::generic_spec(dag, rng);
    Eigen::MatrixXd omega = penpc::analytic_covariance(spec).inverse();
    auto ggm = penpc::true_ggm_of(dag);
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        require((std::abs(omega(i, j)) > 1e-8) == ggm.has_edge(i, j),
                "rep " + std::to_string(rep) + ": precision support differs");

    // for moral-only edges the restricted family must contain a separator
    auto skel = penpc::skeleton_of(dag);
    for (auto [i, j] : ggm.edges()) {
      if (skel.has_edge(i, j)) continue;
      if (penpc::d_separated(dag, i, j, {})) continue;
      ++coparent_edges;
      auto cs = penpc::candidate_sets(ggm, i, j);
      bool found = false;
      for (int level = 0;
           level <= static_cast<int>(cs.c.size()) && !found; ++level)
        for (const auto& k :
             penpc::candidate_conditioning_sets(cs, level)) {
          if (penpc::d_separated(dag, i, j, k)) {
            found = true;
            break;
          }
        }
      require(found, "rep " + std::to_string(rep) +
                         ": no separator in the restricted family");
    }
  }
  note << coparent_edges << " co-parent edges needed a conditional separator";
}

// ---------------------------------------------------------------- 4
void calibration(std::ostringstream& note) {
  auto rng = penpc::make_rng(20240002);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int reps = 10000;
  int reject_marginal = 0;
  int reject_conditional = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Eigen::MatrixXd x(100, 4);
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 4; ++j) x(i, j) = gauss(rng);
    auto r = penpc::sample_correlation(penpc::standardize({x, false}));
    if (penpc::ci_test(r, 0, 1, {}, 0.05)) ++reject_marginal;
    if (penpc::ci_test(r, 0, 1, {2, 3}, 0.05)) ++reject_conditional;
  }
  const double rate0 = reject_marginal / static_cast<double>(reps);
  const double rate2 = reject_conditional / static_cast<double>(reps);
  note << "rates " << rate0 << " (|K|=0), " << rate2 << " (|K|=2)";
  require(std::abs(rate0 - 0.05) <= 0.0065,
          "marginal rate " + std::to_string(rate0) + " outside band");
  require(std::abs(rate2 - 0.05) <= 0.0065,
          "conditional rate " + std::to_string(rate2) + " outside band");
}

// ---------------------------------------------------------------- 5
struct MethodMeans {
  double hd = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

void simulation_direction(std::ostringstream& note) {
  const int replicates = 20;
  const double alpha = 0.01;
  for (int setting = 0; setting < 2; ++setting) {
    MethodMeans pen, penpc_m, pc;
    for (int rep = 0; rep < replicates; ++rep) {
      auto graph_rng = penpc::make_rng(penpc::derive_seed(
          1, {static_cast<std::uint64_t>(setting),
              static_cast<std::uint64_t>(rep), 0}));
      DirectedGraph dag = setting == 0
                              ? penpc::gen_er_dag(100, 0.02, graph_rng)
                              : penpc::gen_ba_dag(100, 1, graph_rng);
      auto data_rng = penpc::make_rng(penpc::derive_seed(
          1, {static_cast<std::uint64_t>(setting),
              static_cast<std::uint64_t>(rep), 1}));
      auto data = penpc::standardize(penpc::simulate_sem(
          penpc::SemSpec::unit_weights(dag), 30, data_rng));
      auto corr = penpc::sample_correlation(data);
      auto truth = penpc::skeleton_of(dag);

      penpc::PenregConfig config;
      config.threads = 1;
      auto ggm = penpc::neighborhood_select(data, config);
      auto two_step = penpc::modified_pc_stable(ggm, corr, alpha).skeleton;
      auto baseline = penpc::pc_stable(corr, alpha).skeleton;

      auto add = [&](MethodMeans& m, const UndirectedGraph& est) {
        auto c = penpc::confusion(est, truth);
        m.hd += static_cast<double>(penpc::hamming(c)) / replicates;
        m.tpr += penpc::tpr(c) / replicates;
        m.fpr += penpc::fpr(c) / replicates;
      };
      add(pen, ggm);
      add(penpc_m, two_step);
      add(pc, baseline);
    }
    const char* label = setting == 0 ? "er" : "ba";
    note << label << ": hd " << penpc_m.hd << " vs " << pc.hd << ", tpr "
         << pen.tpr << " vs " << pc.tpr << ", fpr " << pen.fpr << " vs "
         << penpc_m.fpr << "  ";
    require(penpc_m.hd < pc.hd,
            std::string(label) + ": two-step hamming not below baseline");
    require(pen.tpr >= pc.tpr,
            std::string(label) + ": penalized tpr below baseline");
    require(pen.fpr >= penpc_m.fpr,
            std::string(label) + ": pruning did not reduce fpr");
  }
}

// ---------------------------------------------------------------- 6
void scale_free_shape(std::ostringstream& note) {
  std::vector<long long> degree_count;
  const int seeds = 10;
  const int p = 1000;
  for (int s = 0; s < seeds; ++s) {
    auto rng = penpc::make_rng(penpc::derive_seed(7, {static_cast<std::uint64_t>(s)}));
    auto dag = penpc::gen_ba_dag(p, 1, rng);
    std::vector<int> degree(p, 0);
    for (auto [from, to] : dag.edges()) {
      ++degree[from];
      ++degree[to];
    }
    for (int v = 0; v < p; ++v) {
      if (degree[v] >= static_cast<int>(degree_count.size()))
        degree_count.resize(degree[v] + 1, 0);
      ++degree_count[degree[v]];
    }
  }
  std::vector<double> xs, ys;
  for (std::size_t d = 1; d < degree_count.size(); ++d) {
    if (degree_count[d] < 5) continue;
    xs.push_back(std::log10(static_cast<double>(d)));
    ys.push_back(std::log10(degree_count[d] /
                            static_cast<double>(seeds * p)));
  }
  require(xs.size() >= 3, "too few degree classes to fit");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = (sxy * sxy) / (sxx * syy);
  note << "slope " << slope << ", r2 " << r2 << " over " << xs.size()
       << " degree classes";
  require(slope < 0.0, "slope not negative");
  require(r2 > 0.9, "log-log fit r2 " + std::to_string(r2) + " <= 0.9");
}

// ---------------------------------------------------------------- 7
void order_independence(std::ostringstream& note) {
  auto rng = penpc::make_rng(20240003);
  int checked = 0;
  for (int instance = 0; instance < 2; ++instance) {
    auto dag = penpc::gen_er_dag(15, 0.15, rng);
    auto spec = oracles::generic_spec(dag, rng);
    auto data = penpc::standardize(penpc::simulate_sem(spec, 100, rng));
    auto corr = penpc::sample_correlation(data);
    auto ggm = penpc::true_ggm_of(dag);
    auto base_mod = penpc::modified_pc_stable(ggm, corr, 0.05);
    auto base_pc = penpc::pc_stable(corr, 0.05);

    std::vector<int> perm(15);
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < 10; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      Eigen::MatrixXd shuffled(data.values.rows(), 15);
      for (int j = 0; j < 15; ++j)
        shuffled.col(perm[j]) = data.values.col(j);
      auto corr_p = penpc::sample_correlation({shuffled, true});
      std::vector<penpc::Edge> ggm_edges;
      for (auto [a, b] : ggm.edges())
        ggm_edges.push_back({std::min(perm[a], perm[b]),
                             std::max(perm[a], perm[b])});
      UndirectedGraph ggm_p(15, ggm_edges);

      auto relabel = [&](const UndirectedGraph& g) {
        std::vector<penpc::Edge> edges;
        for (auto [a, b] : g.edges())
          edges.push_back({std::min(perm[a], perm[b]),
                           std::max(perm[a], perm[b])});
        return UndirectedGraph(15, edges);
      };
      auto mod_p = penpc::modified_pc_stable(ggm_p, corr_p, 0.05);
      require(mod_p.skeleton == relabel(base_mod.skeleton),
              "modified pruning changed under relabeling");
      auto pc_p = penpc::pc_stable(corr_p, 0.05);
      require(pc_p.skeleton == relabel(base_pc.skeleton),
              "baseline pruning changed under relabeling");
      ++checked;
    }
  }
  note << checked << " permutations commuted for both algorithms";
}

// ---------------------------------------------------------------- 8
void solver_contract(std::ostringstream& note) {
  auto rng = penpc::make_rng(20240004);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> lam_draw(0.01, 1.0);
  std::uniform_real_distribution<double> tau_draw(1e-3, 1.0);

  for (int rep = 0; rep < 100; ++rep) {
    Eigen::MatrixXd raw(100, 200);
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 200; ++j) raw(i, j) = gauss(rng);
    Eigen::MatrixXd x = penpc::standardize({raw, false}).values;
    Eigen::VectorXd y(100);
    for (int i = 0; i < 100; ++i) y(i) = gauss(rng);
    std::vector<double> trace;
    penpc::coord_descent(y, x, {lam_draw(rng), tau_draw(rng)},
                         Eigen::VectorXd::Zero(200), 1e-7, 100, &trace);
    for (std::size_t k = 1; k < trace.size(); ++k)
      require(trace[k] <=
                  trace[k - 1] + 1e-8 * (1.0 + std::abs(trace[k - 1])),
              "objective increased on problem " + std::to_string(rep));
  }

  // orthogonal designs agree with the brute-force univariate minimizer
  Eigen::MatrixXd a(256, 50);
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j < 50; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd x =
      qr.householderQ() * Eigen::MatrixXd::Identity(256, 50) * 16.0;
  Eigen::VectorXd y(256);
  for (int i = 0; i < 256; ++i) y(i) = gauss(rng);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double lambda = lam_draw(rng);
    const double tau = tau_draw(rng);
    auto fit = penpc::coord_descent(y, x, {lambda, tau},
                                    Eigen::VectorXd::Zero(50), 1e-12, 500);
    for (int j = 0; j < 50; ++j) {
      const double z = x.col(j).dot(y) / 256.0;
      const double oracle = oracles::univariate_grid_min(z, lambda, tau);
      worst = std::max(worst, std::abs(fit.coefficients(j) - oracle));
    }
  }
  note << "orthogonal max deviation " << worst;
  require(worst < 1e-6, "orthogonal deviation " + std::to_string(worst));
}

}  // namespace

int main() {
  const std::vector<Check> checks{
      {"golden-matrices", 1.0, golden_matrices},
      {"population-recovery", 1.0, population_recovery},
      {"moral-structure-oracles", 30.0, moral_structure_oracles},
      {"test-calibration", 60.0, calibration},
      {"simulation-direction", 600.0, simulation_direction},
      {"scale-free-shape", 30.0, scale_free_shape},
      {"order-independence", 60.0, order_independence},
      {"solver-contract", 60.0, solver_contract},
  };
  int failures = 0;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& check = checks[k];
    std::ostringstream detail;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      check.body(detail);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (error.empty() && seconds > check.budget_seconds) {
      std::ostringstream over;
      over << "over budget: " << seconds << "s > " << check.budget_seconds
           << "s";
      error = over.str();
    }
    const bool ok = error.empty();
    if (!ok) ++failures;
    std::printf("[%s] %zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", k + 1,
                check.name.c_str(), seconds, ok ? " " : " -- ",
                ok ? detail.str().c_str() : error.c_str());
  }
  if (failures > 0) {
    std::printf("%d of %zu checks failed\n", failures, checks.size());
    return 1;
  }
  std::printf("all %zu checks passed\n", checks.size());
  return 0;
}
