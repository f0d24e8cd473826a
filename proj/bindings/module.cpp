// Python bindings for the main operations. Graphs cross the boundary as
// (p, edge list) pairs, matrices as numpy arrays, separation sets as dicts
// keyed by (i, j) tuples, and randomness as integer seeds.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "penpc/citest.hpp"
#include "penpc/errors.hpp"
#include "penpc/eval.hpp"
#include "penpc/graph.hpp"
#include "penpc/penreg.hpp"
#include "penpc/rng.hpp"
#include "penpc/simulate.hpp"
#include "penpc/skeleton.hpp"

namespace py = pybind11;
using penpc::Edge;

namespace {

using EdgeList = std::vector<Edge>;
using SepDict = std::map<Edge, std::vector<int>>;

penpc::SemSpec build_spec(int p, const EdgeList& edges,
                          const std::optional<std::vector<double>>& coefs,
                          double noise_var) {
  penpc::DirectedGraph dag(p, edges);
  if (!coefs) return penpc::SemSpec(std::move(dag), [&] {
    std::map<Edge, double> w;
    for (const Edge& e : edges) w[e] = 1.0;
    return w;
  }(), noise_var);
  if (coefs->size() != edges.size())
    throw std::invalid_argument("coefficients must match edges one-to-one");
  std::map<Edge, double> w;
  for (std::size_t k = 0; k < edges.size(); ++k) w[edges[k]] = (*coefs)[k];
  return penpc::SemSpec(std::move(dag), std::move(w), noise_var);
}

penpc::CorrelationMatrix make_corr(const Eigen::MatrixXd& r,
                                   std::optional<int> n) {
  return penpc::CorrelationMatrix(r, n);
}

SepDict sepsets_to_dict(const penpc::SepSetMap& seps) {
  SepDict out;
  seps.for_each([&](int i, int j, const std::vector<int>& sep) {
    out[{i, j}] = sep;
  });
  return out;
}

penpc::SepSetMap dict_to_sepsets(int p, const SepDict& d) {
  penpc::SepSetMap seps(p);
  for (const auto& [key, sep] : d) seps.set(key.first, key.second, sep);
  return seps;
}

py::dict skeleton_result_to_py(const penpc::SkeletonResult& res) {
  py::dict out;
  out["edges"] = res.skeleton.edges();
  out["sepsets"] = sepsets_to_dict(res.sepsets);
  out["tests_run"] = res.tests_run;
  out["skipped_sets"] = res.skipped_sets;
  out["levels_completed"] = res.levels_completed;
  return out;
}

penpc::PenregConfig make_config(double gamma, int lambda_grid_size,
                                double lambda_min_ratio, int tau_grid_size,
                                double tau_min, double tau_max, double tol,
                                int max_iter, int threads) {
  penpc::PenregConfig cfg;
  cfg.gamma = gamma;
  cfg.lambda_grid_size = lambda_grid_size;
  cfg.lambda_min_ratio = lambda_min_ratio;
  cfg.tau_grid_size = tau_grid_size;
  cfg.tau_min = tau_min;
  cfg.tau_max = tau_max;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-step penalized estimation of DAG skeletons";

  // Translators run newest-first, so the derived exception is registered
  // after its base to take precedence; python mirrors the C++ hierarchy.
  auto numeric = py::register_exception<penpc::numeric_error>(
      m, "NumericError", PyExc_ValueError);
  py::register_exception<penpc::insufficient_sample>(m, "InsufficientSample",
                                                     numeric.ptr());
  py::register_exception<penpc::io_error>(m, "IoError", PyExc_IOError);

  // graphs ------------------------------------------------------------
  m.def(
      "gen_er_dag",
      [](int p, double edge_prob, std::uint64_t seed) {
        penpc::Rng rng = penpc::make_rng(seed);
        return penpc::gen_er_dag(p, edge_prob, rng).edges();
      },
      py::arg("p"), py::arg("edge_prob"), py::arg("seed"));
  m.def(
      "gen_ba_dag",
      [](int p, int edges_per_step, std::uint64_t seed) {
        penpc::Rng rng = penpc::make_rng(seed);
        return penpc::gen_ba_dag(p, edges_per_step, rng).edges();
      },
      py::arg("p"), py::arg("edges_per_step"), py::arg("seed"));
  m.def(
      "skeleton_of",
      [](int p, const EdgeList& edges) {
        return penpc::skeleton_of(penpc::DirectedGraph(p, edges)).edges();
      },
      py::arg("p"), py::arg("edges"));
  m.def(
      "true_ggm_of",
      [](int p, const EdgeList& edges) {
        return penpc::true_ggm_of(penpc::DirectedGraph(p, edges)).edges();
      },
      py::arg("p"), py::arg("edges"));
  m.def(
      "d_separated",
      [](int p, const EdgeList& edges, int i, int j,
         const std::vector<int>& cond) {
        return penpc::d_separated(penpc::DirectedGraph(p, edges), i, j, cond);
      },
      py::arg("p"), py::arg("edges"), py::arg("i"), py::arg("j"),
      py::arg("cond"));
  m.def(
      "is_acyclic",
      [](int p, const EdgeList& edges) { return penpc::is_acyclic(p, edges); },
      py::arg("p"), py::arg("edges"));

  // simulation ---------------------------------------------------------
  m.def(
      "simulate_sem",
      [](int p, const EdgeList& edges,
         const std::optional<std::vector<double>>& coefficients,
         double noise_var, int n, std::uint64_t seed) {
        penpc::Rng rng = penpc::make_rng(seed);
        return penpc::simulate_sem(build_spec(p, edges, coefficients,
                                              noise_var),
                                   n, rng)
            .values;
      },
      py::arg("p"), py::arg("edges"), py::arg("coefficients") = py::none(),
      py::arg("noise_var") = 1.0, py::arg("n") = 100, py::arg("seed") = 1);
  m.def(
      "analytic_covariance",
      [](int p, const EdgeList& edges,
         const std::optional<std::vector<double>>& coefficients,
         double noise_var) {
        return penpc::analytic_covariance(
            build_spec(p, edges, coefficients, noise_var));
      },
      py::arg("p"), py::arg("edges"), py::arg("coefficients") = py::none(),
      py::arg("noise_var") = 1.0);
  m.def(
      "standardize",
      [](const Eigen::MatrixXd& x) {
        return penpc::standardize({x, false}).values;
      },
      py::arg("x"));

  // independence tests --------------------------------------------------
  m.def(
      "sample_correlation",
      [](const Eigen::MatrixXd& standardized) {
        return penpc::sample_correlation({standardized, true}).values();
      },
      py::arg("standardized"));
  m.def(
      "partial_correlation",
      [](const Eigen::MatrixXd& r, int i, int j, const std::vector<int>& cond,
         std::optional<int> n) {
        return penpc::partial_correlation(make_corr(r, n), i, j, cond);
      },
      py::arg("r"), py::arg("i"), py::arg("j"),
      py::arg("cond") = std::vector<int>{}, py::arg("n") = py::none());
  m.def("fisher_z", &penpc::fisher_z, py::arg("rho"));
  m.def("normal_quantile", &penpc::normal_quantile, py::arg("prob"));
  m.def(
      "ci_test",
      [](const Eigen::MatrixXd& r, int i, int j, const std::vector<int>& cond,
         double alpha, std::optional<int> n) {
        return penpc::ci_test(make_corr(r, n), i, j, cond, alpha);
      },
      py::arg("r"), py::arg("i"), py::arg("j"),
      py::arg("cond") = std::vector<int>{}, py::arg("alpha") = 0.01,
      py::arg("n") = py::none());

  // penalized regression -------------------------------------------------
  m.def(
      "log_penalty",
      [](double t, double lam, double tau) {
        return penpc::log_penalty(t, {lam, tau});
      },
      py::arg("t"), py::arg("lam"), py::arg("tau"));
  m.def("ebic", &penpc::ebic, py::arg("rss"), py::arg("support_size"),
        py::arg("n"), py::arg("q"), py::arg("gamma") = 1.0);
  m.def(
      "coord_descent",
      [](const Eigen::VectorXd& y, const Eigen::MatrixXd& x, double lam,
         double tau, std::optional<Eigen::VectorXd> init, double tol,
         int max_iter) {
        Eigen::VectorXd start =
            init ? *init : Eigen::VectorXd::Zero(x.cols()).eval();
        penpc::RegressionFit fit =
            penpc::coord_descent(y, x, {lam, tau}, start, tol, max_iter);
        py::dict out;
        out["coefficients"] = fit.coefficients;
        out["support"] = fit.support;
        out["rss"] = fit.rss;
        out["sweeps"] = fit.sweeps;
        out["converged"] = fit.converged;
        return out;
      },
      py::arg("y"), py::arg("x"), py::arg("lam"), py::arg("tau"),
      py::arg("init") = py::none(), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 1000);
  m.def(
      "grid_search_fit",
      [](const Eigen::VectorXd& y, const Eigen::MatrixXd& x, double gamma,
         int lambda_grid_size, double lambda_min_ratio, int tau_grid_size,
         double tau_min, double tau_max, double tol, int max_iter) {
        penpc::RegressionFit fit = penpc::grid_search_fit(
            y, x,
            make_config(gamma, lambda_grid_size, lambda_min_ratio,
                        tau_grid_size, tau_min, tau_max, tol, max_iter, 1));
        py::dict out;
        out["coefficients"] = fit.coefficients;
        out["support"] = fit.support;
        out["rss"] = fit.rss;
        out["lambda"] = fit.params.lambda;
        out["tau"] = fit.params.tau;
        out["ebic"] = fit.ebic;
        return out;
      },
      py::arg("y"), py::arg("x"), py::arg("gamma") = 1.0,
      py::arg("lambda_grid_size") = 100, py::arg("lambda_min_ratio") = 1e-3,
      py::arg("tau_grid_size") = 10, py::arg("tau_min") = 1e-4,
      py::arg("tau_max") = 1.0, py::arg("tol") = 1e-6,
      py::arg("max_iter") = 1000);
  m.def(
      "neighborhood_select",
      [](const Eigen::MatrixXd& x, double gamma, int lambda_grid_size,
         double lambda_min_ratio, int tau_grid_size, double tau_min,
         double tau_max, double tol, int max_iter, int threads) {
        penpc::DataMatrix d = penpc::standardize({x, false});
        return penpc::neighborhood_select(
                   d, make_config(gamma, lambda_grid_size, lambda_min_ratio,
                                  tau_grid_size, tau_min, tau_max, tol,
                                  max_iter, threads))
            .edges();
      },
      py::arg("x"), py::arg("gamma") = 1.0, py::arg("lambda_grid_size") = 100,
      py::arg("lambda_min_ratio") = 1e-3, py::arg("tau_grid_size") = 10,
      py::arg("tau_min") = 1e-4, py::arg("tau_max") = 1.0,
      py::arg("tol") = 1e-6, py::arg("max_iter") = 1000,
      py::arg("threads") = 1);

  // skeleton estimation ---------------------------------------------------
  m.def(
      "modified_pc_stable",
      [](int p, const EdgeList& ggm_edges, const Eigen::MatrixXd& r,
         double alpha, std::optional<int> n, int max_level) {
        return skeleton_result_to_py(penpc::modified_pc_stable(
            penpc::UndirectedGraph(p, ggm_edges), make_corr(r, n), alpha,
            max_level));
      },
      py::arg("p"), py::arg("ggm_edges"), py::arg("r"),
      py::arg("alpha") = 0.01, py::arg("n") = py::none(),
      py::arg("max_level") = -1);
  m.def(
      "pc_stable",
      [](const Eigen::MatrixXd& r, double alpha, std::optional<int> n,
         int max_level) {
        return skeleton_result_to_py(
            penpc::pc_stable(make_corr(r, n), alpha, max_level));
      },
      py::arg("r"), py::arg("alpha") = 0.01, py::arg("n") = py::none(),
      py::arg("max_level") = -1);
  m.def(
      "orient_cpdag",
      [](int p, const EdgeList& skeleton_edges, const SepDict& sepsets) {
        penpc::OrientResult res =
            penpc::orient_cpdag(penpc::UndirectedGraph(p, skeleton_edges),
                                dict_to_sepsets(p, sepsets));
        py::dict out;
        out["directed"] = res.cpdag.directed_edges();
        out["undirected"] = res.cpdag.undirected_edges();
        out["conflicts"] = res.conflict_count;
        return out;
      },
      py::arg("p"), py::arg("skeleton_edges"), py::arg("sepsets"));

  // evaluation -------------------------------------------------------------
  m.def(
      "skeleton_metrics",
      [](int p, const EdgeList& est, const EdgeList& truth) {
        penpc::Confusion c =
            penpc::confusion(penpc::UndirectedGraph(p, est),
                             penpc::UndirectedGraph(p, truth));
        py::dict out;
        out["tp"] = c.tp;
        out["fp"] = c.fp;
        out["tn"] = c.tn;
        out["fn"] = c.fn;
        out["hd"] = penpc::hamming(c);
        out["tpr"] = c.tp + c.fn > 0 ? py::object(py::float_(penpc::tpr(c)))
                                     : py::object(py::none());
        out["fpr"] = c.fp + c.tn > 0 ? py::object(py::float_(penpc::fpr(c)))
                                     : py::object(py::none());
        return out;
      },
      py::arg("p"), py::arg("est"), py::arg("truth"));

  m.def(
      "derive_seed",
      [](std::uint64_t master, const std::vector<std::uint64_t>& path) {
        return penpc::derive_seed(master, path);
      },
      py::arg("master"), py::arg("path"));
}
