// Command-line front end: simulate graphs and data, run the estimators,
// evaluate skeletons, orient CPDAGs, and run the benchmark grid.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penpc/citest.hpp"
#include "penpc/errors.hpp"
#include "penpc/eval.hpp"
#include "penpc/graph.hpp"
#include "penpc/io.hpp"
#include "penpc/parallel.hpp"
#include "penpc/penreg.hpp"
#include "penpc/rng.hpp"
#include "penpc/simulate.hpp"
#include "penpc/skeleton.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

// Output paths: relative ones land under $PENPC_OUT_DIR when it is set.
std::string out_path(const std::string& path) {
  const char* base = std::getenv("PENPC_OUT_DIR");
  if (!base || *base == '\0') return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base) / p).string();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string model;
  int p = 0;
  int n = 0;
  double pe = -1.0;
  int e = 0;
  double coef = 1.0;
  double noise_var = 1.0;
  std::uint64_t seed = 1;
  std::string out_data;
  std::string out_graph;
};

penpc::DirectedGraph make_graph(const std::string& model, int p, double pe,
                               int e, std::uint64_t seed) {
  penpc::Rng rng = penpc::make_rng(penpc::derive_seed(seed, {0}));
  if (model == "er") return penpc::gen_er_dag(p, pe, rng);
  return penpc::gen_ba_dag(p, e, rng);
}

penpc::SemSpec make_spec(penpc::DirectedGraph graph, double coef,
                         double noise_var) {
  std::map<penpc::Edge, double> weights;
  for (const penpc::Edge& edge : graph.edges()) weights[edge] = coef;
  return penpc::SemSpec(std::move(graph), std::move(weights), noise_var);
}

void run_simulate(const SimulateOpts& o) {
  if (o.model == "er" && (o.pe < 0.0 || o.pe > 1.0))
    throw CLI::ValidationError("--pe must be given in [0,1] for model er");
  if (o.model == "ba" && o.e < 1)
    throw CLI::ValidationError("--e must be a positive integer for model ba");
  penpc::DirectedGraph graph = make_graph(o.model, o.p, o.pe, o.e, o.seed);
  penpc::SemSpec spec = make_spec(graph, o.coef, o.noise_var);
  penpc::Rng rng = penpc::make_rng(penpc::derive_seed(o.seed, {1}));
  penpc::DataMatrix data = penpc::simulate_sem(spec, o.n, rng);
  penpc::write_directed_graph(out_path(o.out_graph), graph);
  penpc::write_data_csv(out_path(o.out_data), data);
  std::cout << "edges=" << graph.edge_count() << " p=" << o.p << " n=" << o.n
            << " graph=" << out_path(o.out_graph)
            << " data=" << out_path(o.out_data) << "\n";
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOpts {
  std::string data;
  std::string method;
  double alpha = 0.01;
  int max_level = -1;
  std::string out_skeleton;
  std::string out_sepsets;
  penpc::PenregConfig penreg;
};

void add_penreg_flags(CLI::App* cmd, penpc::PenregConfig& cfg) {
  cmd->add_option("--gamma", cfg.gamma, "EBIC gamma weight")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--lambda-grid-size", cfg.lambda_grid_size,
                  "lambda grid size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lambda-min-ratio", cfg.lambda_min_ratio,
                  "smallest lambda as a fraction of lambda_max");
  cmd->add_option("--tau-grid-size", cfg.tau_grid_size, "tau grid size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tau-min", cfg.tau_min, "smallest tau");
  cmd->add_option("--tau-max", cfg.tau_max, "largest tau");
  cmd->add_option("--tol", cfg.tol, "coordinate-descent tolerance");
  cmd->add_option("--max-iter", cfg.max_iter, "sweep budget per fit");
  cmd->add_option("--threads", cfg.threads,
                  "worker threads (<= 0: hardware)");
}

void run_estimate(const EstimateOpts& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0))
    throw CLI::ValidationError("--alpha must lie strictly inside (0,1)");
  const auto t0 = std::chrono::steady_clock::now();
  penpc::DataMatrix raw = penpc::read_data_csv(o.data);
  if (raw.n() < 5)
    throw penpc::io_error(o.data + ": need at least 5 samples");
  penpc::DataMatrix data = penpc::standardize(raw);
  penpc::CorrelationMatrix corr = penpc::sample_correlation(data);
  const double load_ms = elapsed_ms(t0);

  std::optional<penpc::UndirectedGraph> skeleton;
  std::optional<penpc::SepSetMap> sepsets;
  double step1_ms = 0.0;
  double step2_ms = 0.0;
  long long tests = 0;
  long long skipped = 0;

  if (o.method == "pen" || o.method == "penpc") {
    const auto t1 = std::chrono::steady_clock::now();
    penpc::UndirectedGraph ggm = penpc::neighborhood_select(data, o.penreg);
    step1_ms = elapsed_ms(t1);
    if (o.method == "pen") {
      skeleton = ggm;
    } else {
      const auto t2 = std::chrono::steady_clock::now();
      penpc::SkeletonResult res =
          penpc::modified_pc_stable(ggm, corr, o.alpha, o.max_level);
      step2_ms = elapsed_ms(t2);
      skeleton = res.skeleton;
      sepsets = res.sepsets;
      tests = res.tests_run;
      skipped = res.skipped_sets;
    }
  } else {
    const auto t2 = std::chrono::steady_clock::now();
    penpc::SkeletonResult res = penpc::pc_stable(corr, o.alpha, o.max_level);
    step2_ms = elapsed_ms(t2);
    skeleton = res.skeleton;
    sepsets = res.sepsets;
    tests = res.tests_run;
    skipped = res.skipped_sets;
  }

  penpc::write_undirected_graph(out_path(o.out_skeleton), *skeleton);
  if (!o.out_sepsets.empty()) {
    if (sepsets) {
      penpc::write_sepsets_csv(out_path(o.out_sepsets), *sepsets);
    } else {
      // Step 1 alone has no separation sets; write an empty table.
      std::ofstream out(out_path(o.out_sepsets));
      if (!out) throw penpc::io_error("cannot open " + o.out_sepsets);
      out << "i,j,sep\n";
    }
  }
  std::cout << "method=" << o.method << " p=" << data.p() << " n=" << data.n()
            << " edges=" << skeleton->edge_count() << " load_ms=" << load_ms
            << " step1_ms=" << step1_ms << " step2_ms=" << step2_ms
            << " tests=" << tests << " skipped=" << skipped << "\n";
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOpts {
  std::string est;
  std::string truth;
  std::optional<int> p;
  std::string out;
  std::optional<double> alpha;
  std::string method;
  std::optional<std::uint64_t> seed;
};

// Accepts either a directed edge list (reduced to its skeleton) or an
// undirected one, keyed by the header line.
penpc::UndirectedGraph read_any_skeleton(const std::string& path,
                                         std::optional<int> p) {
  std::ifstream probe(path);
  if (!probe) throw penpc::io_error("cannot open " + path);
  std::string header;
  std::getline(probe, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  probe.close();
  if (header == "from,to")
    return penpc::skeleton_of(penpc::read_directed_graph(path, p));
  return penpc::read_undirected_graph(path, p);
}

void run_evaluate(const EvaluateOpts& o) {
  penpc::UndirectedGraph est = read_any_skeleton(o.est, std::nullopt);
  penpc::UndirectedGraph truth = read_any_skeleton(o.truth, std::nullopt);
  int p = std::max(est.vertex_count(), truth.vertex_count());
  if (o.p) {
    if (*o.p < p)
      throw penpc::io_error("--p smaller than an index used in the files");
    p = *o.p;
  } else if (est.vertex_count() != truth.vertex_count()) {
    std::cerr << "note: inferred p=" << p << " from file contents\n";
  }
  est = penpc::UndirectedGraph(p, est.edges());
  truth = penpc::UndirectedGraph(p, truth.edges());

  penpc::Confusion c = penpc::confusion(est, truth);
  json doc;
  doc["tp"] = c.tp;
  doc["fp"] = c.fp;
  doc["tn"] = c.tn;
  doc["fn"] = c.fn;
  doc["hd"] = penpc::hamming(c);
  doc["tpr"] = c.tp + c.fn > 0 ? json(penpc::tpr(c)) : json(nullptr);
  doc["fpr"] = c.fp + c.tn > 0 ? json(penpc::fpr(c)) : json(nullptr);
  doc["alpha"] = o.alpha ? json(*o.alpha) : json(nullptr);
  doc["method"] = o.method.empty() ? json(nullptr) : json(o.method);
  doc["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path(o.out));
    if (!out) throw penpc::io_error("cannot open " + o.out);
    out << text;
    std::cout << "metrics=" << out_path(o.out) << " hd=" << penpc::hamming(c)
              << "\n";
  }
}

// ---------------------------------------------------------------------------
// orient

struct OrientOpts {
  std::string skeleton;
  std::string sepsets;
  std::optional<int> p;
  std::string out;
};

void run_orient(const OrientOpts& o) {
  penpc::UndirectedGraph skel = penpc::read_undirected_graph(o.skeleton, o.p);
  penpc::SepSetMap seps =
      penpc::read_sepsets_csv(o.sepsets, skel.vertex_count());
  penpc::OrientResult res = penpc::orient_cpdag(skel, seps);
  penpc::write_cpdag_csv(out_path(o.out), res.cpdag);
  std::cout << "directed=" << res.cpdag.directed_edges().size()
            << " undirected=" << res.cpdag.undirected_edges().size()
            << " conflicts=" << res.conflict_count << "\n";
}

// ---------------------------------------------------------------------------
// bench

struct BenchSetting {
  std::string label;
  std::string model;  // er | ba
  int p = 0;
  int n = 0;
  double pe = 0.0;
  int e = 0;

  double param() const { return model == "er" ? pe : double(e); }
};

BenchSetting parse_setting(const std::string& text) {
  BenchSetting s;
  s.label = text;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("setting must look like er:p=100,n=30,pe=0.02");
  s.model = text.substr(0, colon);
  if (s.model != "er" && s.model != "ba")
    throw CLI::ValidationError("setting model must be er or ba");
  for (const std::string& kv : split_list(text.substr(colon + 1))) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("bad setting field '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "p")
        s.p = std::stoi(value);
      else if (key == "n")
        s.n = std::stoi(value);
      else if (key == "pe")
        s.pe = std::stod(value);
      else if (key == "e")
        s.e = std::stoi(value);
      else
        throw CLI::ValidationError("unknown setting field '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("bad value in setting field '" + kv + "'");
    }
  }
  if (s.p < 2 || s.n < 5)
    throw CLI::ValidationError("setting needs p >= 2 and n >= 5");
  if (s.model == "er" && (s.pe < 0.0 || s.pe > 1.0))
    throw CLI::ValidationError("setting needs pe in [0,1]");
  if (s.model == "ba" && s.e < 1)
    throw CLI::ValidationError("setting needs e >= 1");
  return s;
}

struct BenchOpts {
  std::vector<std::string> settings;
  int replicates = 20;
  std::string alphas = "0.01";
  std::string methods = "penpc,pcstable,pen";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int max_level = -1;
  penpc::PenregConfig penreg;
};

// RFC-4180 quoting for fields that may embed commas (the setting specs do).
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

struct BenchRow {
  std::string setting;
  std::string model;
  int p = 0;
  int n = 0;
  double param = 0.0;
  int replicate = 0;
  std::string method;
  double alpha = 0.0;
  bool ok = false;
  std::string error;
  penpc::Confusion c;
  double tpr = 0.0;
  double fpr = 0.0;
  long long hd = 0;
};

void run_bench(const BenchOpts& o) {
  std::vector<BenchSetting> settings;
  for (const auto& text : o.settings) settings.push_back(parse_setting(text));
  if (settings.empty()) throw CLI::ValidationError("no --setting given");
  if (o.replicates < 1)
    throw CLI::ValidationError("--replicates must be positive");

  std::vector<double> alphas;
  for (const auto& a : split_list(o.alphas)) {
    double v = std::stod(a);
    if (!(v > 0.0 && v < 1.0))
      throw CLI::ValidationError("alpha must lie in (0,1)");
    alphas.push_back(v);
  }
  std::vector<std::string> methods = split_list(o.methods);
  for (const auto& m : methods)
    if (m != "penpc" && m != "pcstable" && m != "pen")
      throw CLI::ValidationError("unknown method '" + m + "'");
  if (alphas.empty() || methods.empty())
    throw CLI::ValidationError("need at least one alpha and one method");

  const bool needs_ggm =
      std::count(methods.begin(), methods.end(), "pen") > 0 ||
      std::count(methods.begin(), methods.end(), "penpc") > 0;
  const std::size_t cells_per_task = methods.size() * alphas.size();
  const std::size_t tasks = settings.size() * o.replicates;
  std::vector<BenchRow> rows(tasks * cells_per_task);

  auto run_task = [&](std::size_t task) {
    const std::size_t si = task / o.replicates;
    const int rep = static_cast<int>(task % o.replicates);
    const BenchSetting& s = settings[si];

    BenchRow base;
    base.setting = s.label;
    base.model = s.model;
    base.p = s.p;
    base.n = s.n;
    base.param = s.param();
    base.replicate = rep;

    BenchRow* cell = &rows[task * cells_per_task];
    auto fill_error = [&](const std::string& message) {
      for (std::size_t m = 0; m < methods.size(); ++m)
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          BenchRow& row = cell[m * alphas.size() + a];
          row = base;
          row.method = methods[m];
          row.alpha = alphas[a];
          row.ok = false;
          row.error = message;
        }
    };

    try {
      penpc::Rng graph_rng = penpc::make_rng(penpc::derive_seed(
          o.seed, {si, static_cast<std::uint64_t>(rep), 0}));
      penpc::DirectedGraph dag =
          s.model == "er" ? penpc::gen_er_dag(s.p, s.pe, graph_rng)
                          : penpc::gen_ba_dag(s.p, s.e, graph_rng);
      penpc::SemSpec spec = penpc::SemSpec::unit_weights(dag);
      penpc::Rng data_rng = penpc::make_rng(penpc::derive_seed(
          o.seed, {si, static_cast<std::uint64_t>(rep), 1}));
      penpc::DataMatrix data =
          penpc::standardize(penpc::simulate_sem(spec, s.n, data_rng));
      penpc::CorrelationMatrix corr = penpc::sample_correlation(data);
      penpc::UndirectedGraph truth = penpc::skeleton_of(dag);

      std::optional<penpc::UndirectedGraph> ggm;
      if (needs_ggm) {
        penpc::PenregConfig cfg = o.penreg;
        cfg.threads = 1;  // tasks are already parallel
        ggm = penpc::neighborhood_select(data, cfg);
      }

      for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          BenchRow& row = cell[m * alphas.size() + a];
          row = base;
          row.method = methods[m];
          row.alpha = alphas[a];
          try {
            penpc::UndirectedGraph est(s.p);
            if (row.method == "pen") {
              est = *ggm;
            } else if (row.method == "penpc") {
              est = penpc::modified_pc_stable(*ggm, corr, row.alpha,
                                              o.max_level)
                        .skeleton;
            } else {
              est = penpc::pc_stable(corr, row.alpha, o.max_level).skeleton;
            }
            row.c = penpc::confusion(est, truth);
            row.tpr = penpc::tpr(row.c);
            row.fpr = penpc::fpr(row.c);
            row.hd = penpc::hamming(row.c);
            row.ok = true;
          } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
          }
        }
      }
    } catch (const std::exception& e) {
      fill_error(e.what());
    }
  };

  penpc::parallel_for(tasks, o.penreg.threads, run_task);

  std::filesystem::path dir(out_path(o.out_dir));
  std::filesystem::create_directories(dir);
  const std::string runs_path = (dir / "runs.csv").string();
  {
    std::ofstream out(runs_path);
    if (!out) throw penpc::io_error("cannot open " + runs_path);
    out << "setting,model,p,n,param,replicate,method,alpha,tp,fp,tn,fn,"
           "tpr,fpr,hd,status\n";
    for (const BenchRow& r : rows) {
      out << csv_field(r.setting) << ',' << r.model << ',' << r.p << ','
          << r.n << ','
          << penpc::format_double(r.param) << ',' << r.replicate << ','
          << r.method << ',' << penpc::format_double(r.alpha) << ',';
      if (r.ok) {
        out << r.c.tp << ',' << r.c.fp << ',' << r.c.tn << ',' << r.c.fn
            << ',' << penpc::format_double(r.tpr) << ','
            << penpc::format_double(r.fpr) << ',' << r.hd << ",ok\n";
      } else {
        std::string msg = r.error;
        for (char& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        out << ",,,,,,," << "error:" << msg << "\n";
      }
    }
    out.flush();
    if (!out) throw penpc::io_error("failed writing " + runs_path);
  }

  struct Agg {
    long long count = 0;
    double tpr = 0.0, fpr = 0.0, hd = 0.0;
  };
  std::map<std::tuple<std::string, std::string, double>, Agg> agg;
  for (const BenchRow& r : rows) {
    if (!r.ok) continue;
    Agg& a = agg[{r.setting, r.method, r.alpha}];
    ++a.count;
    a.tpr += r.tpr;
    a.fpr += r.fpr;
    a.hd += static_cast<double>(r.hd);
  }
  const std::string summary_path = (dir / "summary.csv").string();
  {
    std::ofstream out(summary_path);
    if (!out) throw penpc::io_error("cannot open " + summary_path);
    out << "setting,method,alpha,replicates_ok,mean_tpr,mean_fpr,mean_hd\n";
    for (const auto& [key, a] : agg) {
      const auto& [setting, method, alpha] = key;
      const double k = static_cast<double>(a.count);
      out << csv_field(setting) << ',' << method << ','
          << penpc::format_double(alpha)
          << ',' << a.count << ',' << penpc::format_double(a.tpr / k) << ','
          << penpc::format_double(a.fpr / k) << ','
          << penpc::format_double(a.hd / k) << '\n';
    }
    out.flush();
    if (!out) throw penpc::io_error("failed writing " + summary_path);
  }

  std::cout << "runs=" << runs_path << " summary=" << summary_path << "\n";
  for (const auto& [key, a] : agg) {
    const auto& [setting, method, alpha] = key;
    const double k = static_cast<double>(a.count);
    std::cout << setting << " method=" << method << " alpha=" << alpha
              << " ok=" << a.count << " mean_tpr=" << a.tpr / k
              << " mean_fpr=" << a.fpr / k << " mean_hd=" << a.hd / k << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "penpc: two-step penalized estimation of DAG skeletons\n"
      "Relative output paths are placed under $PENPC_OUT_DIR when set."};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* c_sim = app.add_subcommand(
      "simulate", "Draw a random DAG and Gaussian data from it");
  c_sim->add_option("--model", sim.model, "graph model")
      ->required()
      ->check(CLI::IsMember({"er", "ba"}));
  c_sim->add_option("--p", sim.p, "vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--n", sim.n, "sample count")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--pe", sim.pe, "edge probability (er)");
  c_sim->add_option("--e", sim.e, "edges per step (ba)");
  c_sim->add_option("--coef", sim.coef, "edge coefficient (default 1)");
  c_sim->add_option("--noise-var", sim.noise_var,
                    "noise variance (default 1)");
  c_sim->add_option("--seed", sim.seed, "master seed");
  c_sim->add_option("--out-data", sim.out_data, "data CSV path")->required();
  c_sim->add_option("--out-graph", sim.out_graph, "edge-list CSV path")
      ->required();
  c_sim->callback([&]() { run_simulate(sim); });

  EstimateOpts est;
  auto* c_est = app.add_subcommand(
      "estimate", "Estimate a skeleton from a data CSV");
  c_est->add_option("--data", est.data, "data CSV path")->required();
  c_est->add_option("--method", est.method, "penpc | pcstable | pen")
      ->required()
      ->check(CLI::IsMember({"penpc", "pcstable", "pen"}));
  c_est->add_option("--alpha", est.alpha, "test significance level");
  c_est->add_option("--max-level", est.max_level,
                    "conditioning-level cap (-1: none)");
  c_est->add_option("--out-skeleton", est.out_skeleton, "skeleton CSV path")
      ->required();
  c_est->add_option("--out-sepsets", est.out_sepsets,
                    "separation-set CSV path");
  add_penreg_flags(c_est, est.penreg);
  c_est->callback([&]() { run_estimate(est); });

  EvaluateOpts ev;
  auto* c_ev = app.add_subcommand(
      "evaluate", "Compare an estimated skeleton against the truth");
  c_ev->add_option("--est", ev.est, "estimated edge-list CSV")->required();
  c_ev->add_option("--truth", ev.truth, "true edge-list CSV")->required();
  int ev_p = 0;
  auto* ev_p_opt = c_ev->add_option("--p", ev_p, "vertex count override");
  c_ev->add_option("--out", ev.out, "metrics JSON path (default: stdout)");
  double ev_alpha = 0.0;
  auto* ev_alpha_opt =
      c_ev->add_option("--alpha", ev_alpha, "alpha recorded in the metrics");
  c_ev->add_option("--method", ev.method, "method recorded in the metrics");
  std::uint64_t ev_seed = 0;
  auto* ev_seed_opt =
      c_ev->add_option("--seed", ev_seed, "seed recorded in the metrics");
  c_ev->callback([&]() {
    if (*ev_p_opt) ev.p = ev_p;
    if (*ev_alpha_opt) ev.alpha = ev_alpha;
    if (*ev_seed_opt) ev.seed = ev_seed;
    run_evaluate(ev);
  });

  OrientOpts ori;
  auto* c_ori = app.add_subcommand(
      "orient", "Orient a skeleton into a CPDAG using separation sets");
  c_ori->add_option("--skeleton", ori.skeleton, "skeleton CSV")->required();
  c_ori->add_option("--sepsets", ori.sepsets, "separation-set CSV")
      ->required();
  int ori_p = 0;
  auto* ori_p_opt = c_ori->add_option("--p", ori_p, "vertex count override");
  c_ori->add_option("--out", ori.out, "CPDAG CSV path")->required();
  c_ori->callback([&]() {
    if (*ori_p_opt) ori.p = ori_p;
    run_orient(ori);
  });

  BenchOpts bench;
  auto* c_bench = app.add_subcommand(
      "bench", "Simulate/estimate/evaluate over a settings grid");
  c_bench
      ->add_option("--setting", bench.settings,
                   "e.g. er:p=100,n=30,pe=0.02 or ba:p=100,n=30,e=1")
      ->required()
      ->take_all();
  c_bench->add_option("--replicates", bench.replicates, "replicates per "
                      "setting");
  c_bench->add_option("--alphas", bench.alphas, "comma-separated alphas");
  c_bench->add_option("--methods", bench.methods,
                      "comma-separated subset of penpc,pcstable,pen");
  c_bench->add_option("--seed", bench.seed, "master seed");
  c_bench->add_option("--out-dir", bench.out_dir, "output directory");
  c_bench->add_option("--max-level", bench.max_level,
                      "conditioning-level cap (-1: none)");
  add_penreg_flags(c_bench, bench.penreg);
  c_bench->callback([&]() { run_bench(bench); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const penpc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const penpc::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
