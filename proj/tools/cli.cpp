#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vpl/bench.hpp"
#include "vpl/continuum.hpp"
#include "vpl/error.hpp"
#include "vpl/io.hpp"
#include "vpl/knn.hpp"
#include "vpl/solvers.hpp"

namespace vpl::cli {

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ill_posed: return kIllPosed;
    case Errc::divergence: return kDivergence;
    default: return kUsage;
  }
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::format_error, "cannot write " + path);
  return out;
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::format_error, "cannot open " + path);
  return in;
}

unsigned thread_budget() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VPL_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested >= 1) return static_cast<unsigned>(requested);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct BuildGraphArgs {
  std::string features;
  Index k = 10;
  std::string out;
};

int cmd_build_graph(const BuildGraphArgs& a, std::ostream& out) {
  auto in = open_for_read(a.features);
  const Eigen::MatrixXd features = read_feature_csv(in, a.features);
  const Graph g = build_knn_graph(features, a.k);
  auto file = open_for_write(a.out);
  write_edge_list(file, g);
  const auto& values = g.adjacency().coeffs();
  out << "n=" << g.size() << " edges=" << g.edge_count()
      << " min_weight=" << format_double(values.minCoeff())
      << " max_weight=" << format_double(values.maxCoeff()) << '\n';
  return kOk;
}

struct SolveArgs {
  std::string graph;
  std::string labels;
  std::string method = "poisson";
  double lambda = 0.1;
  double tol = 1e-8;
  int max_iter = 10000;
  Index classes = 0;
  bool variance_unlabeled_only = false;
  std::string out;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto method = parse_method(a.method);
  if (!method) throw Error(Errc::invalid_parameter, "unknown method '" + a.method + "'");

  auto gin = open_for_read(a.graph);
  EdgeList list = read_edge_list(gin, a.graph);
  for (const auto& w : list.warnings) err << "warning: " << w << '\n';
  auto lin = open_for_read(a.labels);
  const LabelSet labels =
      read_label_set(lin, a.classes > 0 ? std::optional<Index>(a.classes) : std::nullopt, a.labels);
  const Index n = std::max(list.max_node, labels.entries().back().node) + 1;
  Graph g = [&] {
    try {
      return Graph::from_edges(n, list.edges);
    } catch (const Error& e) {
      throw Error(Errc::format_error, a.graph + ": " + e.what());
    }
  }();

  SolverConfig cfg;
  cfg.method = *method;
  cfg.lambda = a.lambda;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.variance_on_labeled = !a.variance_unlabeled_only;
  const SolveResult result = solve(g, labels, cfg);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';

  auto pred = open_for_write(a.out);
  for (Index c : predict(result.u)) pred << c << '\n';

  const nlohmann::json sidecar{
      {"iterations", result.iterations},
      {"final_residual", result.final_residual},
      {"converged", result.converged},
      {"objective_value", objective_value(g, result.u, cfg.lambda)},
      {"warnings", result.warnings},
      {"config",
       {{"graph", a.graph},
        {"labels", a.labels},
        {"method", std::string(to_string(cfg.method))},
        {"lambda", cfg.lambda},
        {"tol", cfg.tol},
        {"max_iter", cfg.max_iter},
        {"classes", labels.num_classes()},
        {"variance_on_labeled", cfg.variance_on_labeled},
        {"out", a.out}}}};
  auto side = open_for_write(a.out + ".json");
  side << sidecar.dump(2) << '\n';

  out << "method=" << to_string(cfg.method) << " n=" << g.size()
      << " iterations=" << result.iterations
      << " final_residual=" << format_double(result.final_residual)
      << " converged=" << (result.converged ? "true" : "false") << '\n';
  return kOk;
}

struct BenchArgs {
  std::string features;
  std::string graph;
  std::string labels;
  Index knn = 10;
  std::string methods = "laplace,poisson,v_laplace,v_poisson";
  std::string labels_per_class = "1,2,3,4,5";
  int trials = 20;
  std::uint64_t seed = 0;
  double lambda = 0.1;
  double tol = 1e-8;
  int max_iter = 10000;
  std::string format = "text";
  std::string out;
  std::string table;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.features.empty() == a.graph.empty()) {
    throw Error(Errc::invalid_parameter,
                "exactly one of --dataset-features or --dataset-graph is required");
  }
  std::vector<Method> methods;
  std::vector<std::string> method_names;
  for (const auto& name : split_list(a.methods)) {
    const auto m = parse_method(name);
    if (!m) throw Error(Errc::invalid_parameter, "unknown method '" + name + "'");
    if (std::find(methods.begin(), methods.end(), *m) != methods.end()) {
      err << "warning: duplicate method '" << name << "' ignored\n";
      continue;
    }
    methods.push_back(*m);
    method_names.emplace_back(to_string(*m));
  }
  if (methods.empty()) throw Error(Errc::invalid_parameter, "--methods is empty");

  std::vector<Index> settings;
  for (const auto& item : split_list(a.labels_per_class)) {
    Index m = 0;
    try {
      std::size_t used = 0;
      m = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::invalid_parameter, "bad labels-per-class entry '" + item + "'");
    }
    if (m < 1) throw Error(Errc::invalid_parameter, "labels per class must be >= 1");
    if (std::find(settings.begin(), settings.end(), m) == settings.end()) settings.push_back(m);
  }
  if (settings.empty()) throw Error(Errc::invalid_parameter, "--labels-per-class is empty");

  TableFormat format = TableFormat::text;
  if (a.format == "tsv") {
    format = TableFormat::tsv;
  } else if (a.format == "json") {
    format = TableFormat::json;
  } else if (a.format != "text") {
    throw Error(Errc::invalid_parameter, "unknown table format '" + a.format + "'");
  }

  const Dataset ds = a.features.empty() ? load_graph_dataset(a.graph, a.labels)
                                        : load_feature_dataset(a.features, a.labels);
  for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
  const BenchProblem problem = prepare_problem(ds, a.knn);

  SolverConfig cfg;
  cfg.lambda = a.lambda;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  const unsigned threads = thread_budget();

  std::vector<TrialReport> reports;
  std::vector<std::string> failures;
  for (Method m : methods) {
    for (Index lpc : settings) {
      reports.push_back(run_trials(problem, m, lpc, a.trials, a.seed, cfg, threads, &failures));
    }
  }
  for (const auto& f : failures) err << "failed " << f << '\n';

  const std::string table = emit_table(reports, format);
  out << table;
  if (!a.table.empty()) {
    auto file = open_for_write(a.table);
    file << table;
  }
  if (!a.out.empty()) {
    nlohmann::json doc;
    doc["config"] = {{"dataset_features", a.features},
                     {"dataset_graph", a.graph},
                     {"dataset_labels", a.labels},
                     {"knn", a.knn},
                     {"methods", method_names},
                     {"labels_per_class", settings},
                     {"trials", a.trials},
                     {"seed", a.seed},
                     {"lambda", a.lambda},
                     {"tol", a.tol},
                     {"max_iter", a.max_iter}};
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : reports) doc["reports"].push_back(to_json(r));
    auto file = open_for_write(a.out);
    file << doc.dump(2) << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  double lambda = 4.0;
  Index grid = 128;
  std::string csv;
};

int cmd_verify_pde(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  ContinuumConfig cfg;
  cfg.lambda = a.lambda;
  cfg.n_grid = a.grid;
  cfg.validate();

  bool ok = true;
  out << std::setprecision(6);
  for (Profile p : {Profile::cosine, Profile::sine}) {
    const ResidualStats s = ode_residual_check(cfg, p);
    const bool pass = s.refinement_ratio >= kRatioLow && s.refinement_ratio <= kRatioHigh;
    out << (p == Profile::cosine ? "cos" : "sin") << " residual: max=" << s.max_residual
        << " mean=" << s.mean_residual << " refined_max=" << s.refined_max_residual
        << " ratio=" << s.refinement_ratio << (pass ? " ok" : " FAIL") << '\n';
    if (!pass) {
      err << "verification failed: refinement ratio " << s.refinement_ratio << " outside ["
          << kRatioLow << ", " << kRatioHigh << "]\n";
      ok = false;
    }
    if (p == Profile::cosine && !a.csv.empty()) {
      auto file = open_for_write(a.csv);
      write_residual_csv(file, s);
    }
  }

  const ContinuumComparison c = discrete_vs_continuum(cfg);
  const bool enforce = cfg.n_grid >= 128;
  const bool pass = c.correlation >= kMinCorrelation;
  out << "path-graph mode: lambda_prime=" << c.discrete_eigenvalue
      << " lambda_hat=" << c.lambda_hat << " correlation=" << std::setprecision(9)
      << c.correlation << " null_correlation=" << c.null_correlation
      << (pass ? " ok" : (enforce ? " FAIL" : " (below 128 points, not enforced)")) << '\n';
  if (enforce && !pass) {
    err << "verification failed: sinusoid correlation " << c.correlation << " < "
        << kMinCorrelation << '\n';
    ok = false;
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph semi-supervised learning with Laplace, Poisson and variance-enhanced solvers",
               "vpl"};
  app.require_subcommand(1);

  BuildGraphArgs build;
  auto* build_cmd = app.add_subcommand("build-graph", "Build a k-NN graph from a feature CSV");
  build_cmd->add_option("--features", build.features, "Feature CSV")->required();
  build_cmd->add_option("--k", build.k, "Neighbours per node")->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--out", build.out, "Output edge list")->required();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Propagate labels on a graph");
  solve_cmd->add_option("--graph", solve_args.graph, "Edge list")->required();
  solve_cmd->add_option("--labels", solve_args.labels, "Label set, 'node class' per line")->required();
  solve_cmd->add_option("--method", solve_args.method,
                        "laplace | poisson | v_laplace | v_poisson")->capture_default_str();
  solve_cmd->add_option("--lambda", solve_args.lambda, "Variance weight")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--tol", solve_args.tol, "Relative residual tolerance")
      ->capture_default_str()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "Iteration cap")
      ->capture_default_str()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--classes", solve_args.classes, "Class count (default: inferred)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--variance-unlabeled-only", solve_args.variance_unlabeled_only,
                      "V-Poisson: apply the variance shift at unlabeled nodes only");
  solve_cmd->add_option("--out", solve_args.out, "Prediction file; sidecar JSON at <out>.json")
      ->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded accuracy trials over methods and label counts");
  auto* feat_opt = bench_cmd->add_option("--dataset-features", bench.features, "Feature CSV");
  auto* graph_opt = bench_cmd->add_option("--dataset-graph", bench.graph, "Edge list");
  feat_opt->excludes(graph_opt);
  bench_cmd->add_option("--dataset-labels", bench.labels, "One class per line")->required();
  bench_cmd->add_option("--knn", bench.knn, "k for the k-NN graph (features only)")
      ->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods")->capture_default_str();
  bench_cmd->add_option("--labels-per-class", bench.labels_per_class, "Comma-separated counts")
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell")->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--lambda", bench.lambda, "Variance weight")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--tol", bench.tol, "Relative residual tolerance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iter", bench.max_iter, "Iteration cap")->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--format", bench.format, "Table format: text | tsv | json")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "JSON report path");
  bench_cmd->add_option("--table", bench.table, "Also write the table here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-pde", "Check the 1-D continuum reduction");
  verify_cmd->add_option("--lambda", verify.lambda, "ODE coefficient")->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--grid", verify.grid, "Grid points")->capture_default_str()
      ->check(CLI::Range(kMinGridPoints, Index{1} << 16));
  verify_cmd->add_option("--csv", verify.csv, "Write (x, v, residual) samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*build_cmd) return cmd_build_graph(build, out);
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*verify_cmd) return cmd_verify_pde(verify, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace vpl::cli
