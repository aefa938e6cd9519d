#include "vpl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "vpl/error.hpp"
#include "vpl/knn.hpp"
#include "vpl/sampling.hpp"

namespace vpl {

BenchProblem prepare_problem(const Dataset& ds, Index knn_k) {
  if (ds.graph) return BenchProblem{ds.name, *ds.graph, ds.true_labels, ds.num_classes};
  if (!ds.features) throw Error(Errc::invalid_input, "dataset has neither features nor graph");
  return BenchProblem{ds.name, build_knn_graph(*ds.features, knn_k), ds.true_labels,
                      ds.num_classes};
}

double unlabeled_accuracy(std::span<const Index> predicted, std::span<const Index> truth,
                          const LabelSet& labels) {
  const auto mask = labels.labeled_mask(static_cast<Index>(truth.size()));
  std::size_t scored = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (mask[i]) continue;
    ++scored;
    correct += predicted[i] == truth[i] ? 1 : 0;
  }
  if (scored == 0) throw Error(Errc::no_unlabeled, "no unlabeled nodes to score");
  return static_cast<double>(correct) / static_cast<double>(scored);
}

TrialReport run_trials(const BenchProblem& problem, Method method, Index labels_per_class,
                       int trials, std::uint64_t base_seed, SolverConfig cfg, unsigned threads,
                       std::vector<std::string>* failure_log) {
  if (trials < 1) throw Error(Errc::invalid_parameter, "trials must be >= 1");
  if (labels_per_class < 1) throw Error(Errc::invalid_parameter, "labels per class must be >= 1");
  if (static_cast<Index>(problem.true_labels.size()) != problem.graph.size()) {
    throw Error(Errc::invalid_input, "label count does not match graph size");
  }
  std::vector<Index> counts(static_cast<std::size_t>(problem.num_classes), 0);
  for (Index c : problem.true_labels) ++counts[c];
  for (Index c = 0; c < problem.num_classes; ++c) {
    if (counts[c] < labels_per_class) {
      throw Error(Errc::insufficient_labels,
                  "class " + std::to_string(c) + " has " + std::to_string(counts[c]) +
                      " members, fewer than " + std::to_string(labels_per_class));
    }
  }
  if (problem.num_classes * labels_per_class >= problem.graph.size()) {
    throw Error(Errc::no_unlabeled, "no unlabeled nodes to score: every node would be labeled");
  }
  cfg.method = method;
  cfg.validate();

  TrialReport report;
  report.dataset = problem.name;
  report.method = std::string(to_string(method));
  report.labels_per_class = labels_per_class;
  report.trials = trials;
  report.seeds.resize(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) report.seeds[t] = derive_seed(base_seed, static_cast<std::uint64_t>(t));

  struct Outcome {
    std::optional<double> accuracy;
    std::string failure;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      const LabelSet labels = sample_label_set(problem.true_labels, problem.num_classes,
                                               labels_per_class, report.seeds[t]);
      try {
        const SolveResult result = solve(problem.graph, labels, cfg);
        outcomes[t].accuracy =
            unlabeled_accuracy(predict(result.u), problem.true_labels, labels);
      } catch (const Error& e) {
        if (e.code() != Errc::divergence && e.code() != Errc::ill_posed) throw;
        outcomes[t].failure = "trial " + std::to_string(t) + ": " + e.what();
      }
    }
  };
  const unsigned pool = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(trials));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::exception_ptr> errors(pool);
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < pool; ++w) {
        workers.emplace_back([&, w] {
          try {
            worker();
          } catch (...) {
            errors[w] = std::current_exception();
            next = trials;
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const auto& o : outcomes) {
    if (o.accuracy) {
      report.accuracies.push_back(*o.accuracy);
    } else {
      ++report.failures;
      if (failure_log) failure_log->push_back(o.failure);
    }
  }
  if (report.accuracies.empty()) {
    report.mean = std::numeric_limits<double>::quiet_NaN();
    report.std = std::numeric_limits<double>::quiet_NaN();
  } else {
    const auto count = static_cast<double>(report.accuracies.size());
    double sum = 0.0;
    for (double a : report.accuracies) sum += a;
    report.mean = sum / count;
    double sq = 0.0;
    for (double a : report.accuracies) sq += (a - report.mean) * (a - report.mean);
    report.std = std::sqrt(sq / count);
  }
  return report;
}

namespace {

std::string cell(const TrialReport& r) {
  if (!std::isfinite(r.mean)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f (%.1f)", 100.0 * r.mean, 100.0 * r.std);
  return buf;
}

}  // namespace

std::string emit_table(std::span<const TrialReport> reports, TableFormat format) {
  if (reports.empty()) throw Error(Errc::layout_error, "no reports to tabulate");

  if (format == TableFormat::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }

  std::vector<std::string> methods;
  std::map<std::string, std::map<Index, const TrialReport*>> grid;
  for (const auto& r : reports) {
    if (!grid.contains(r.method)) methods.push_back(r.method);
    if (!grid[r.method].emplace(r.labels_per_class, &r).second) {
      throw Error(Errc::layout_error, "duplicate report for " + r.method + " at " +
                                          std::to_string(r.labels_per_class) + " labels/class");
    }
  }
  std::set<Index> columns;
  for (const auto& [m, row] : grid) {
    for (const auto& [lpc, r] : row) columns.insert(lpc);
  }
  for (const auto& [m, row] : grid) {
    if (row.size() != columns.size()) {
      throw Error(Errc::layout_error,
                  "method " + m + " does not cover the same labels-per-class settings");
    }
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Labels/Class"});
  for (Index c : columns) rows.back().push_back(std::to_string(c));
  for (const auto& m : methods) {
    rows.push_back({m});
    for (Index c : columns) rows.back().push_back(cell(*grid[m][c]));
  }

  std::ostringstream out;
  if (format == TableFormat::tsv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const TrialReport& r) {
  auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  return nlohmann::json{{"dataset", r.dataset},
                        {"method", r.method},
                        {"labels_per_class", r.labels_per_class},
                        {"trials", r.trials},
                        {"mean", number(r.mean)},
                        {"std", number(r.std)},
                        {"accuracies", r.accuracies},
                        {"failures", r.failures},
                        {"seeds", r.seeds}};
}

TrialReport report_from_json(const nlohmann::json& j) {
  auto number = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  try {
    TrialReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.labels_per_class = j.at("labels_per_class").get<Index>();
    r.trials = j.at("trials").get<int>();
    r.mean = number(j.at("mean"));
    r.std = number(j.at("std"));
    r.accuracies = j.at("accuracies").get<std::vector<double>>();
    r.failures = j.at("failures").get<int>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format_error, std::string("bad trial report JSON: ") + e.what());
  }
}

}  // namespace vpl
