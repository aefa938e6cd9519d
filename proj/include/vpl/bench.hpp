#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vpl/graph.hpp"
#include "vpl/io.hpp"
#include "vpl/solvers.hpp"

namespace vpl {

/// A dataset with its graph fixed; every trial reuses it and resamples only
/// the labeled split.
struct BenchProblem {
  std::string name;
  Graph graph;
  std::vector<Index> true_labels;
  Index num_classes = 0;
};

/// Uses the prebuilt graph when present, otherwise builds the k-NN graph.
BenchProblem prepare_problem(const Dataset& ds, Index knn_k);

struct TrialReport {
  std::string dataset;
  std::string method;
  Index labels_per_class = 0;
  int trials = 0;
  /// Accuracy on unlabeled nodes for each successful trial, in trial order.
  std::vector<double> accuracies;
  double mean = 0.0;
  /// Population standard deviation of `accuracies`.
  double std = 0.0;
  int failures = 0;
  /// Seed of every trial, including failed ones.
  std::vector<std::uint64_t> seeds;

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

/// Runs `trials` seeded label splits. Trial t samples with
/// derive_seed(base_seed, t), so the report does not depend on scheduling.
/// Divergent or ill-posed solves count as failures; their messages are
/// appended to `failure_log` when given.
TrialReport run_trials(const BenchProblem& problem, Method method, Index labels_per_class,
                       int trials, std::uint64_t base_seed, SolverConfig cfg,
                       unsigned threads = 1, std::vector<std::string>* failure_log = nullptr);

/// Fraction of `predicted` matching `truth` over nodes not in `labels`.
double unlabeled_accuracy(std::span<const Index> predicted, std::span<const Index> truth,
                          const LabelSet& labels);

enum class TableFormat { text, tsv, json };

/// Methods as rows (first-appearance order), labels-per-class as columns,
/// cells "mean (std)" in percent with one decimal. JSON keeps full precision.
std::string emit_table(std::span<const TrialReport> reports, TableFormat format);

nlohmann::json to_json(const TrialReport& report);
TrialReport report_from_json(const nlohmann::json& j);

}  // namespace vpl
