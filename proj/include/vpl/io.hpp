#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vpl/graph.hpp"
#include "vpl/labels.hpp"

namespace vpl {

/// A benchmark input: either raw features (a graph is built later) or a
/// prebuilt graph, plus ground-truth classes for every node.
struct Dataset {
  std::string name;
  std::optional<Eigen::MatrixXd> features;
  std::optional<Graph> graph;
  std::vector<Index> true_labels;
  Index num_classes = 0;
  std::vector<std::string> warnings;

  Index size() const noexcept { return static_cast<Index>(true_labels.size()); }
  std::vector<Index> class_counts() const;
};

/// Comma-separated floats, one sample per line, no header.
Eigen::MatrixXd read_feature_csv(std::istream& in, const std::string& source = "<features>");
void write_feature_csv(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXd>& features);

/// One nonnegative integer per line.
std::vector<Index> read_label_list(std::istream& in, const std::string& source = "<labels>");
void write_label_list(std::ostream& out, std::span<const Index> labels);

struct EdgeList {
  std::vector<Edge> edges;
  Index max_node = -1;
  std::vector<std::string> warnings;
};

/// `src dst [weight]` per line, 0-indexed, '#' comments. Self-loops are
/// dropped with a warning.
EdgeList read_edge_list(std::istream& in, const std::string& source = "<edges>");
/// Each undirected edge once (src < dst), weights in shortest round-trip form.
void write_edge_list(std::ostream& out, const Graph& g);

/// `node class` per line, '#' comments. Without `num_classes` the class
/// count is the largest class index plus one.
LabelSet read_label_set(std::istream& in, std::optional<Index> num_classes = std::nullopt,
                        const std::string& source = "<label set>");
void write_label_set(std::ostream& out, const LabelSet& labels);

Dataset load_feature_dataset(const std::filesystem::path& features_path,
                             const std::filesystem::path& labels_path);
/// The node count is the number of labels; edges naming a larger index are a
/// format error.
Dataset load_graph_dataset(const std::filesystem::path& edges_path,
                           const std::filesystem::path& labels_path);

void save_feature_dataset(const Dataset& ds, const std::filesystem::path& features_path,
                          const std::filesystem::path& labels_path);
void save_graph_dataset(const Dataset& ds, const std::filesystem::path& edges_path,
                        const std::filesystem::path& labels_path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace vpl
