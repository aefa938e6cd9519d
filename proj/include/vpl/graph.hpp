#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace vpl {

using Index = Eigen::Index;

struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 1.0;
};

/// Immutable undirected weighted graph.
///
/// The adjacency is stored as a row-major compressed sparse matrix with sorted
/// column indices. Construction enforces symmetry, nonnegative finite weights,
/// no self-loops and no isolated nodes, then caches the degrees
/// d_i = sum_j w_ij and the degree weights q_i = d_i / sum_j d_j.
class Graph {
 public:
  using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  /// Builds a graph from undirected edges. Each edge may be listed in either
  /// or both directions; repeated edges are merged by taking the maximum
  /// weight. Zero-weight edges are dropped.
  static Graph from_edges(Index n, std::span<const Edge> edges);

  /// Validates and adopts an adjacency matrix. It must already be symmetric.
  static Graph from_adjacency(SparseMatrix adjacency);

  Index size() const noexcept { return adjacency_.rows(); }
  Index edge_count() const noexcept { return adjacency_.nonZeros() / 2; }

  const SparseMatrix& adjacency() const noexcept { return adjacency_; }
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
  const Eigen::VectorXd& degree_weights() const noexcept { return degree_weights_; }
  double total_degree() const noexcept { return total_degree_; }

  /// Undirected edges with src < dst, in row-major order.
  std::vector<Edge> edges() const;

 private:
  explicit Graph(SparseMatrix adjacency);

  SparseMatrix adjacency_;
  Eigen::VectorXd degrees_;
  Eigen::VectorXd degree_weights_;
  double total_degree_ = 0.0;
};

/// Connected-component id per node, numbered in order of first appearance.
std::vector<Index> connected_components(const Graph& g);

}  // namespace vpl
