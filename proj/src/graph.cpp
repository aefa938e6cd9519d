#include "vpl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "vpl/error.hpp"

namespace vpl {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_input: return "invalid-input";
    case Errc::format_error: return "format-error";
    case Errc::ill_posed: return "ill-posed";
    case Errc::divergence: return "divergence";
    case Errc::oracle_size: return "oracle-size";
    case Errc::scan_error: return "scan-error";
    case Errc::insufficient_labels: return "insufficient-labels";
    case Errc::no_unlabeled: return "no-unlabeled";
    case Errc::layout_error: return "layout-error";
  }
  return "unknown";
}

namespace {

void check_edge(Index n, const Edge& e) {
  if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
    throw Error(Errc::invalid_input, "edge (" + std::to_string(e.src) + ", " +
                                         std::to_string(e.dst) + ") out of range for " +
                                         std::to_string(n) + " nodes");
  }
  if (e.src == e.dst) {
    throw Error(Errc::invalid_input, "self-loop at node " + std::to_string(e.src));
  }
  if (!std::isfinite(e.weight) || e.weight < 0.0) {
    throw Error(Errc::invalid_input, "edge (" + std::to_string(e.src) + ", " +
                                         std::to_string(e.dst) +
                                         ") has a negative or non-finite weight");
  }
}

}  // namespace

Graph Graph::from_edges(Index n, std::span<const Edge> edges) {
  if (n < 1) throw Error(Errc::invalid_input, "graph needs at least one node");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges.size());
  for (const auto& e : edges) {
    check_edge(n, e);
    if (e.weight == 0.0) continue;
    triplets.emplace_back(e.src, e.dst, e.weight);
    triplets.emplace_back(e.dst, e.src, e.weight);
  }
  SparseMatrix w(n, n);
  w.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double a, double b) { return std::max(a, b); });
  w.makeCompressed();
  return Graph(std::move(w));
}

Graph Graph::from_adjacency(SparseMatrix adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw Error(Errc::invalid_input, "adjacency must be square");
  }
  if (adjacency.rows() < 1) throw Error(Errc::invalid_input, "graph needs at least one node");
  adjacency.prune(0.0);
  adjacency.makeCompressed();
  for (Index i = 0; i < adjacency.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(adjacency, i); it; ++it) {
      check_edge(adjacency.rows(), Edge{i, it.col(), it.value()});
    }
  }
  const SparseMatrix transposed = adjacency.transpose();
  const bool symmetric =
      transposed.nonZeros() == adjacency.nonZeros() &&
      std::equal(adjacency.outerIndexPtr(), adjacency.outerIndexPtr() + adjacency.outerSize() + 1,
                 transposed.outerIndexPtr()) &&
      std::equal(adjacency.innerIndexPtr(), adjacency.innerIndexPtr() + adjacency.nonZeros(),
                 transposed.innerIndexPtr()) &&
      std::equal(adjacency.valuePtr(), adjacency.valuePtr() + adjacency.nonZeros(),
                 transposed.valuePtr());
  if (!symmetric) throw Error(Errc::invalid_input, "adjacency is not symmetric");
  return Graph(std::move(adjacency));
}

Graph::Graph(SparseMatrix adjacency) : adjacency_(std::move(adjacency)) {
  const Index n = adjacency_.rows();
  degrees_.resize(n);
  for (Index i = 0; i < n; ++i) {
    double d = 0.0;
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) d += it.value();
    if (!(d > 0.0)) {
      throw Error(Errc::invalid_input, "node " + std::to_string(i) +
                                           " is isolated; every node needs an incident edge");
    }
    degrees_[i] = d;
  }
  total_degree_ = degrees_.sum();
  degree_weights_ = degrees_ / total_degree_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (Index i = 0; i < adjacency_.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) {
      if (it.col() > i) out.push_back(Edge{i, it.col(), it.value()});
    }
  }
  return out;
}

std::vector<Index> connected_components(const Graph& g) {
  const Index n = g.size();
  std::vector<Index> component(static_cast<std::size_t>(n), -1);
  Index next = 0;
  std::queue<Index> frontier;
  for (Index start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    component[start] = next;
    frontier.push(start);
    while (!frontier.empty()) {
      const Index i = frontier.front();
      frontier.pop();
      for (Graph::SparseMatrix::InnerIterator it(g.adjacency(), i); it; ++it) {
        if (component[it.col()] < 0) {
          component[it.col()] = next;
          frontier.push(it.col());
        }
      }
    }
    ++next;
  }
  return component;
}

}  // namespace vpl
