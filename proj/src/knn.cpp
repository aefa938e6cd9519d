#include "vpl/knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "vpl/error.hpp"

namespace vpl {

Graph build_knn_graph(const Eigen::Ref<const Eigen::MatrixXd>& features, Index k_neighbors) {
  const Index n = features.rows();
  if (n < 2) throw Error(Errc::invalid_input, "k-NN graph needs at least two points");
  if (k_neighbors < 1 || k_neighbors >= n) {
    throw Error(Errc::invalid_parameter, "k_neighbors must lie in [1, " + std::to_string(n - 1) +
                                             "], got " + std::to_string(k_neighbors));
  }
  if (!features.allFinite()) throw Error(Errc::invalid_input, "features contain NaN or Inf");

  // Samples as columns keeps each distance sweep contiguous.
  const Eigen::MatrixXd points = features.transpose();
  const auto k = static_cast<std::size_t>(k_neighbors);

  std::vector<Index> neighbors(static_cast<std::size_t>(n) * k);
  std::vector<double> neighbor_dist2(neighbors.size());
  std::vector<double> sigma(static_cast<std::size_t>(n));

  Eigen::VectorXd dist2(n);
  std::vector<Index> order(static_cast<std::size_t>(n - 1));
  for (Index i = 0; i < n; ++i) {
    dist2 = (points.colwise() - points.col(i)).colwise().squaredNorm().transpose();
    std::size_t pos = 0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) order[pos++] = j;
    }
    auto closer = [&](Index a, Index b) {
      return dist2[a] < dist2[b] || (dist2[a] == dist2[b] && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      closer);
    for (std::size_t r = 0; r < k; ++r) {
      neighbors[i * k + r] = order[r];
      neighbor_dist2[i * k + r] = dist2[order[r]];
    }
    sigma[i] = std::sqrt(dist2[order[k - 1]]);
  }

  double smallest_positive = std::numeric_limits<double>::infinity();
  for (double s : sigma) {
    if (s > 0.0) smallest_positive = std::min(smallest_positive, s);
  }
  const double fallback = std::isfinite(smallest_positive) ? smallest_positive : 1.0;
  for (double& s : sigma) {
    if (s == 0.0) s = fallback;
  }

  std::vector<Edge> edges;
  edges.reserve(neighbors.size());
  for (Index i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      const Index j = neighbors[i * k + r];
      const double w = std::exp(-neighbor_dist2[i * k + r] / (sigma[i] * sigma[j]));
      // exp underflow would silently drop the edge; keep it at the smallest weight.
      edges.push_back(Edge{i, j, std::max(w, std::numeric_limits<double>::min())});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace vpl
