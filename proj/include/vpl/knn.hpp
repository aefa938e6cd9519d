#pragma once

#include <Eigen/Dense>

#include "vpl/graph.hpp"

namespace vpl {

/// Exact k-nearest-neighbour graph over the rows of `features` with
/// self-tuning Gaussian weights w_ij = exp(-|x_i - x_j|^2 / (s_i s_j)), where
/// s_i is the distance from x_i to its k-th neighbour. Zero bandwidths
/// (duplicate points) are replaced by the smallest positive bandwidth, or 1
/// when every bandwidth is zero. The edge set is symmetrized by max.
///
/// Neighbour ties are broken by node index, so the result is deterministic.
Graph build_knn_graph(const Eigen::Ref<const Eigen::MatrixXd>& features, Index k_neighbors);

}  // namespace vpl
