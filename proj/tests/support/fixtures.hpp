#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "vpl/graph.hpp"
#include "vpl/io.hpp"
#include "vpl/labels.hpp"
#include "vpl/sampling.hpp"

namespace vpl::test {

inline Graph path(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph::from_edges(n, edges);
}

inline Graph complete(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return Graph::from_edges(n, edges);
}

inline Graph star(Index leaves) {
  std::vector<Edge> edges;
  for (Index i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph::from_edges(leaves + 1, edges);
}

/// Random spanning tree plus about n/2 extra edges, weights in [0.1, 1].
inline Graph random_connected_graph(Index n, std::uint64_t seed) {
  CounterRng rng(seed, 0x6A09E667);
  std::vector<Edge> edges;
  for (Index i = 1; i < n; ++i) {
    edges.push_back({static_cast<Index>(rng.below(static_cast<std::uint64_t>(i))), i,
                     rng.uniform(0.1, 1.0)});
  }
  for (Index e = 0; e < n / 2; ++e) {
    const auto a = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    const auto b = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    if (a != b) edges.push_back({a, b, rng.uniform(0.1, 1.0)});
  }
  return Graph::from_edges(n, edges);
}

/// `per_class` distinct random nodes for each of `k` classes.
inline LabelSet random_labels(Index n, Index k, Index per_class, std::uint64_t seed) {
  CounterRng rng(seed, 0xBB67AE85);
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[i] = i;
  for (Index i = 0; i < n; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
  }
  std::vector<LabelEntry> entries;
  for (Index c = 0; c < k; ++c) {
    for (Index r = 0; r < per_class; ++r) entries.push_back({order[c * per_class + r], c});
  }
  return LabelSet(k, entries);
}

/// Two tight clusters of `per_cluster` points, 10 units apart, class = cluster.
/// With k = per_cluster each node's farthest neighbour is the nearest point
/// of the other cluster, so the k-NN graph is connected by weak bridges.
inline Dataset two_clusters(Index per_cluster) {
  Dataset ds;
  ds.name = "two_clusters";
  ds.features = Eigen::MatrixXd(2 * per_cluster, 2);
  for (Index i = 0; i < 2 * per_cluster; ++i) {
    const Index cls = i / per_cluster;
    const double angle = 0.7 * static_cast<double>(i % per_cluster);
    (*ds.features)(i, 0) = 10.0 * static_cast<double>(cls) + 0.3 * std::cos(angle);
    (*ds.features)(i, 1) = 0.3 * std::sin(angle);
    ds.true_labels.push_back(cls);
  }
  ds.num_classes = 2;
  return ds;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("vpl_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name), std::ios::binary) << content;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace vpl::test
