#include <algorithm>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "vpl/error.hpp"
#include "vpl/graph.hpp"

using namespace vpl;

namespace {

bool bitwise_symmetric(const Graph& g) {
  const Graph::SparseMatrix t = g.adjacency().transpose();
  const auto& w = g.adjacency();
  return t.nonZeros() == w.nonZeros() &&
         std::equal(w.valuePtr(), w.valuePtr() + w.nonZeros(), t.valuePtr()) &&
         std::equal(w.innerIndexPtr(), w.innerIndexPtr() + w.nonZeros(), t.innerIndexPtr());
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected vpl::Error");
  return Errc::invalid_input;
}

}  // namespace

TEST_CASE("from_edges merges repeated edges by max and symmetrizes") {
  const std::vector<Edge> edges{{0, 1, 0.5}, {1, 0, 0.8}, {1, 2, 0.25}, {1, 2, 0.1}};
  const Graph g = Graph::from_edges(3, edges);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacency().coeff(0, 1) == 0.8);
  CHECK(g.adjacency().coeff(1, 0) == 0.8);
  CHECK(g.adjacency().coeff(2, 1) == 0.25);
  CHECK(bitwise_symmetric(g));
  CHECK(g.degrees()[1] == doctest::Approx(1.05));
  CHECK(g.degree_weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("column indices are sorted within each row") {
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 3}, {0, 1}, {0, 2}, {2, 3}});
  const auto& w = g.adjacency();
  for (Index i = 0; i < w.outerSize(); ++i) {
    const auto* begin = w.innerIndexPtr() + w.outerIndexPtr()[i];
    const auto* end = w.innerIndexPtr() + w.outerIndexPtr()[i + 1];
    CHECK(std::is_sorted(begin, end));
  }
}

TEST_CASE("construction invariants on random graphs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = test::random_connected_graph(5 + static_cast<Index>(seed % 40), seed);
    CHECK(bitwise_symmetric(g));
    CHECK(std::abs(g.degree_weights().sum() - 1.0) <= 1e-12);
    CHECK(g.degree_weights().minCoeff() > 0.0);
    const Eigen::VectorXd row_sums = g.adjacency() * Eigen::VectorXd::Ones(g.size());
    CHECK(((row_sums - g.degrees()).cwiseAbs().array() <= 1e-12 * g.degrees().array()).all());
    for (Index i = 0; i < g.size(); ++i) CHECK(g.adjacency().coeff(i, i) == 0.0);
  }
}

TEST_CASE("invalid edges are rejected") {
  CHECK(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 0, 1.0}, {1, 2, 1.0}}); }) ==
        Errc::invalid_input);
  CHECK(code_of([] { Graph::from_edges(2, std::vector<Edge>{{0, 1, -1.0}}); }) ==
        Errc::invalid_input);
  CHECK(code_of([] { Graph::from_edges(2, std::vector<Edge>{{0, 2, 1.0}}); }) ==
        Errc::invalid_input);
  CHECK(code_of([] { Graph::from_edges(2, std::vector<Edge>{{0, 1, std::nan("")}}); }) ==
        Errc::invalid_input);
}

TEST_CASE("isolated nodes are rejected") {
  CHECK(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}}); }) ==
        Errc::invalid_input);
  // A zero-weight edge does not connect anything.
  CHECK(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 0.0}}); }) ==
        Errc::invalid_input);
}

TEST_CASE("from_adjacency requires symmetry") {
  Graph::SparseMatrix w(2, 2);
  w.insert(0, 1) = 1.0;
  w.insert(1, 0) = 0.5;
  CHECK(code_of([&] { Graph::from_adjacency(w); }) == Errc::invalid_input);
  w.coeffRef(1, 0) = 1.0;
  CHECK(Graph::from_adjacency(w).edge_count() == 1);
}

TEST_CASE("edges() lists each undirected edge once") {
  const Graph g = test::random_connected_graph(20, 7);
  const auto edges = g.edges();
  CHECK(static_cast<Index>(edges.size()) == g.edge_count());
  const Graph rebuilt = Graph::from_edges(g.size(), edges);
  CHECK(rebuilt.adjacency().isApprox(g.adjacency(), 0.0));
}

TEST_CASE("connected components") {
  const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {2, 3}, {3, 4}});
  CHECK(connected_components(g) == std::vector<Index>{0, 0, 1, 1, 1});
  const auto one = connected_components(test::path(6));
  CHECK(std::all_of(one.begin(), one.end(), [](Index c) { return c == 0; }));
}
