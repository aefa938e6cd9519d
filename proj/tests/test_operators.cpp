#include <cmath>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "vpl/error.hpp"
#include "vpl/operators.hpp"

using namespace vpl;

TEST_CASE("laplacian annihilates constants") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = test::random_connected_graph(30, seed);
    const Eigen::MatrixXd u = Eigen::RowVector3d(0.3, -2.0, 7.5).replicate(g.size(), 1);
    CHECK(laplacian_apply(g, u).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("laplacian on path and star") {
  const Eigen::Vector3d u(0.0, 1.0, 0.0);
  const Eigen::VectorXd lu = laplacian_apply(test::path(3), u);
  CHECK(lu.isApprox(Eigen::Vector3d(-1.0, 2.0, -1.0)));

  const Eigen::Vector4d v(1.0, 0.0, 0.0, 0.0);
  const Eigen::VectorXd lv = laplacian_apply(test::star(3), v);
  CHECK(lv.isApprox(Eigen::Vector4d(3.0, -1.0, -1.0, -1.0)));
}

TEST_CASE("laplacian accepts expressions and other scalars") {
  const Graph g = test::path(3);
  const Eigen::Vector3d u(0.0, 1.0, 0.0);
  const Eigen::VectorXd doubled = laplacian_apply(g, 2.0 * u);
  CHECK(doubled.isApprox(Eigen::Vector3d(-2.0, 4.0, -2.0)));
  const Eigen::VectorXf as_float = laplacian_apply(g, u.cast<float>());
  CHECK(as_float.isApprox(Eigen::Vector3f(-1.0f, 2.0f, -1.0f)));
}

TEST_CASE("laplacian is positive semidefinite") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = test::random_connected_graph(25, 100 + seed);
    CounterRng rng(seed, 1);
    Eigen::MatrixXd u(g.size(), 2);
    for (Index i = 0; i < u.size(); ++i) u.data()[i] = rng.uniform(-1.0, 1.0);
    const Eigen::MatrixXd lu = laplacian_apply(g, u);
    CHECK(u.cwiseProduct(lu).sum() >= -1e-10);
  }
}

TEST_CASE("weighted mean") {
  const Graph edge = test::path(2);
  CHECK(weighted_mean(edge, Eigen::Vector2d(0.0, 1.0))[0] == doctest::Approx(0.5));

  const Graph g = test::random_connected_graph(15, 3);
  const Eigen::MatrixXd constant = Eigen::RowVector2d(4.0, -1.0).replicate(g.size(), 1);
  CHECK(weighted_mean(g, constant).isApprox(Eigen::RowVector2d(4.0, -1.0)));

  Eigen::MatrixXd one_hot = Eigen::MatrixXd::Zero(g.size(), 3);
  for (Index i = 0; i < g.size(); ++i) one_hot(i, (i * 7) % 3) = 1.0;
  const Eigen::RowVectorXd mean = weighted_mean(g, one_hot);
  CHECK(mean.minCoeff() >= 0.0);
  CHECK(mean.maxCoeff() <= 1.0);
  CHECK(mean.sum() == doctest::Approx(1.0));
}

TEST_CASE("variance") {
  CHECK(variance(test::path(2), Eigen::Vector2d(0.0, 1.0)) == doctest::Approx(0.25));
  const Graph g = test::random_connected_graph(12, 4);
  CHECK(variance(g, Eigen::VectorXd::Constant(g.size(), 3.0)) == doctest::Approx(0.0));
}

TEST_CASE("variance vanishes exactly when all rows agree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = test::random_connected_graph(20, 200 + seed);
    CounterRng rng(seed, 2);
    Eigen::MatrixXd u = Eigen::RowVector2d(rng.uniform(), rng.uniform()).replicate(g.size(), 1);
    CHECK(variance(g, u) <= 1e-10);
    u(static_cast<Index>(rng.below(static_cast<std::uint64_t>(g.size()))), 0) += 0.01;
    CHECK(variance(g, u) > 1e-10);
    for (Index i = 0; i < u.size(); ++i) u.data()[i] = rng.uniform(-1.0, 1.0);
    CHECK(variance(g, u) >= 0.0);
  }
}

TEST_CASE("objective counts ordered pairs") {
  const Graph g = test::path(3);
  const Eigen::Vector3d u(0.0, 1.0, 0.0);
  // Four ordered pairs (0,1),(1,0),(1,2),(2,1), each contributing 1/2.
  CHECK(objective_value(g, u, 0.0) == doctest::Approx(2.0));
  CHECK(objective_value(g, Eigen::Vector3d::Constant(5.0), 0.3) == doctest::Approx(0.0));
  // lambda term: Var = q.(u - ubar)^2 with q = (1/4, 1/2, 1/4), ubar = 1/2.
  CHECK(objective_value(g, u, 1.0) == doctest::Approx(2.0 - 0.25));
}

TEST_CASE("objective smoothness matches u^T L u and stays nonnegative") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = test::random_connected_graph(18, 300 + seed);
    CounterRng rng(seed, 3);
    Eigen::MatrixXd u(g.size(), 3);
    for (Index i = 0; i < u.size(); ++i) u.data()[i] = rng.uniform(-2.0, 2.0);
    const double smooth = objective_value(g, u, 0.0);
    CHECK(smooth >= 0.0);
    CHECK(smooth == doctest::Approx(u.cwiseProduct(laplacian_apply(g, u)).sum()).epsilon(1e-12));
  }
}

TEST_CASE("dimension mismatch is invalid input") {
  const Graph g = test::path(3);
  const Eigen::Vector2d wrong(1.0, 2.0);
  CHECK_THROWS_AS(laplacian_apply(g, wrong), Error);
  CHECK_THROWS_AS(weighted_mean(g, wrong), Error);
  CHECK_THROWS_AS(variance(g, wrong), Error);
  CHECK_THROWS_AS(objective_value(g, wrong, 0.0), Error);
  CHECK_THROWS_AS(objective_value(g, Eigen::Vector3d::Zero(), -1.0), Error);
}
