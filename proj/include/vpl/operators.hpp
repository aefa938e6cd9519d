#pragma once

#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "vpl/error.hpp"
#include "vpl/graph.hpp"

namespace vpl {

/// Row i holds the label-score vector u(x_i).
using LabelFunction = Eigen::MatrixXd;

namespace detail {

template <typename Derived>
void check_rows(const Graph& g, const Eigen::MatrixBase<Derived>& u, const char* op) {
  if (u.rows() != g.size()) {
    throw Error(Errc::invalid_input, std::string(op) + ": label function has " +
                                         std::to_string(u.rows()) + " rows, graph has " +
                                         std::to_string(g.size()) + " nodes");
  }
}

template <typename Scalar>
decltype(auto) adjacency_as(const Graph& g) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return (g.adjacency());
  } else {
    return g.adjacency().template cast<Scalar>();
  }
}

}  // namespace detail

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// (Lu)_i = sum_j w_ij (u_i - u_j), applied column by column.
template <typename Derived>
MatrixX<typename Derived::Scalar> laplacian_apply(const Graph& g,
                                                  const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::check_rows(g, u, "laplacian_apply");
  const auto& w = detail::adjacency_as<Scalar>(g);
  MatrixX<Scalar> out = g.degrees().template cast<Scalar>().asDiagonal() * u;
  out.noalias() -= w * u;
  return out;
}

/// Degree-weighted mean sum_i q_i u_i.
template <typename Derived>
RowVectorX<typename Derived::Scalar> weighted_mean(const Graph& g,
                                                   const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::check_rows(g, u, "weighted_mean");
  return g.degree_weights().template cast<Scalar>().transpose() * u;
}

/// Degree-weighted spread sum_i q_i |u_i - mean|^2.
template <typename Derived>
typename Derived::Scalar variance(const Graph& g, const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::check_rows(g, u, "variance");
  const RowVectorX<Scalar> mean = weighted_mean(g, u);
  const auto q = g.degree_weights().template cast<Scalar>();
  return q.dot((u.rowwise() - mean).rowwise().squaredNorm());
}

/// Smoothness over ordered pairs, sum_{i,j} w_ij |u_i - u_j|^2 / 2, minus
/// lambda * variance. Every undirected edge therefore contributes twice.
template <typename Derived>
typename Derived::Scalar objective_value(const Graph& g, const Eigen::MatrixBase<Derived>& u,
                                         double lambda) {
  using Scalar = typename Derived::Scalar;
  detail::check_rows(g, u, "objective_value");
  if (!(lambda >= 0.0)) {
    throw Error(Errc::invalid_parameter, "objective_value: lambda must be >= 0");
  }
  const auto& w = g.adjacency();
  Scalar smooth(0);
  for (Index i = 0; i < w.outerSize(); ++i) {
    for (Graph::SparseMatrix::InnerIterator it(w, i); it; ++it) {
      smooth += Scalar(0.5) * Scalar(it.value()) * (u.row(i) - u.row(it.col())).squaredNorm();
    }
  }
  if (lambda == 0.0) return smooth;
  return smooth - Scalar(lambda) * variance(g, u);
}

}  // namespace vpl
