#pragma once

#include <vector>

#include "vpl/graph.hpp"
#include "vpl/labels.hpp"
#include "vpl/solvers.hpp"

namespace vpl::detail {

void check_solver_inputs(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Throws ill-posed unless every node can reach a labeled node.
void require_reachable(const Graph& g, const LabelSet& labels);

/// Throws ill-posed unless the graph is a single component.
void require_connected(const Graph& g);

/// Diagonal of the variance shift: q_i, or q_i on unlabeled nodes only.
Eigen::VectorXd variance_shift(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Relative residual of the clamped system at unlabeled nodes:
/// |(Lu)_i - lambda q_i (u_i - ubar)| over the harmonic right-hand side.
double clamped_residual(const Graph& g, const LabelSet& labels, const Eigen::MatrixXd& u,
                        double lambda);

/// Relative residual of (L - lambda S) u = source, measured after removing
/// the component along q (the constraint multiplier direction).
double constrained_residual(const Graph& g, const Eigen::VectorXd& shift,
                            const Eigen::MatrixXd& source, const Eigen::MatrixXd& u,
                            double lambda);

}  // namespace vpl::detail
