#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vpl/graph.hpp"
#include "vpl/labels.hpp"
#include "vpl/operators.hpp"

namespace vpl {

enum class Method { laplace, poisson, v_laplace, v_poisson };

std::string_view to_string(Method m) noexcept;
/// Accepts the canonical names ("laplace", "poisson", "v_laplace",
/// "v_poisson"); hyphens are treated as underscores.
std::optional<Method> parse_method(std::string_view name);

struct SolverConfig {
  double lambda = 0.1;
  double tol = 1e-8;
  int max_iter = 10000;
  Method method = Method::poisson;
  /// V-Poisson only: apply the variance shift at labeled nodes too. When
  /// false the shift acts on unlabeled nodes and the zero-mean constraint
  /// enters through a Lagrange multiplier.
  bool variance_on_labeled = true;

  /// Throws invalid-parameter unless tol > 0, max_iter >= 1, lambda >= 0.
  void validate() const;
};

struct SolveResult {
  LabelFunction u;
  /// Preconditioned CG steps summed over label columns (and over outer
  /// mean updates for V-Laplace).
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Harmonic extension: clamps labeled rows to their one-hot labels and solves
/// Lu = 0 at every unlabeled node.
SolveResult laplace_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Lu = y_i - ybar at labeled nodes, 0 elsewhere, with sum_i q_i u_i = 0.
SolveResult poisson_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Clamped labels; at unlabeled nodes (Lu)_i = lambda q_i (u_i - ubar) where
/// ubar is the degree-weighted mean of the whole solution. Solved by a
/// fixed point on ubar around shifted harmonic solves.
SolveResult v_laplace_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// (L - lambda diag(q)) u = source with sum_i q_i u_i = 0.
SolveResult v_poisson_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Dispatches on cfg.method.
SolveResult solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

/// Same systems as the iterative solvers, assembled densely and factorized.
/// Limited to graphs of at most 500 nodes.
SolveResult dense_oracle_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg);

inline constexpr Index kDenseOracleMaxNodes = 500;

/// Poisson source: y_i - ybar on labeled rows, zero elsewhere (n x k).
Eigen::MatrixXd poisson_source(const LabelSet& labels, Index n);

/// Rough estimate of the largest stable lambda, lambda_2(L) / max_i q_i, from
/// 20 power-iteration steps. Only used to warn about risky lambda values.
double estimate_stability_bound(const Graph& g);

/// Row-wise argmax; ties go to the lowest class index.
std::vector<Index> predict(const Eigen::Ref<const LabelFunction>& u);

}  // namespace vpl
