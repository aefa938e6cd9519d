#include <string>
#include <vector>

#include <Eigen/LU>

#include "solver_detail.hpp"
#include "vpl/error.hpp"
#include "vpl/solvers.hpp"

namespace vpl {

namespace {

template <typename Lu>
void require_invertible(const Lu& lu, const char* what) {
  if (!lu.isInvertible()) {
    throw Error(Errc::ill_posed, std::string("dense oracle: singular ") + what + " system");
  }
}

// Clamped rows fixed to their labels; the ubar coupling is written out as the
// rank-one term lambda q_u q_u^T so no fixed point is needed.
SolveResult oracle_clamped(const Graph& g, const LabelSet& labels, double lambda) {
  const Index n = g.size();
  const Index k = labels.num_classes();
  const auto mask = labels.labeled_mask(n);

  SolveResult result;
  result.u = Eigen::MatrixXd::Zero(n, k);
  for (const auto& e : labels.entries()) result.u(e.node, e.cls) = 1.0;

  std::vector<Index> free_nodes;
  std::vector<Index> fixed_nodes;
  for (Index i = 0; i < n; ++i) (mask[i] ? fixed_nodes : free_nodes).push_back(i);
  result.converged = true;
  if (free_nodes.empty()) return result;

  const Eigen::MatrixXd w = Eigen::MatrixXd(g.adjacency());
  const Eigen::MatrixXd laplacian = Eigen::MatrixXd(g.degrees().asDiagonal()) - w;
  const Eigen::VectorXd& q = g.degree_weights();
  const auto nu = static_cast<Index>(free_nodes.size());
  const auto nl = static_cast<Index>(fixed_nodes.size());

  Eigen::MatrixXd l_uu(nu, nu);
  Eigen::MatrixXd l_ul(nu, nl);
  Eigen::VectorXd q_u(nu);
  Eigen::VectorXd q_l(nl);
  Eigen::MatrixXd y_l(nl, k);
  for (Index a = 0; a < nu; ++a) {
    q_u[a] = q[free_nodes[a]];
    for (Index b = 0; b < nu; ++b) l_uu(a, b) = laplacian(free_nodes[a], free_nodes[b]);
    for (Index b = 0; b < nl; ++b) l_ul(a, b) = laplacian(free_nodes[a], fixed_nodes[b]);
  }
  for (Index b = 0; b < nl; ++b) {
    q_l[b] = q[fixed_nodes[b]];
    y_l.row(b) = result.u.row(fixed_nodes[b]);
  }

  Eigen::MatrixXd system = l_uu;
  system.diagonal() -= lambda * q_u;
  system += lambda * q_u * q_u.transpose();
  const Eigen::MatrixXd rhs =
      -l_ul * y_l - lambda * q_u * (q_l.transpose() * y_l);

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  require_invertible(lu, "clamped");
  const Eigen::MatrixXd x = lu.solve(rhs);
  for (Index a = 0; a < nu; ++a) result.u.row(free_nodes[a]) = x.row(a);
  result.final_residual = detail::clamped_residual(g, labels, result.u, lambda);
  return result;
}

// Bordered (KKT) system [A q; q^T 0][u; mu] = [source; 0] enforces the
// zero-mean constraint explicitly.
SolveResult oracle_constrained(const Graph& g, const LabelSet& labels, const SolverConfig& cfg,
                               double lambda) {
  const Index n = g.size();
  const Index k = labels.num_classes();
  const Eigen::VectorXd shift = detail::variance_shift(g, labels, cfg);
  const Eigen::VectorXd& q = g.degree_weights();
  const Eigen::MatrixXd source = poisson_source(labels, n);

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
  kkt.topLeftCorner(n, n) = -Eigen::MatrixXd(g.adjacency());
  kkt.topLeftCorner(n, n).diagonal() += g.degrees() - lambda * shift;
  kkt.topRightCorner(n, 1) = q;
  kkt.bottomLeftCorner(1, n) = q.transpose();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 1, k);
  rhs.topRows(n) = source;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  require_invertible(lu, "constrained");
  SolveResult result;
  result.u = lu.solve(rhs).topRows(n);
  result.converged = true;
  result.final_residual = detail::constrained_residual(g, shift, source, result.u, lambda);
  return result;
}

}  // namespace

SolveResult dense_oracle_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  detail::check_solver_inputs(g, labels, cfg);
  if (g.size() > kDenseOracleMaxNodes) {
    throw Error(Errc::oracle_size, "dense oracle limited to " +
                                       std::to_string(kDenseOracleMaxNodes) + " nodes, got " +
                                       std::to_string(g.size()));
  }
  switch (cfg.method) {
    case Method::laplace: return oracle_clamped(g, labels, 0.0);
    case Method::v_laplace: return oracle_clamped(g, labels, cfg.lambda);
    case Method::poisson: return oracle_constrained(g, labels, cfg, 0.0);
    case Method::v_poisson: return oracle_constrained(g, labels, cfg, cfg.lambda);
  }
  throw Error(Errc::invalid_parameter, "unknown method");
}

}  // namespace vpl
