#include "vpl/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <string>

#include "solver_detail.hpp"
#include "vpl/error.hpp"

namespace vpl {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::laplace: return "laplace";
    case Method::poisson: return "poisson";
    case Method::v_laplace: return "v_laplace";
    case Method::v_poisson: return "v_poisson";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string canonical(name);
  std::replace(canonical.begin(), canonical.end(), '-', '_');
  for (Method m : {Method::laplace, Method::poisson, Method::v_laplace, Method::v_poisson}) {
    if (canonical == to_string(m)) return m;
  }
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw Error(Errc::invalid_parameter, "tol must be > 0");
  if (max_iter < 1) throw Error(Errc::invalid_parameter, "max_iter must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::invalid_parameter, "lambda must be finite and >= 0");
  }
}

namespace detail {

void check_solver_inputs(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  cfg.validate();
  labels.check_nodes(g.size());
}

void require_reachable(const Graph& g, const LabelSet& labels) {
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  std::queue<Index> frontier;
  for (const auto& e : labels.entries()) {
    seen[e.node] = true;
    frontier.push(e.node);
  }
  while (!frontier.empty()) {
    const Index i = frontier.front();
    frontier.pop();
    for (Graph::SparseMatrix::InnerIterator it(g.adjacency(), i); it; ++it) {
      if (!seen[it.col()]) {
        seen[it.col()] = true;
        frontier.push(it.col());
      }
    }
  }
  const auto missing = std::find(seen.begin(), seen.end(), false);
  if (missing != seen.end()) {
    throw Error(Errc::ill_posed, "node " + std::to_string(missing - seen.begin()) +
                                     " has no path to any labeled node");
  }
}

void require_connected(const Graph& g) {
  const auto comp = connected_components(g);
  const Index count = *std::max_element(comp.begin(), comp.end()) + 1;
  if (count > 1) {
    throw Error(Errc::ill_posed, "graph has " + std::to_string(count) +
                                     " connected components; the Poisson system needs one");
  }
}

Eigen::VectorXd variance_shift(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  Eigen::VectorXd shift = g.degree_weights();
  if (!cfg.variance_on_labeled) {
    for (const auto& e : labels.entries()) shift[e.node] = 0.0;
  }
  return shift;
}

double clamped_residual(const Graph& g, const LabelSet& labels, const Eigen::MatrixXd& u,
                        double lambda) {
  const auto mask = labels.labeled_mask(g.size());
  Eigen::MatrixXd clamped_only = Eigen::MatrixXd::Zero(g.size(), labels.num_classes());
  for (const auto& e : labels.entries()) clamped_only(e.node, e.cls) = 1.0;
  const Eigen::MatrixXd harmonic_rhs = g.adjacency() * clamped_only;
  const Eigen::MatrixXd lu = laplacian_apply(g, u);
  const Eigen::RowVectorXd mean = weighted_mean(g, u);
  double res2 = 0.0;
  double rhs2 = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    if (mask[i]) continue;
    res2 += (lu.row(i) - lambda * g.degree_weights()[i] * (u.row(i) - mean)).squaredNorm();
    rhs2 += harmonic_rhs.row(i).squaredNorm();
  }
  return rhs2 > 0.0 ? std::sqrt(res2 / rhs2) : std::sqrt(res2);
}

double constrained_residual(const Graph& g, const Eigen::VectorXd& shift,
                            const Eigen::MatrixXd& source, const Eigen::MatrixXd& u,
                            double lambda) {
  const Eigen::VectorXd& q = g.degree_weights();
  const double qq = q.squaredNorm();
  Eigen::MatrixXd r = source - laplacian_apply(g, u) + lambda * (shift.asDiagonal() * u);
  Eigen::MatrixXd b = source;
  r -= q * ((q.transpose() * r) / qq);
  b -= q * ((q.transpose() * b) / qq);
  const double bnorm = b.norm();
  return bnorm > 0.0 ? r.norm() / bnorm : r.norm();
}

}  // namespace detail

namespace {

struct CgStats {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

constexpr int kDivergenceRun = 50;

[[noreturn]] void throw_divergence(double lambda, const std::string& why) {
  std::ostringstream msg;
  msg << "solver diverged (" << why << "); lambda = " << lambda
      << " is likely above the stability bound of L - lambda diag(q)";
  throw Error(Errc::divergence, msg.str());
}

// Jacobi-preconditioned conjugate gradients for a symmetric operator restricted
// to the range of `project` (an orthogonal projector, identity when
// unconstrained). `x` carries the warm start and receives the solution.
// Convergence is judged on the true residual so restarts cover any drift in the
// recurrence.
template <class Apply, class Project>
CgStats pcg(const Apply& apply, const Project& project, const Eigen::VectorXd& inv_diag,
            Eigen::VectorXd rhs, Eigen::VectorXd& x, double tol, int max_iter, double lambda) {
  project(rhs);
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    x.setZero();
    return {0, 0.0, true};
  }
  project(x);
  auto true_residual = [&] {
    Eigen::VectorXd r = rhs - apply(x);
    project(r);
    return r;
  };

  Eigen::VectorXd r = true_residual();
  CgStats stats;
  stats.residual = r.norm() / bnorm;
  double previous = stats.residual;
  int increases = 0;
  Eigen::VectorXd z(x.size()), p(x.size()), ap(x.size());
  while (stats.residual > tol && stats.iterations < max_iter) {
    z = inv_diag.cwiseProduct(r);
    project(z);
    p = z;
    double rz = r.dot(z);
    while (stats.iterations < max_iter) {
      ap = apply(p);
      project(ap);
      const double curvature = p.dot(ap);
      if (!(curvature > 0.0)) throw_divergence(lambda, "non-positive curvature");
      const double alpha = rz / curvature;
      x += alpha * p;
      r -= alpha * ap;
      ++stats.iterations;
      const double current = r.norm() / bnorm;
      if (!std::isfinite(current)) throw_divergence(lambda, "non-finite residual");
      increases = current > previous ? increases + 1 : 0;
      if (increases >= kDivergenceRun) {
        throw_divergence(lambda, "residual grew for 50 consecutive steps");
      }
      previous = current;
      if (current <= tol) break;
      z = inv_diag.cwiseProduct(r);
      project(z);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    r = true_residual();
    stats.residual = r.norm() / bnorm;
  }
  stats.converged = stats.residual <= tol;
  return stats;
}

void maybe_warn_stability(const Graph& g, double lambda, std::vector<std::string>& warnings) {
  if (lambda <= 0.0) return;
  const double bound = estimate_stability_bound(g);
  if (lambda >= 0.9 * bound) {
    std::ostringstream msg;
    msg << "lambda = " << lambda << " is at or above 90% of the estimated stability bound "
        << bound;
    warnings.push_back(msg.str());
  }
}

// Clamped family (Laplace, V-Laplace). Unknowns are the unlabeled rows; the
// shifted operator L_uu - lambda Q_uu is assembled once and the coupling
// through ubar is handled by an outer fixed point.
SolveResult solve_clamped(const Graph& g, const LabelSet& labels, const SolverConfig& cfg,
                          double lambda) {
  detail::check_solver_inputs(g, labels, cfg);
  const Index n = g.size();
  const Index k = labels.num_classes();

  SolveResult result;
  result.u = Eigen::MatrixXd::Zero(n, k);
  for (const auto& e : labels.entries()) result.u(e.node, e.cls) = 1.0;

  std::vector<Index> position(static_cast<std::size_t>(n), -1);
  std::vector<Index> unlabeled;
  {
    const auto mask = labels.labeled_mask(n);
    for (Index i = 0; i < n; ++i) {
      if (!mask[i]) {
        position[i] = static_cast<Index>(unlabeled.size());
        unlabeled.push_back(i);
      }
    }
  }
  if (unlabeled.empty()) {
    result.converged = true;
    return result;
  }
  detail::require_reachable(g, labels);
  maybe_warn_stability(g, lambda, result.warnings);

  const Index nu = static_cast<Index>(unlabeled.size());
  const Eigen::VectorXd& q = g.degree_weights();
  Eigen::VectorXd q_u(nu);
  Eigen::VectorXd diag(nu);
  Eigen::MatrixXd harmonic_rhs = Eigen::MatrixXd::Zero(nu, k);
  std::vector<Eigen::Triplet<double>> triplets;
  for (Index r = 0; r < nu; ++r) {
    const Index i = unlabeled[r];
    q_u[r] = q[i];
    diag[r] = g.degrees()[i] - lambda * q[i];
    if (!(diag[r] > 0.0)) throw_divergence(lambda, "non-positive diagonal");
    triplets.emplace_back(r, r, diag[r]);
    for (Graph::SparseMatrix::InnerIterator it(g.adjacency(), i); it; ++it) {
      const Index j = it.col();
      if (position[j] >= 0) {
        triplets.emplace_back(r, position[j], -it.value());
      } else {
        harmonic_rhs.row(r) += it.value() * result.u.row(j);
      }
    }
  }
  Graph::SparseMatrix a_uu(nu, nu);
  a_uu.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::VectorXd inv_diag = diag.cwiseInverse();

  Eigen::RowVectorXd labeled_mass = Eigen::RowVectorXd::Zero(k);
  for (const auto& e : labels.entries()) labeled_mass[e.cls] += q[e.node];

  auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a_uu * v; };
  auto identity = [](Eigen::VectorXd&) {};
  const double inner_tol = cfg.tol / 10.0;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(nu, k);
  Eigen::RowVectorXd mean = labeled_mass + q_u.transpose() * x;
  double previous_step = std::numeric_limits<double>::infinity();
  int increases = 0;
  bool inner_ok = true;
  bool outer_ok = false;
  for (int outer = 0; outer < cfg.max_iter; ++outer) {
    inner_ok = true;
    for (Index c = 0; c < k; ++c) {
      Eigen::VectorXd rhs = harmonic_rhs.col(c);
      if (lambda != 0.0) rhs -= (lambda * mean[c]) * q_u;
      Eigen::VectorXd col = x.col(c);
      const CgStats stats = pcg(apply, identity, inv_diag, rhs, col, inner_tol, cfg.max_iter, lambda);
      x.col(c) = col;
      result.iterations += stats.iterations;
      inner_ok = inner_ok && stats.converged;
    }
    if (lambda == 0.0) {
      outer_ok = true;
      break;
    }
    const Eigen::RowVectorXd next_mean = labeled_mass + q_u.transpose() * x;
    const double step = (next_mean - mean).norm();
    mean = next_mean;
    if (!std::isfinite(step)) throw_divergence(lambda, "non-finite mean update");
    increases = step > previous_step ? increases + 1 : 0;
    if (increases >= kDivergenceRun) {
      throw_divergence(lambda, "mean update grew for 50 consecutive outer steps");
    }
    previous_step = step;
    if (step <= cfg.tol) {
      outer_ok = true;
      break;
    }
  }

  for (Index r = 0; r < nu; ++r) result.u.row(unlabeled[r]) = x.row(r);
  result.final_residual = detail::clamped_residual(g, labels, result.u, lambda);
  result.converged = inner_ok && outer_ok && result.final_residual <= cfg.tol;
  return result;
}

// Poisson family. The iterate lives in V = {u : q^T u = 0}; restricting the
// symmetric operator L - lambda S to V with the Euclidean projector onto V
// keeps CG applicable, and for S = diag(q) the solution satisfies the full
// system exactly because L - lambda diag(q) maps V into the sum-zero space.
SolveResult solve_constrained(const Graph& g, const LabelSet& labels, const SolverConfig& cfg,
                              double lambda) {
  detail::check_solver_inputs(g, labels, cfg);
  detail::require_connected(g);
  const Index n = g.size();
  const Index k = labels.num_classes();

  SolveResult result;
  const Eigen::MatrixXd source = poisson_source(labels, n);
  if (source.isZero(0.0)) {
    result.warnings.push_back(
        "degenerate input: all labeled nodes share one class (or l = 1), so the source is zero "
        "and the solution is identically zero");
  }
  maybe_warn_stability(g, lambda, result.warnings);

  const Eigen::VectorXd shift = detail::variance_shift(g, labels, cfg);
  const Eigen::VectorXd& q = g.degree_weights();
  const double qq = q.squaredNorm();
  const Eigen::VectorXd diag = g.degrees() - lambda * shift;
  if (!(diag.minCoeff() > 0.0)) throw_divergence(lambda, "non-positive diagonal");
  const Eigen::VectorXd inv_diag = diag.cwiseInverse();

  auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd out = g.degrees().cwiseProduct(v) - lambda * shift.cwiseProduct(v);
    out.noalias() -= g.adjacency() * v;
    return out;
  };
  auto project = [&](Eigen::VectorXd& v) { v -= (q.dot(v) / qq) * q; };

  result.u = Eigen::MatrixXd::Zero(n, k);
  result.converged = true;
  for (Index c = 0; c < k; ++c) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    const CgStats stats = pcg(apply, project, inv_diag, source.col(c), col, cfg.tol,
                              cfg.max_iter, lambda);
    project(col);
    result.u.col(c) = col;
    result.iterations += stats.iterations;
    result.converged = result.converged && stats.converged;
  }
  result.final_residual = detail::constrained_residual(g, shift, source, result.u, lambda);
  result.converged = result.converged && result.final_residual <= cfg.tol;
  return result;
}

}  // namespace

Eigen::MatrixXd poisson_source(const LabelSet& labels, Index n) {
  labels.check_nodes(n);
  const Eigen::MatrixXd y = labels.one_hot_matrix();
  const Eigen::RowVectorXd mean = y.colwise().mean();
  Eigen::MatrixXd source = Eigen::MatrixXd::Zero(n, labels.num_classes());
  for (Index r = 0; r < labels.size(); ++r) {
    source.row(labels.entries()[static_cast<std::size_t>(r)].node) = y.row(r) - mean;
  }
  return source;
}

double estimate_stability_bound(const Graph& g) {
  const Index n = g.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  // Power iteration on c I - L over the sum-zero subspace; its top eigenvalue
  // is c - lambda_2(L). c = 2 max_i d_i bounds the spectrum of L.
  const double c = 2.0 * g.degrees().maxCoeff();
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = std::cos(1.0 + 2.0 * static_cast<double>(i));
  v.array() -= v.mean();
  v.normalize();
  double rayleigh = 0.0;
  for (int step = 0; step < 20; ++step) {
    Eigen::VectorXd next = c * v - laplacian_apply(g, v);
    next.array() -= next.mean();
    rayleigh = v.dot(next);
    const double norm = next.norm();
    if (norm == 0.0) break;
    v = next / norm;
  }
  const double lambda2 = std::max(c - rayleigh, 0.0);
  return lambda2 / g.degree_weights().maxCoeff();
}

SolveResult laplace_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  return solve_clamped(g, labels, cfg, 0.0);
}

SolveResult v_laplace_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  return solve_clamped(g, labels, cfg, cfg.lambda);
}

SolveResult poisson_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  return solve_constrained(g, labels, cfg, 0.0);
}

SolveResult v_poisson_solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  return solve_constrained(g, labels, cfg, cfg.lambda);
}

SolveResult solve(const Graph& g, const LabelSet& labels, const SolverConfig& cfg) {
  switch (cfg.method) {
    case Method::laplace: return laplace_solve(g, labels, cfg);
    case Method::poisson: return poisson_solve(g, labels, cfg);
    case Method::v_laplace: return v_laplace_solve(g, labels, cfg);
    case Method::v_poisson: return v_poisson_solve(g, labels, cfg);
  }
  throw Error(Errc::invalid_parameter, "unknown method");
}

std::vector<Index> predict(const Eigen::Ref<const LabelFunction>& u) {
  if (u.rows() == 0 || u.cols() == 0) {
    throw Error(Errc::invalid_input, "predict: empty label function");
  }
  std::vector<Index> classes(static_cast<std::size_t>(u.rows()));
  for (Index i = 0; i < u.rows(); ++i) {
    Index best = 0;
    for (Index c = 1; c < u.cols(); ++c) {
      if (u(i, c) > u(i, best)) best = c;
    }
    classes[i] = best;
  }
  return classes;
}

}  // namespace vpl
