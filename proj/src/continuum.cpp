#include "vpl/continuum.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "vpl/error.hpp"

namespace vpl {

void ContinuumConfig::validate() const {
  if (n_grid < kMinGridPoints) {
    throw Error(Errc::invalid_parameter, "n_grid must be >= " + std::to_string(kMinGridPoints) +
                                             ", got " + std::to_string(n_grid));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::invalid_parameter, "lambda must be finite and > 0");
  }
  if (!(scan_max > 0.0)) throw Error(Errc::invalid_parameter, "scan_max must be > 0");
}

Eigen::VectorXd second_difference_residual(const Eigen::Ref<const Eigen::VectorXd>& values,
                                           double h, double lambda) {
  const Index n = values.size();
  if (n < 3) return Eigen::VectorXd();
  const Index m = n - 2;
  return (values.head(m) - 2.0 * values.segment(1, m) + values.tail(m)) / (h * h) +
         lambda * values.segment(1, m);
}

namespace {

Eigen::VectorXd sample(Index n, double lambda, Profile profile) {
  const double omega = std::sqrt(lambda);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  if (profile == Profile::cosine) return (omega * x).array().cos().matrix();
  return (omega * x).array().sin().matrix();
}

}  // namespace

ResidualStats ode_residual_check(const ContinuumConfig& cfg, Profile profile) {
  cfg.validate();
  ResidualStats stats;
  stats.n_grid = cfg.n_grid;
  stats.h = 1.0 / static_cast<double>(cfg.n_grid - 1);

  const Eigen::VectorXd coarse = sample(cfg.n_grid, cfg.lambda, profile);
  const Eigen::VectorXd residual = second_difference_residual(coarse, stats.h, cfg.lambda);
  stats.max_residual = residual.cwiseAbs().maxCoeff();
  stats.mean_residual = residual.cwiseAbs().mean();

  const Index fine_n = 2 * (cfg.n_grid - 1) + 1;
  const Eigen::VectorXd fine = sample(fine_n, cfg.lambda, profile);
  stats.refined_max_residual =
      second_difference_residual(fine, stats.h / 2.0, cfg.lambda).cwiseAbs().maxCoeff();
  stats.refinement_ratio = stats.max_residual / stats.refined_max_residual;

  stats.samples.reserve(static_cast<std::size_t>(residual.size()));
  for (Index i = 0; i < residual.size(); ++i) {
    stats.samples.push_back({static_cast<double>(i + 1) * stats.h, coarse[i + 1], residual[i]});
  }
  return stats;
}

Graph path_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1, 1.0});
  return Graph::from_edges(n, edges);
}

ContinuumComparison discrete_vs_continuum(const ContinuumConfig& cfg) {
  cfg.validate();
  const Index n = cfg.n_grid;
  const Graph g = path_graph(n);
  const double h = 1.0 / static_cast<double>(n - 1);

  const Eigen::MatrixXd laplacian =
      Eigen::MatrixXd(g.degrees().asDiagonal()) - Eigen::MatrixXd(g.adjacency());
  const Eigen::MatrixXd mass = g.degree_weights().asDiagonal();
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian, mass);
  if (eig.info() != Eigen::Success) {
    throw Error(Errc::scan_error, "generalized eigensolve failed on the path graph");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();

  // Eigenvalues come sorted ascending; index 0 is the constant null mode.
  const double zero_tol = 1e-9 * values.cwiseAbs().maxCoeff();
  Index first = -1;
  for (Index i = 0; i < values.size(); ++i) {
    if (values[i] > zero_tol) {
      first = i;
      break;
    }
  }
  if (first < 0 || values[first] / h > cfg.scan_max) {
    throw Error(Errc::scan_error, "no nontrivial singular shift found with lambda_hat <= " +
                                      std::to_string(cfg.scan_max));
  }

  ContinuumComparison out;
  out.n_grid = n;
  out.discrete_eigenvalue = values[first];
  out.lambda_hat = values[first] / h;
  out.mode = eig.eigenvectors().col(first);

  const Eigen::VectorXd null_mode = eig.eigenvectors().col(0);
  out.null_correlation = std::abs(null_mode.sum()) / (null_mode.norm() * std::sqrt(double(n)));

  const double omega = std::sqrt(out.lambda_hat);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  Eigen::MatrixXd basis(n, 2);
  basis.col(0) = (omega * x).array().cos();
  basis.col(1) = (omega * x).array().sin();
  const Eigen::Vector2d coeffs = basis.colPivHouseholderQr().solve(out.mode);
  out.cos_amplitude = coeffs[0];
  out.sin_amplitude = coeffs[1];
  const Eigen::VectorXd fit = basis * coeffs;
  out.correlation = std::abs(fit.dot(out.mode)) / (fit.norm() * out.mode.norm());
  return out;
}

void write_residual_csv(std::ostream& out, const ResidualStats& stats) {
  out << "x,v,residual\n" << std::setprecision(17);
  for (const auto& [x, v, r] : stats.samples) out << x << ',' << v << ',' << r << '\n';
}

}  // namespace vpl
