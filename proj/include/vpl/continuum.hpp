#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "vpl/graph.hpp"

namespace vpl {

/// Uniform-density, one-dimensional setting on [0, 1].
struct ContinuumConfig {
  Index n_grid = 128;
  double lambda = 4.0;
  /// Upper end of the scan for the first nontrivial continuum eigenvalue.
  double scan_max = 1.0e3;

  /// Throws invalid-parameter unless n_grid >= 16 and lambda > 0.
  void validate() const;
};

inline constexpr Index kMinGridPoints = 16;

enum class Profile { cosine, sine };

/// Residual of (v[i-1] - 2 v[i] + v[i+1]) / h^2 + lambda v[i] at interior
/// points. Pass lambda = 0 to test the bare second difference.
Eigen::VectorXd second_difference_residual(const Eigen::Ref<const Eigen::VectorXd>& values,
                                           double h, double lambda);

struct ResidualStats {
  Index n_grid = 0;
  double h = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  /// Max residual on the grid with spacing h/2.
  double refined_max_residual = 0.0;
  /// max_residual / refined_max_residual; about 4 for a second-order scheme.
  double refinement_ratio = 0.0;
  /// (x, v(x), residual) samples on the coarse grid, endpoints excluded.
  std::vector<std::array<double, 3>> samples;
};

/// Samples cos(sqrt(lambda) x) (or sin) on a uniform grid, applies the
/// discrete form of u'' + lambda u, and repeats on the grid with half the
/// spacing.
ResidualStats ode_residual_check(const ContinuumConfig& cfg, Profile profile = Profile::cosine);

inline constexpr double kRatioLow = 3.5;
inline constexpr double kRatioHigh = 4.5;
inline constexpr double kMinCorrelation = 0.999;

struct ContinuumComparison {
  Index n_grid = 0;
  /// Smallest nonzero lambda' with (L - lambda' diag(q)) v = 0 singular.
  double discrete_eigenvalue = 0.0;
  /// The same eigenvalue mapped to the unit interval, lambda' / h.
  double lambda_hat = 0.0;
  double cos_amplitude = 0.0;
  double sin_amplitude = 0.0;
  /// Cosine similarity between the null vector and its sinusoid fit.
  double correlation = 0.0;
  /// Cosine similarity of the lambda' = 0 null vector with the constant.
  double null_correlation = 0.0;
  Eigen::VectorXd mode;
};

/// Unit-weight path graph on n_grid nodes; the weighted eigenproblem
/// L v = lambda' diag(q) v is solved densely and the first nontrivial mode is
/// fitted with a cos/sin pair at frequency sqrt(lambda_hat).
ContinuumComparison discrete_vs_continuum(const ContinuumConfig& cfg);

Graph path_graph(Index n);

/// CSV with header "x,v,residual".
void write_residual_csv(std::ostream& out, const ResidualStats& stats);

}  // namespace vpl
