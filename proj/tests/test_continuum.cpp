#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "vpl/continuum.hpp"
#include "vpl/error.hpp"

using namespace vpl;

TEST_CASE("second difference annihilates affine functions") {
  for (Index n : {16, 33, 200}) {
    const double h = 1.0 / static_cast<double>(n - 1);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
    const Eigen::VectorXd v = (0.7 - 2.5 * x.array()).matrix();
    const Eigen::VectorXd r = second_difference_residual(v, h, 0.0);
    CHECK(r.size() == n - 2);
    // Rounding in v is amplified by 1/h^2.
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-15 / (h * h) * 16);
  }
}

TEST_CASE("second difference on a quadratic is exact") {
  const Index n = 41;
  const double h = 1.0 / (n - 1);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  const Eigen::VectorXd v = x.array().square().matrix();
  const Eigen::VectorXd r = second_difference_residual(v, h, 0.0);
  CHECK((r.array() - 2.0).abs().maxCoeff() <= 1e-9);
}

TEST_CASE("cosine residual decays at second order") {
  for (Index n : {64, 128, 256}) {
    const ResidualStats s = ode_residual_check({n, 4.0});
    CHECK(s.n_grid == n);
    CHECK(s.h == doctest::Approx(1.0 / (n - 1)));
    CHECK(s.refinement_ratio >= kRatioLow);
    CHECK(s.refinement_ratio <= kRatioHigh);
    CHECK(s.refinement_ratio == doctest::Approx(4.0).epsilon(0.01));
    CHECK(s.mean_residual <= s.max_residual);
    CHECK(static_cast<Index>(s.samples.size()) == n - 2);
  }
  // Taylor bound: |residual| <= h^2 max|v''''| / 12 = h^2 lambda^2 / 12.
  const ResidualStats s = ode_residual_check({128, 4.0});
  CHECK(s.max_residual <= s.h * s.h * 16.0 / 12.0 * 1.0001);
}

TEST_CASE("sine residual decays at second order") {
  const ResidualStats s = ode_residual_check({128, 1.0}, Profile::sine);
  CHECK(s.refinement_ratio >= kRatioLow);
  CHECK(s.refinement_ratio <= kRatioHigh);
}

TEST_CASE("continuum config validation") {
  CHECK_THROWS_AS(ContinuumConfig({15, 4.0}).validate(), Error);
  CHECK_THROWS_AS(ContinuumConfig({64, 0.0}).validate(), Error);
  CHECK_NOTHROW(ContinuumConfig({16, 0.5}).validate());
  CHECK_THROWS_AS(ode_residual_check({8, 1.0}), Error);
}

TEST_CASE("path graph mode is a sinusoid") {
  const ContinuumComparison c = discrete_vs_continuum({128, 4.0});
  CHECK(c.correlation >= kMinCorrelation);
  CHECK(c.null_correlation == doctest::Approx(1.0).epsilon(1e-12));
  // The Neumann path mode is cos(pi x): lambda_hat tends to pi^2.
  CHECK(c.lambda_hat == doctest::Approx(M_PI * M_PI).epsilon(1e-3));
  CHECK(std::abs(c.cos_amplitude) > 10.0 * std::abs(c.sin_amplitude));
  CHECK(c.mode.size() == 128);
}

TEST_CASE("fitted eigenvalue converges under refinement") {
  const double coarse = discrete_vs_continuum({128, 4.0}).lambda_hat;
  const double fine = discrete_vs_continuum({256, 4.0}).lambda_hat;
  CHECK(std::abs(coarse - fine) <= 0.05 * fine);
}

TEST_CASE("scan range too small is a scan error") {
  ContinuumConfig cfg{64, 4.0};
  cfg.scan_max = 1.0;
  try {
    discrete_vs_continuum(cfg);
    FAIL("expected scan error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::scan_error);
  }
}

TEST_CASE("residual csv") {
  std::ostringstream out;
  write_residual_csv(out, ode_residual_check({16, 4.0}));
  const std::string text = out.str();
  CHECK(text.rfind("x,v,residual\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 15);
}
