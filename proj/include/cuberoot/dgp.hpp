#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cuberoot/grid_set.hpp"
#include "cuberoot/sample.hpp"

namespace cuberoot {
namespace dgp {

// Model id plus free parameters. Every model satisfies the beta-mixing
// contract by construction: serial dependence enters only through Gaussian
// AR(1) chains with |rho| < 1 (exponential mixing), transformed marginally.
// Defaults below are choices of this artifact, not canonical values.
struct DgpSpec {
  std::string model;  // ar1, max_score, panel_hk, rc_binary, interval_binary,
                      // monotone_density, hough_line, minvol_pred, lms
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
};

// Deterministic: identical spec => identical output, bit for bit.
// AR recursions discard 1000 warm-up draws before emitting row 0.
TimeSeriesSample generate(const DgpSpec& spec);

// True parameter vector of the spec's model (theta0 / beta0), used by the
// Monte Carlo layer for error metrics.
std::vector<double> true_theta(const DgpSpec& spec);

// Identified set of the interval_binary model on a 1-D theta grid, computed
// by exact integration of the defining event probability under the model's
// uniform regressor laws. Nodes with probability zero are masked.
GridSet interval_binary_identified_set(const DgpSpec& spec,
                                       const std::vector<double>& theta_grid);

// Marginal error density (and derivatives) of the lms model at v, used by
// the limit-law builders.
double lms_error_density(const DgpSpec& spec, double v);
double lms_error_density_deriv(const DgpSpec& spec, double v);

// Error density of the hough_line model (truncated normal on [-5, 5]).
double hough_error_density(const DgpSpec& spec, double v);
double hough_error_density_deriv2(const DgpSpec& spec, double v);

}  // namespace dgp
}  // namespace cuberoot
