#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cuberoot/estimators.hpp"
#include "cuberoot/grid_set.hpp"
#include "cuberoot/sample.hpp"

namespace cuberoot {
namespace inf {

// Equal-tailed subsampling interval per coordinate. The subsample statistic
// is (effective block size)^{1/3} (theta_b - theta_hat); quantiles are
// type-1 (inverse empirical CDF, lower tie). The inversion divides by
// (effective n)^{1/3} - (effective s)^{1/3}, which cancels the common
// centering term theta_hat shared by every block statistic.
struct SubsampleCI {
  std::vector<double> theta_hat;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t block_len = 0;
  std::size_t blocks_used = 0;
  double alpha = 0.0;
  // Raw per-block statistics (coordinate-major), kept for --dump-blocks.
  std::vector<std::vector<double>> block_stats;
};

struct ConfidenceSet {
  GridSet set;                    // masked nodes form C_n
  std::vector<double> quantiles;  // q_s(theta, 1 - alpha) per node
  std::vector<double> qn;         // Q_n(theta) per node
  std::size_t blocks_used = 0;
};

// Default block length ceil(n^{2/3}).
std::size_t default_block_len(std::size_t n);

// Consecutive-block subsampling CI. Blocks cover rows [b, b+s-1]; when
// n - s + 1 exceeds 2000 an equispaced subset of 2000 starts is used.
// alpha >= 1 degenerates to the point interval {theta_hat}.
SubsampleCI subsample_ci(const TimeSeriesSample& sample, const std::string& estimator_id,
                         const est::EstimatorConfig& cfg, std::size_t s, double alpha);

// Criterion-based confidence set C_n = {theta: Q_n(theta) <= q_s(theta,1-a)}
// over a Cartesian grid of parameter values.
ConfidenceSet criterion_confidence_set(const TimeSeriesSample& sample,
                                       const std::string& estimator_id,
                                       const est::EstimatorConfig& cfg,
                                       const std::vector<std::vector<double>>& axes,
                                       std::size_t s, double alpha);

// Type-1 empirical quantile of a sample (lower tie); used everywhere a
// quantile convention is needed.
double quantile_type1(std::vector<double> v, double p);

}  // namespace inf
}  // namespace cuberoot
