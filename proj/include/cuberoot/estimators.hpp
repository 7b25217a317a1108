#pragma once

#include <string>
#include <vector>

#include "cuberoot/grid_set.hpp"
#include "cuberoot/kernel.hpp"
#include "cuberoot/optim.hpp"
#include "cuberoot/sample.hpp"

namespace cuberoot {
namespace est {

// Point estimate with the attained criterion value. `criterion` is the raw
// criterion sum (counts for unweighted sign criteria, kernel-weighted sums
// with the 1/h factor included otherwise), so criterion / n is the sample
// average the asymptotics are stated for. `effective_n` is n * h_n (n * h^2
// for the slab estimator).
struct PointEstimate {
  std::vector<double> theta_hat;
  double criterion = 0.0;
  double effective_n = 0.0;
  optim::OptimizerReport report;
};

struct IntervalEstimate {
  double theta_hat = 0.0;
  double nu_hat = 0.0;
  double coverage = 0.0;  // attained weighted coverage, >= requested alpha
};

struct SetEstimate {
  GridSet set;
  double cutoff = 0.0;         // the c-hat actually used
  double criterion_max = 0.0;  // max of S_n over the grid
};

// Shared knobs; each operation reads only the fields it documents.
struct EstimatorConfig {
  Kernel kernel{};
  BandwidthRule bandwidth{};        // h_n = c * n^-a; default h_n = 1
  double center = 0.0;              // localization point c
  double alpha = 0.5;               // minimum-volume coverage level
  double nuisance_bandwidth = 0.25; // Nadaraya-Watson bandwidth (set estimator)
  double cutoff = -1.0;             // level-set c-hat; negative selects log n
};

// Binary-response maximum score on S^1; fields (sign_y, x1, x2). Exact.
PointEstimate max_score(const TimeSeriesSample& sample);

// Conditional maximum score for the dynamic panel; fields
// (y0, y1, y2, y3, x1, x2, x3), scalar regressor, (beta, gamma) on S^1.
// Weights e_i = b^-1 K((x_i2 - x_i3)/b) (y_i2 - y_i1); h_n = b_n.
PointEstimate honore_kyriazidou(const TimeSeriesSample& sample, const Kernel& kernel,
                                const BandwidthRule& bw);

// Maximum score localized at w = c; fields (sign_y, x1, x2, w). Weights
// b^-1 K((w_t - c)/b); h_n = b_n.
PointEstimate localized_max_score(const TimeSeriesSample& sample, double c,
                                  const Kernel& kernel, const BandwidthRule& bw);

// Minimum-volume predictive interval at x = c; fields (y, x). Exact over the
// pairwise half-gap candidate widths.
IntervalEstimate min_volume_region(const TimeSeriesSample& sample, double c, double alpha,
                                   const Kernel& kernel, const BandwidthRule& bw);

// Least-median-of-squares location: midpoint of the shortest interval
// containing ceil(n/2) points (leftmost on ties). `criterion` stores the
// covered count; the report carries the window.
PointEstimate lms_location(const std::vector<double>& y);

// LMS regression line (intercept, slope); fields (y, x). Exact within the
// pairwise-slope candidate class.
PointEstimate lms_regression(const TimeSeriesSample& sample);

// Slab-count line estimator: maximizes #{t : |y_t - x_t'beta| <= h |x_t|},
// x_t = (1, xtilde_t); fields (y, x). Exact vertex sweep for small n, grid
// refinement (flagged approximate) beyond that.
PointEstimate hough_estimate(const TimeSeriesSample& sample, const BandwidthRule& bw);

// Left derivative at c of the least concave majorant of the empirical CDF of
// z (a decreasing-density estimate). Zero beyond the largest observation.
double grenander_at(std::vector<double> z, double c);

// Level-set estimator for the interval-regressor binary model; fields
// (y, x, w_l, w_u). Grid nodes within cutoff * n^-1/2 of the criterion max
// are masked; negative cutoff selects log n.
SetEstimate manski_tamer_set(const TimeSeriesSample& sample,
                             const std::vector<double>& theta_grid,
                             double nuisance_bandwidth, double cutoff);

// Dispatch by estimator id: max_score, honore_kyriazidou,
// localized_max_score, lms_location, lms_regression, hough, min_volume.
PointEstimate run_point_estimator(const std::string& id, const TimeSeriesSample& sample,
                                  const EstimatorConfig& cfg);

// Criterion sum at theta on the same scale as PointEstimate::criterion.
double criterion_at(const std::string& id, const TimeSeriesSample& sample,
                    const EstimatorConfig& cfg, const std::vector<double>& theta);

// Q_n(theta) = (n h_n)^{2/3} * (max_th P_n f - P_n f_theta), >= 0.
double criterion_gap(const TimeSeriesSample& sample, const std::string& id,
                     const EstimatorConfig& cfg, const std::vector<double>& theta);

}  // namespace est
}  // namespace cuberoot
