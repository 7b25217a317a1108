#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cuberoot/direction.hpp"

namespace cuberoot {
namespace optim {

// Result of an exact or approximate maximization. For piecewise-constant
// objectives the argmax is a region; `point` is its reported representative
// (leftmost maximizing region, midpoint) and `value` equals the evaluator at
// `point` exactly.
struct OptimizerReport {
  std::vector<double> point;
  double value = 0.0;
  // Maximizing interval/arc bounds where meaningful (1-D scan, angle sweep).
  double region_lo = 0.0;
  double region_hi = 0.0;
  std::size_t evaluations = 0;
  std::string method;
  bool approximate = false;
};

// Exact maximizer of an objective that is constant on the open intervals
// between consecutive breakpoints. Evaluates at every interval midpoint plus
// outer probes at +/-(max|b| + 1). Tie-break: maximizing interval with the
// smallest left endpoint, reporting its midpoint (outer intervals report the
// probe point).
OptimizerReport scan_1d(std::vector<double> breakpoints,
                        const std::function<double(double)>& evaluator);

// Exact maximizer over S^1 of an objective constant on the arcs between the
// given critical angles. Tie-break: the arc whose midpoint angle in [0, 2pi)
// is smallest. Throws DegenerateData when no critical angle is supplied.
OptimizerReport angle_sweep_s1(std::vector<double> critical_angles,
                               const std::function<double(double)>& evaluator_at_angle);

// Fast path for sign-agreement criteria of the form
//   F(theta) = sum_t coeff_t * I{x_t' theta >= 0} + offset,  theta in S^1.
// Exact via an incremental walk over the 2n critical angles; same tie rule
// as angle_sweep_s1. Throws DegenerateData if all x_t are zero.
OptimizerReport sign_agreement_sweep(const std::vector<std::vector<double>>& x,
                                     const std::vector<double>& coeff, double offset);

// Exact maximizer for slab-count criteria on (intercept, slope):
//   F(beta) = sum_t w_t * I{|y_t - b0 - b1 xtilde_t| <= half_width_t}.
// Every observation's feasible set is a slab between two parallel lines; an
// optimum occurs at an arrangement vertex, so candidate slopes come from all
// pairwise boundary intersections and the intercept is scanned exactly at
// each. O(n^3 log n); intended for n <= 500.
OptimizerReport vertex_sweep_2d(const std::vector<double>& y,
                                const std::vector<double>& xtilde,
                                const std::vector<double>& half_width,
                                const std::vector<double>& weight);

// Maximizes sum_t w_t I{y_t in [theta - nu, theta + nu]} exactly via a
// sorted sliding window. Returns (theta, attained weight); tie-break picks
// the window with the smallest left endpoint and theta is the midpoint of
// the covered value range.
std::pair<double, double> max_weighted_window(const std::vector<double>& y,
                                              const std::vector<double>& w, double nu);

// Multi-level grid search on a box; deterministic scan order, flagged
// approximate. Default 21 points per axis, shrink factor 0.2 per level.
OptimizerReport grid_refine(const std::function<double(const std::vector<double>&)>& evaluator,
                            std::vector<std::pair<double, double>> box, int levels,
                            int points_per_axis = 21, double shrink = 0.2);

}  // namespace optim
}  // namespace cuberoot
