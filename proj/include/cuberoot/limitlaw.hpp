#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cuberoot {
namespace limitlaw {

// Gaussian process Z(s) = G(s) + s'Vs/2 on [-K, K]^d with covariance kernel
// H; the argmax law of Z is the cube-root limiting distribution.
struct LimitLawSpec {
  std::size_t d = 1;
  std::vector<std::vector<double>> V;  // d x d, symmetric negative definite
  std::function<double(const std::vector<double>&, const std::vector<double>&)> H;
  double K = 3.0;      // grid radius
  std::size_t m = 201; // points per axis

  void validate() const;  // symmetry / sign spot checks
};

// Averaged absolute moment u -> mean |x'u| over `draws` fixed-seed samples
// of x from `sampler`. One code path for all models' P|x'u| plug-ins.
std::function<double(const std::vector<double>&)> empirical_abs_moment(
    const std::function<std::vector<double>(std::uint64_t)>& sampler, std::size_t draws,
    std::uint64_t seed);

// Least-median-of-squares limit law: L(s1,s2) = 2 gamma1 E|x'(s1-s2)|,
// H = (L(s1,0) + L(0,s2) - L(s1,s2)) / 2, V = 2 gamma1_dot Pxx.
LimitLawSpec build_kernel_lms(double gamma1, double gamma1_dot,
                              const std::vector<std::vector<double>>& pxx,
                              std::function<double(const std::vector<double>&)> mean_abs,
                              double K = 3.0, std::size_t m = 201);

// Slab-count (line-fitting) limit law: L(s1,s2) = 2 gamma0 E|x'(s1-s2)|,
// same combination for H, V = gamma0_ddot E(|x| x x').
LimitLawSpec build_kernel_hough(double gamma0, double gamma0_ddot,
                                const std::vector<std::vector<double>>& p_absx_xx,
                                std::function<double(const std::vector<double>&)> mean_abs,
                                double K = 3.0, std::size_t m = 41);

struct ArgmaxSample {
  std::vector<std::vector<double>> points;  // one argmax node per draw
  double boundary_mass = 0.0;               // fraction of draws on the grid hull
};

// Draws M paths of Z on the grid (Cholesky with escalating diagonal jitter)
// and records the argmax node of each; ties go to the lexicographically
// smallest node. Deterministic in (spec, M, seed).
ArgmaxSample simulate_argmax_law(const LimitLawSpec& spec, std::size_t M, std::uint64_t seed);

// Coordinate k of every argmax point.
std::vector<double> coordinate(const ArgmaxSample& s, std::size_t k);

// Exact two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace limitlaw
}  // namespace cuberoot
