#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cuberoot/dgp.hpp"
#include "cuberoot/estimators.hpp"
#include "cuberoot/limitlaw.hpp"

namespace cuberoot {
namespace mc {

// Effective-size regressor used when fitting the log-RMSE slope.
enum class RateFamily { nh, nh_over_log, nh2 };

RateFamily rate_family_from_string(const std::string& s);
std::string to_string(RateFamily f);

struct RateRow {
  std::size_t n = 0;
  double h = 0.0;
  double effective = 0.0;  // regressor value per the rate family
  double rmse = 0.0;
  std::size_t reps = 0;
  std::size_t failures = 0;
};

struct RateReport {
  std::vector<RateRow> rows;
  double slope = 0.0;
  double slope_se = 0.0;
  RateFamily family = RateFamily::nh;
};

struct CoverageReport {
  double coverage = 0.0;
  double se = 0.0;  // binomial standard error
  std::size_t reps = 0;
  std::size_t failures = 0;
};

struct SetRateReport {
  double containment = 0.0;   // fraction of reps with the identified set inside
  double median_rho = 0.0;    // median directed distance rho(set_hat, set_true)
  std::vector<double> rho_values;
  std::size_t reps = 0;
  std::size_t failures = 0;
};

struct KsReport {
  double ks = 0.0;
  std::vector<double> scaled_errors;  // (effective n)^{1/3} (theta_hat - theta0)
  std::size_t reps = 0;
  std::size_t failures = 0;
};

// Deterministic parallel map: runs fn(i) for i in [0, count) on `workers`
// threads, results keyed by index. workers = 0 selects the hardware count.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

// R replications per n: generate data with a derived seed, fit, measure the
// error (geodesic angle on the sphere, Euclidean otherwise), report RMSE per
// n and the OLS slope of log RMSE on the rate family's log effective size.
// More than 5% failed replications aborts.
RateReport rate_experiment(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                           const est::EstimatorConfig& cfg, const std::vector<std::size_t>& ns,
                           std::size_t R, std::uint64_t master_seed,
                           RateFamily family = RateFamily::nh, std::size_t workers = 0);

// Fraction of replications whose subsampling CI covers every coordinate of
// the true parameter.
CoverageReport coverage_experiment(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                                   const est::EstimatorConfig& cfg, std::size_t n,
                                   std::size_t block_len, double alpha, std::size_t R,
                                   std::uint64_t master_seed, std::size_t workers = 0);

// Level-set experiment for the interval-regressor model: containment
// frequency of the identified set and the distribution of rho(set_hat,
// identified set) over replications.
SetRateReport set_experiment(const dgp::DgpSpec& tmpl, const std::vector<double>& theta_grid,
                             double nuisance_bandwidth, double cutoff, std::size_t n,
                             std::size_t R, std::uint64_t master_seed, std::size_t workers = 0);

// KS distance between the Monte Carlo law of the scaled estimation error
// (coordinate `coord`) and a simulated argmax law of size M.
KsReport limit_comparison(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                          const est::EstimatorConfig& cfg, std::size_t n, std::size_t R,
                          std::uint64_t master_seed, const limitlaw::LimitLawSpec& limit,
                          std::size_t M, std::size_t coord = 0, std::size_t workers = 0);

// OLS slope (and standard error) of y on x; needs >= 3 points.
std::pair<double, double> ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mc
}  // namespace cuberoot
