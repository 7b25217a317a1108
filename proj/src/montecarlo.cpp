#include "cuberoot/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <tuple>
#include <thread>

#include "cuberoot/direction.hpp"
#include "cuberoot/errors.hpp"
#include "cuberoot/inference.hpp"
#include "cuberoot/rng.hpp"

namespace cuberoot {
namespace mc {

namespace {

bool is_sphere_estimator(const std::string& id) {
  return id == "max_score" || id == "localized_max_score" || id == "honore_kyriazidou";
}

double estimation_error(const std::string& id, const std::vector<double>& theta_hat,
                        const std::vector<double>& theta0) {
  if (is_sphere_estimator(id)) return geodesic_angle(theta_hat, theta0);
  double acc = 0.0;
  for (std::size_t k = 0; k < theta0.size(); ++k) {
    const double d = theta_hat[k] - theta0[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void check_failures(std::size_t failures, std::size_t total) {
  if (failures * 20 > total) {
    throw NumericError("monte carlo: more than 5% of replications failed");
  }
}

}  // namespace

RateFamily rate_family_from_string(const std::string& s) {
  if (s == "nh") return RateFamily::nh;
  if (s == "nh_over_log") return RateFamily::nh_over_log;
  if (s == "nh2") return RateFamily::nh2;
  throw InvalidSpec("unknown rate family: " + s);
}

std::string to_string(RateFamily f) {
  switch (f) {
    case RateFamily::nh: return "nh";
    case RateFamily::nh_over_log: return "nh_over_log";
    case RateFamily::nh2: return "nh2";
  }
  return "nh";
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::pair<double, double> ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw InvalidSpec("ols_slope: need >= 3 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw NumericError("ols_slope: regressor has no variation");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - my - slope * (x[i] - mx);
    rss += r * r;
  }
  const double se = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
  return {slope, se};
}

RateReport rate_experiment(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                           const est::EstimatorConfig& cfg, const std::vector<std::size_t>& ns,
                           std::size_t R, std::uint64_t master_seed, RateFamily family,
                           std::size_t workers) {
  if (ns.size() < 3) throw InvalidSpec("rate_experiment: need >= 3 sample sizes");
  if (R < 50) throw InvalidSpec("rate_experiment: need R >= 50");

  RateReport report;
  report.family = family;
  std::vector<double> log_eff, log_rmse;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::size_t n = ns[ni];
    std::vector<double> errs(R, std::numeric_limits<double>::quiet_NaN());
    parallel_for(R, workers, [&](std::size_t r) {
      dgp::DgpSpec spec = tmpl;
      spec.n = n;
      spec.seed = derive_seed(master_seed, ni * R + r);
      try {
        const auto sample = dgp::generate(spec);
        const auto fit = est::run_point_estimator(estimator_id, sample, cfg);
        errs[r] = estimation_error(estimator_id, fit.theta_hat, dgp::true_theta(spec));
      } catch (const Error&) {
        // counted as a failure below
      }
    });
    RateRow row;
    row.n = n;
    row.h = cfg.bandwidth.at(n);
    double ss = 0.0;
    for (double e : errs) {
      if (std::isnan(e)) {
        ++row.failures;
      } else {
        ss += e * e;
        ++row.reps;
      }
    }
    check_failures(row.failures, R);
    row.rmse = std::sqrt(ss / static_cast<double>(row.reps));
    const double nh = static_cast<double>(n) * row.h;
    switch (family) {
      case RateFamily::nh: row.effective = nh; break;
      case RateFamily::nh_over_log: row.effective = nh / std::log(nh); break;
      case RateFamily::nh2: row.effective = nh * row.h; break;
    }
    if (!(row.rmse > 0.0)) throw NumericError("rate_experiment: zero RMSE, slope undefined");
    log_eff.push_back(std::log(row.effective));
    log_rmse.push_back(std::log(row.rmse));
    report.rows.push_back(row);
  }
  std::tie(report.slope, report.slope_se) = ols_slope(log_eff, log_rmse);
  return report;
}

CoverageReport coverage_experiment(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                                   const est::EstimatorConfig& cfg, std::size_t n,
                                   std::size_t block_len, double alpha, std::size_t R,
                                   std::uint64_t master_seed, std::size_t workers) {
  if (R < 100) throw InvalidSpec("coverage_experiment: need R >= 100");
  std::vector<int> covered(R, -1);
  parallel_for(R, workers, [&](std::size_t r) {
    dgp::DgpSpec spec = tmpl;
    spec.n = n;
    spec.seed = derive_seed(master_seed, r);
    try {
      const auto sample = dgp::generate(spec);
      const auto ci = inf::subsample_ci(sample, estimator_id, cfg, block_len, alpha);
      const auto theta0 = dgp::true_theta(spec);
      bool ok = true;
      for (std::size_t k = 0; k < theta0.size(); ++k) {
        if (theta0[k] < ci.lower[k] || theta0[k] > ci.upper[k]) ok = false;
      }
      covered[r] = ok ? 1 : 0;
    } catch (const Error&) {
    }
  });
  CoverageReport out;
  std::size_t hits = 0;
  for (int c : covered) {
    if (c < 0) {
      ++out.failures;
    } else {
      ++out.reps;
      hits += static_cast<std::size_t>(c);
    }
  }
  check_failures(out.failures, R);
  out.coverage = static_cast<double>(hits) / static_cast<double>(out.reps);
  out.se = std::sqrt(out.coverage * (1.0 - out.coverage) / static_cast<double>(out.reps));
  return out;
}

SetRateReport set_experiment(const dgp::DgpSpec& tmpl, const std::vector<double>& theta_grid,
                             double nuisance_bandwidth, double cutoff, std::size_t n,
                             std::size_t R, std::uint64_t master_seed, std::size_t workers) {
  if (R < 50) throw InvalidSpec("set_experiment: need R >= 50");
  dgp::DgpSpec base = tmpl;
  base.n = n;
  const GridSet truth = dgp::interval_binary_identified_set(base, theta_grid);
  std::vector<int> contains(R, -1);
  std::vector<double> rho_val(R, std::numeric_limits<double>::quiet_NaN());
  parallel_for(R, workers, [&](std::size_t r) {
    dgp::DgpSpec spec = base;
    spec.seed = derive_seed(master_seed, r);
    try {
      const auto sample = dgp::generate(spec);
      const auto fit = est::manski_tamer_set(sample, theta_grid, nuisance_bandwidth, cutoff);
      bool ok = true;
      for (std::size_t i = 0; i < truth.node_count(); ++i) {
        if (truth.masked(i) && !fit.set.masked(i)) ok = false;
      }
      contains[r] = ok ? 1 : 0;
      rho_val[r] = rho(fit.set, truth);
    } catch (const Error&) {
    }
  });
  SetRateReport out;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < R; ++r) {
    if (contains[r] < 0) {
      ++out.failures;
    } else {
      ++out.reps;
      hits += static_cast<std::size_t>(contains[r]);
      out.rho_values.push_back(rho_val[r]);
    }
  }
  check_failures(out.failures, R);
  out.containment = static_cast<double>(hits) / static_cast<double>(out.reps);
  out.median_rho = inf::quantile_type1(out.rho_values, 0.5);
  return out;
}

KsReport limit_comparison(const dgp::DgpSpec& tmpl, const std::string& estimator_id,
                          const est::EstimatorConfig& cfg, std::size_t n, std::size_t R,
                          std::uint64_t master_seed, const limitlaw::LimitLawSpec& limit,
                          std::size_t M, std::size_t coord, std::size_t workers) {
  if (R < 50) throw InvalidSpec("limit_comparison: need R >= 50");
  std::vector<double> stats(R, std::numeric_limits<double>::quiet_NaN());
  parallel_for(R, workers, [&](std::size_t r) {
    dgp::DgpSpec spec = tmpl;
    spec.n = n;
    spec.seed = derive_seed(master_seed, r);
    try {
      const auto sample = dgp::generate(spec);
      const auto fit = est::run_point_estimator(estimator_id, sample, cfg);
      const auto theta0 = dgp::true_theta(spec);
      stats[r] = std::cbrt(fit.effective_n) * (fit.theta_hat[coord] - theta0[coord]);
    } catch (const Error&) {
    }
  });
  KsReport out;
  for (double s : stats) {
    if (std::isnan(s)) {
      ++out.failures;
    } else {
      out.scaled_errors.push_back(s);
      ++out.reps;
    }
  }
  check_failures(out.failures, R);
  const auto law = limitlaw::simulate_argmax_law(limit, M, derive_seed(master_seed, 1000003 + R));
  out.ks = limitlaw::ks_distance(out.scaled_errors, limitlaw::coordinate(law, coord));
  return out;
}

}  // namespace mc
}  // namespace cuberoot
