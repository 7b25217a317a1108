#include "cuberoot/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cuberoot/errors.hpp"

namespace cuberoot {
namespace est {

namespace {

double sgn01(double v) { return v >= 0.0 ? 1.0 : -1.0; }

// Shorth of a value vector: shortest window containing ceil(n/2) points,
// leftmost on ties. Returns (lo, hi) of the winning window.
std::pair<double, double> shorth_window(std::vector<double> y) {
  if (y.empty()) throw DataError("shorth: empty sample");
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const std::size_t m = (n + 1) / 2;
  std::size_t best = 0;
  double best_len = y[m - 1] - y[0];
  for (std::size_t i = 1; i + m <= n; ++i) {
    const double len = y[i + m - 1] - y[i];
    if (len < best_len) {
      best_len = len;
      best = i;
    }
  }
  return {y[best], y[best + m - 1]};
}

std::size_t count_within(const std::vector<double>& y, double center, double nu) {
  std::size_t c = 0;
  for (double v : y) {
    if (std::fabs(v - center) <= nu) ++c;
  }
  return c;
}

// Max-overlap scan over closed intercept intervals [lo_t, hi_t]: the best
// intercept at a fixed slope for the slab criterion. Opens sort before
// closes at equal position so closed-interval touching counts.
std::pair<double, double> intercept_max_overlap(const std::vector<double>& lo,
                                                const std::vector<double>& hi) {
  std::vector<std::pair<double, int>> ev;
  ev.reserve(2 * lo.size());
  for (std::size_t t = 0; t < lo.size(); ++t) {
    ev.emplace_back(lo[t], 0);
    ev.emplace_back(hi[t], 1);
  }
  std::sort(ev.begin(), ev.end());
  int depth = 0, best = 0;
  double best_pos = ev.empty() ? 0.0 : ev.front().first;
  for (const auto& [pos, kind] : ev) {
    if (kind == 0) {
      if (++depth > best) {
        best = depth;
        best_pos = pos;
      }
    } else {
      --depth;
    }
  }
  return {best_pos, static_cast<double>(best)};
}

std::vector<double> hough_half_widths(const std::vector<double>& xt, double h) {
  std::vector<double> hw(xt.size());
  for (std::size_t t = 0; t < xt.size(); ++t) hw[t] = h * std::sqrt(1.0 + xt[t] * xt[t]);
  return hw;
}

double hough_count(const std::vector<double>& y, const std::vector<double>& xt,
                   const std::vector<double>& hw, double b0, double b1) {
  double c = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (std::fabs(y[t] - b0 - b1 * xt[t]) <= hw[t]) c += 1.0;
  }
  return c;
}

PointEstimate package_direction(optim::OptimizerReport rep, double effective_n) {
  PointEstimate out;
  out.theta_hat = canonical_direction(rep.point).v;
  out.criterion = rep.value;
  out.effective_n = effective_n;
  out.report = std::move(rep);
  return out;
}

}  // namespace

PointEstimate max_score(const TimeSeriesSample& sample) {
  const std::size_t n = sample.n();
  if (n < 2) throw DataError("max_score: need n >= 2");
  const auto sy = sample.column("sign_y");
  const auto x1 = sample.column("x1");
  const auto x2 = sample.column("x2");
  std::vector<std::vector<double>> x(n);
  std::vector<double> coeff(n);
  double offset = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = {x1[t], x2[t]};
    coeff[t] = sy[t] >= 0.0 ? 1.0 : -1.0;
    if (sy[t] < 0.0) offset += 1.0;
  }
  return package_direction(optim::sign_agreement_sweep(x, coeff, offset),
                           static_cast<double>(n));
}

PointEstimate honore_kyriazidou(const TimeSeriesSample& sample, const Kernel& kernel,
                                const BandwidthRule& bw) {
  const std::size_t n = sample.n();
  if (n < 2) throw DataError("honore_kyriazidou: need n >= 2");
  const double b = bw.at(n);
  const auto y0 = sample.column("y0"), y1 = sample.column("y1");
  const auto y2 = sample.column("y2"), y3 = sample.column("y3");
  const auto x1 = sample.column("x1"), x2 = sample.column("x2"), x3 = sample.column("x3");
  std::vector<std::vector<double>> z;
  std::vector<double> coeff;
  double offset = 0.0;
  bool any_weight = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = kernel_eval(kernel, (x2[i] - x3[i]) / b) / b * (y2[i] - y1[i]);
    if (e == 0.0) continue;
    any_weight = true;
    // e * sgn(z'theta) = 2 e I{z'theta >= 0} - e
    z.push_back({x2[i] - x1[i], y3[i] - y0[i]});
    coeff.push_back(2.0 * e);
    offset -= e;
  }
  if (!any_weight) throw ZeroEffectiveSample("honore_kyriazidou: all kernel weights zero");
  return package_direction(optim::sign_agreement_sweep(z, coeff, offset),
                           bw.effective_size(n));
}

PointEstimate localized_max_score(const TimeSeriesSample& sample, double c,
                                  const Kernel& kernel, const BandwidthRule& bw) {
  const std::size_t n = sample.n();
  if (n < 2) throw DataError("localized_max_score: need n >= 2");
  const double b = bw.at(n);
  const auto sy = sample.column("sign_y");
  const auto x1 = sample.column("x1");
  const auto x2 = sample.column("x2");
  const auto w = sample.column("w");
  std::vector<std::vector<double>> x;
  std::vector<double> coeff;
  double offset = 0.0;
  bool any_weight = false;
  for (std::size_t t = 0; t < n; ++t) {
    const double k = kernel_eval(kernel, (w[t] - c) / b) / b;
    if (k == 0.0) continue;
    any_weight = true;
    if (sy[t] < 0.0) offset += k;
    x.push_back({x1[t], x2[t]});
    coeff.push_back(sy[t] >= 0.0 ? k : -k);
  }
  if (!any_weight) throw ZeroEffectiveSample("localized_max_score: all kernel weights zero");
  return package_direction(optim::sign_agreement_sweep(x, coeff, offset),
                           bw.effective_size(n));
}

IntervalEstimate min_volume_region(const TimeSeriesSample& sample, double c, double alpha,
                                   const Kernel& kernel, const BandwidthRule& bw) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("min_volume_region: alpha in (0,1)");
  const std::size_t n = sample.n();
  const double h = bw.at(n);
  const auto y = sample.column("y");
  const auto x = sample.column("x");
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    w[t] = kernel_eval(kernel, (x[t] - c) / h);
    total += w[t];
  }
  if (total <= 0.0) throw ZeroEffectiveSample("min_volume_region: no local mass at c");

  std::vector<double> ys;
  ys.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (w[t] > 0.0) ys.push_back(y[t]);
  }
  std::sort(ys.begin(), ys.end());
  std::vector<double> cand;
  cand.push_back(0.0);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = i + 1; j < ys.size(); ++j) cand.push_back((ys[j] - ys[i]) / 2.0);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const double target = alpha * total;
  auto covers = [&](double nu) {
    return optim::max_weighted_window(y, w, nu).second >= target;
  };
  // Coverage is nondecreasing in nu and reaches total at the largest
  // candidate, so the smallest feasible candidate exists.
  std::size_t lo = 0, hi = cand.size() - 1;
  if (!covers(cand[hi])) throw NumericError("min_volume_region: coverage unattainable");
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (covers(cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double nu_hat = cand[lo];
  const auto win = optim::max_weighted_window(y, w, nu_hat);
  IntervalEstimate out;
  out.theta_hat = win.first;
  out.nu_hat = nu_hat;
  out.coverage = win.second / total;
  return out;
}

PointEstimate lms_location(const std::vector<double>& y) {
  const auto [lo, hi] = shorth_window(y);
  PointEstimate out;
  const double theta = (lo + hi) / 2.0;
  const double nu = (hi - lo) / 2.0;
  out.theta_hat = {theta};
  out.criterion = static_cast<double>(count_within(y, theta, nu));
  out.effective_n = static_cast<double>(y.size());
  out.report.point = {theta};
  out.report.value = out.criterion;
  out.report.region_lo = lo;
  out.report.region_hi = hi;
  out.report.evaluations = y.size();
  out.report.method = "shorth";
  return out;
}

PointEstimate lms_regression(const TimeSeriesSample& sample) {
  const std::size_t n = sample.n();
  if (n < 3) throw DataError("lms_regression: need n >= 3");
  const auto y = sample.column("y");
  const auto x = sample.column("x");
  std::vector<double> slopes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(x[j] - x[i]) > 1e-12) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
    }
  }
  if (slopes.empty()) throw DegenerateData("lms_regression: regressor has no variation");
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

  double best_len = 0.0, best_b1 = 0.0, best_lo = 0.0, best_hi = 0.0;
  bool have = false;
  std::vector<double> resid(n);
  for (const double b1 : slopes) {
    for (std::size_t t = 0; t < n; ++t) resid[t] = y[t] - b1 * x[t];
    const auto [lo, hi] = shorth_window(resid);
    if (!have || hi - lo < best_len) {
      have = true;
      best_len = hi - lo;
      best_b1 = b1;
      best_lo = lo;
      best_hi = hi;
    }
  }
  const double b0 = (best_lo + best_hi) / 2.0;
  for (std::size_t t = 0; t < n; ++t) resid[t] = y[t] - best_b1 * x[t];
  PointEstimate out;
  out.theta_hat = {b0, best_b1};
  out.criterion = static_cast<double>(count_within(resid, b0, best_len / 2.0));
  out.effective_n = static_cast<double>(n);
  out.report.point = out.theta_hat;
  out.report.value = out.criterion;
  out.report.region_lo = best_lo;
  out.report.region_hi = best_hi;
  out.report.evaluations = slopes.size();
  out.report.method = "pairwise_slope_shorth";
  return out;
}

PointEstimate hough_estimate(const TimeSeriesSample& sample, const BandwidthRule& bw) {
  const std::size_t n = sample.n();
  if (n < 2) throw DataError("hough_estimate: need n >= 2");
  const double h = bw.at(n);
  const auto y = sample.column("y");
  const auto xt = sample.column("x");
  const auto hw = hough_half_widths(xt, h);

  PointEstimate out;
  out.effective_n = static_cast<double>(n) * h * h;

  if (n <= 200) {
    auto rep = optim::vertex_sweep_2d(y, xt, hw, std::vector<double>(n, 1.0));
    out.theta_hat = rep.point;
    out.criterion = rep.value;
    out.report = std::move(rep);
    return out;
  }

  // Large-n path: multi-level slope refinement with the exact best intercept
  // (interval max-overlap) at each candidate slope. Flagged approximate in
  // the slope coordinate.
  double lo_b1 = -4.0, hi_b1 = 4.0;
  const int points = 61, levels = 6;
  const double shrink = 0.25;
  double best_b1 = 0.0, best_b0 = 0.0, best_val = -1.0;
  std::size_t evals = 0;
  std::vector<double> ilo(n), ihi(n);
  for (int lev = 0; lev < levels; ++lev) {
    for (int i = 0; i < points; ++i) {
      const double b1 = lo_b1 + (hi_b1 - lo_b1) * i / (points - 1);
      for (std::size_t t = 0; t < n; ++t) {
        const double c = y[t] - b1 * xt[t];
        ilo[t] = c - hw[t];
        ihi[t] = c + hw[t];
      }
      const auto [b0, val] = intercept_max_overlap(ilo, ihi);
      ++evals;
      if (val > best_val) {
        best_val = val;
        best_b0 = b0;
        best_b1 = b1;
      }
    }
    const double half = (hi_b1 - lo_b1) * shrink / 2.0;
    lo_b1 = std::max(-4.0, best_b1 - half);
    hi_b1 = std::min(4.0, best_b1 + half);
  }
  out.theta_hat = {best_b0, best_b1};
  out.criterion = hough_count(y, xt, hw, best_b0, best_b1);
  out.report.point = out.theta_hat;
  out.report.value = out.criterion;
  out.report.evaluations = evals;
  out.report.method = "slope_refine_exact_intercept";
  out.report.approximate = true;
  return out;
}

double grenander_at(std::vector<double> z, double c) {
  if (z.empty()) throw DataError("grenander_at: empty sample");
  if (!(c > 0.0)) throw InvalidSpec("grenander_at: c must be positive");
  for (double v : z) {
    if (!(v > 0.0)) throw DataError("grenander_at: observations must be positive");
  }
  std::sort(z.begin(), z.end());
  const std::size_t n = z.size();
  if (c > z.back()) return 0.0;
  // Upper concave hull of (0,0), (z_(i), i/n): keep slopes strictly
  // decreasing left to right.
  std::vector<double> hx{0.0}, hy{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double px = z[i];
    const double py = static_cast<double>(i + 1) / static_cast<double>(n);
    if (px == hx.back()) {  // ties: keep the higher CDF value
      hy.back() = py;
      continue;
    }
    while (hx.size() >= 2) {
      const std::size_t k = hx.size();
      const double s1 = (hy[k - 1] - hy[k - 2]) / (hx[k - 1] - hx[k - 2]);
      const double s2 = (py - hy[k - 1]) / (px - hx[k - 1]);
      if (s2 >= s1) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(px);
    hy.push_back(py);
  }
  // Left derivative: slope of the hull segment (hx[j-1], hx[j]] containing c.
  for (std::size_t j = 1; j < hx.size(); ++j) {
    if (c <= hx[j]) return (hy[j] - hy[j - 1]) / (hx[j] - hx[j - 1]);
  }
  return 0.0;  // unreachable: c <= z.back() = hx.back()
}

SetEstimate manski_tamer_set(const TimeSeriesSample& sample,
                             const std::vector<double>& theta_grid,
                             double nuisance_bandwidth, double cutoff) {
  if (theta_grid.empty()) throw EmptyGrid("manski_tamer_set: empty grid");
  if (!(nuisance_bandwidth > 0.0)) throw InvalidSpec("manski_tamer_set: bandwidth must be positive");
  const std::size_t n = sample.n();
  if (n < 2) throw DataError("manski_tamer_set: need n >= 2");
  const auto y = sample.column("y");
  const auto x = sample.column("x");
  const auto wl = sample.column("w_l");
  const auto wu = sample.column("w_u");

  // Nadaraya-Watson plug-in q(x, w_l, w_u) with a product Epanechnikov
  // kernel and one scalar bandwidth.
  const Kernel ek{KernelId::epanechnikov};
  const double b = nuisance_bandwidth;
  std::vector<double> qhat(n);
  for (std::size_t t = 0; t < n; ++t) {
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double k = kernel_eval(ek, (x[s] - x[t]) / b) *
                       kernel_eval(ek, (wl[s] - wl[t]) / b) *
                       kernel_eval(ek, (wu[s] - wu[t]) / b);
      num += k * y[s];
      den += k;
    }
    qhat[t] = num / den;  // den > 0: the s = t term is K(0)^3
  }

  auto s_n = [&](double theta) {
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double side = qhat[t] > 0.5 ? sgn01(x[t] * theta + wu[t]) : sgn01(x[t] * theta + wl[t]);
      acc += (y[t] - 0.5) * side;
    }
    return acc / static_cast<double>(n);
  };

  std::vector<double> vals(theta_grid.size());
  double vmax = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    vals[i] = s_n(theta_grid[i]);
    if (vals[i] > vmax) {
      vmax = vals[i];
      arg = i;
    }
  }
  const double c_hat = cutoff < 0.0 ? std::log(static_cast<double>(n)) : cutoff;
  const double eps = c_hat / std::sqrt(static_cast<double>(n));
  GridSet set = GridSet::empty({theta_grid});
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    if (vmax - vals[i] <= eps) set.set(i, true);
  }
  set.set(arg, true);
  return SetEstimate{std::move(set), c_hat, vmax};
}

PointEstimate run_point_estimator(const std::string& id, const TimeSeriesSample& sample,
                                  const EstimatorConfig& cfg) {
  if (id == "max_score") return max_score(sample);
  if (id == "honore_kyriazidou") return honore_kyriazidou(sample, cfg.kernel, cfg.bandwidth);
  if (id == "localized_max_score") {
    return localized_max_score(sample, cfg.center, cfg.kernel, cfg.bandwidth);
  }
  if (id == "lms_location") return lms_location(sample.column("y"));
  if (id == "lms_regression") return lms_regression(sample);
  if (id == "hough") return hough_estimate(sample, cfg.bandwidth);
  if (id == "min_volume") {
    const auto iv = min_volume_region(sample, cfg.center, cfg.alpha, cfg.kernel, cfg.bandwidth);
    PointEstimate out;
    out.theta_hat = {iv.theta_hat};
    out.criterion = iv.coverage;
    out.effective_n = cfg.bandwidth.effective_size(sample.n());
    out.report.point = out.theta_hat;
    out.report.value = iv.coverage;
    out.report.method = "min_volume";
    return out;
  }
  throw InvalidSpec("unknown estimator id: " + id);
}

double criterion_at(const std::string& id, const TimeSeriesSample& sample,
                    const EstimatorConfig& cfg, const std::vector<double>& theta) {
  const std::size_t n = sample.n();
  if (id == "max_score") {
    const auto sy = sample.column("sign_y");
    const auto x1 = sample.column("x1");
    const auto x2 = sample.column("x2");
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double xt = x1[t] * theta[0] + x2[t] * theta[1];
      if ((sy[t] >= 0.0 && xt >= 0.0) || (sy[t] < 0.0 && xt < 0.0)) acc += 1.0;
    }
    return acc;
  }
  if (id == "localized_max_score") {
    const double b = cfg.bandwidth.at(n);
    const auto sy = sample.column("sign_y");
    const auto x1 = sample.column("x1");
    const auto x2 = sample.column("x2");
    const auto w = sample.column("w");
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double k = kernel_eval(cfg.kernel, (w[t] - cfg.center) / b) / b;
      const double xt = x1[t] * theta[0] + x2[t] * theta[1];
      if ((sy[t] >= 0.0 && xt >= 0.0) || (sy[t] < 0.0 && xt < 0.0)) acc += k;
    }
    return acc;
  }
  if (id == "honore_kyriazidou") {
    const double b = cfg.bandwidth.at(n);
    const auto y0 = sample.column("y0"), y1 = sample.column("y1");
    const auto y2 = sample.column("y2"), y3 = sample.column("y3");
    const auto x1 = sample.column("x1"), x2 = sample.column("x2"), x3 = sample.column("x3");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = kernel_eval(cfg.kernel, (x2[i] - x3[i]) / b) / b * (y2[i] - y1[i]);
      acc += e * sgn01((x2[i] - x1[i]) * theta[0] + (y3[i] - y0[i]) * theta[1]);
    }
    return acc;
  }
  if (id == "lms_location") {
    const auto y = sample.column("y");
    const auto [lo, hi] = shorth_window(y);
    return static_cast<double>(count_within(y, theta[0], (hi - lo) / 2.0));
  }
  if (id == "hough") {
    const double h = cfg.bandwidth.at(n);
    const auto y = sample.column("y");
    const auto xt = sample.column("x");
    return hough_count(y, xt, hough_half_widths(xt, h), theta[0], theta[1]);
  }
  throw InvalidSpec("criterion_at: unsupported estimator id: " + id);
}

double criterion_gap(const TimeSeriesSample& sample, const std::string& id,
                     const EstimatorConfig& cfg, const std::vector<double>& theta) {
  const auto fit = run_point_estimator(id, sample, cfg);
  const double val = criterion_at(id, sample, cfg, theta);
  const double gap = std::max(0.0, fit.criterion - val) / static_cast<double>(sample.n());
  return std::pow(fit.effective_n, 2.0 / 3.0) * gap;
}

}  // namespace est
}  // namespace cuberoot
