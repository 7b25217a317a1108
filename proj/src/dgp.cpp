#include "cuberoot/dgp.hpp"

#include <cmath>

#include "cuberoot/direction.hpp"
#include "cuberoot/errors.hpp"
#include "cuberoot/rng.hpp"

namespace cuberoot {
namespace dgp {

namespace {

constexpr std::size_t kBurnIn = 1000;
constexpr double kSqrt2 = 1.4142135623730950488;
const double kInvSqrt2Pi = 0.3989422804014326779399461;

// Scale making the median of |u| equal 1 for centered normal errors:
// 1 / Phi^-1(0.75).
constexpr double kLmsErrorScale = 1.482602218505602;

constexpr double kHoughTrunc = 5.0;

double std_normal_cdf(double z) { return 0.5 * (1.0 + std::erf(z / kSqrt2)); }
double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Stationary Gaussian AR(1) path with N(0,1) marginal; discards kBurnIn
// warm-up draws.
std::vector<double> ar1_path(Rng& rng, std::size_t n, double rho) {
  const double innov = std::sqrt(1.0 - rho * rho);
  double a = rng.normal();
  for (std::size_t t = 0; t < kBurnIn; ++t) a = rho * a + innov * rng.normal();
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    a = rho * a + innov * rng.normal();
    out[t] = a;
  }
  return out;
}

double logistic_draw(Rng& rng, double scale) {
  const double u = rng.uniform_pos();
  return scale * std::log(u / (1.0 - u));
}

double truncated_normal_draw(Rng& rng, double radius) {
  double z;
  do {
    z = rng.normal();
  } while (std::fabs(z) > radius);
  return z;
}

void check_rho(double rho) {
  if (!(std::fabs(rho) < 1.0)) throw InvalidSpec("AR coefficient must satisfy |rho| < 1");
}

}  // namespace

double DgpSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

TimeSeriesSample generate(const DgpSpec& spec) {
  if (spec.n < 1) throw InvalidSpec("dgp: n must be >= 1");
  const std::size_t n = spec.n;

  if (spec.model == "ar1") {
    const double rho = spec.param("rho", 0.5);
    const double sigma = spec.param("sigma", 1.0);
    const double mu = spec.param("mu", 0.0);
    check_rho(rho);
    if (!(sigma > 0.0)) throw InvalidSpec("ar1: sigma must be positive");
    Rng rng(derive_seed(spec.seed, 0));
    double y = sigma * rng.normal() / std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 0; t < kBurnIn; ++t) y = rho * y + sigma * rng.normal();
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      y = rho * y + sigma * rng.normal();
      rows[t] = {mu + y};
    }
    return TimeSeriesSample({"y"}, std::move(rows));
  }

  if (spec.model == "lms") {
    const double rho = spec.param("rho", 0.3);
    const double b0 = spec.param("intercept", 1.0);
    const bool regression = spec.params.count("slope") > 0;
    const double b1 = spec.param("slope", 0.0);
    check_rho(rho);
    Rng erng(derive_seed(spec.seed, 0));
    const auto e = ar1_path(erng, n, rho);
    std::vector<std::vector<double>> rows(n);
    if (regression) {
      Rng xrng(derive_seed(spec.seed, 1));
      const auto x = ar1_path(xrng, n, spec.param("xrho", 0.3));
      for (std::size_t t = 0; t < n; ++t) {
        rows[t] = {b0 + b1 * x[t] + kLmsErrorScale * e[t], x[t]};
      }
      return TimeSeriesSample({"y", "x"}, std::move(rows));
    }
    for (std::size_t t = 0; t < n; ++t) rows[t] = {b0 + kLmsErrorScale * e[t]};
    return TimeSeriesSample({"y"}, std::move(rows));
  }

  if (spec.model == "max_score") {
    const double rho = spec.param("rho", 0.5);
    const double angle = spec.param("theta_angle", 0.78539816339744830962);
    check_rho(rho);
    Rng x1rng(derive_seed(spec.seed, 0));
    Rng x2rng(derive_seed(spec.seed, 1));
    Rng urng(derive_seed(spec.seed, 2));
    const auto x1 = ar1_path(x1rng, n, rho);
    const auto x2 = ar1_path(x2rng, n, rho);
    const auto theta = unit_from_angle(angle);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double y = x1[t] * theta[0] + x2[t] * theta[1] + logistic_draw(urng, 1.0);
      rows[t] = {y >= 0.0 ? 1.0 : -1.0, x1[t], x2[t]};
    }
    return TimeSeriesSample({"sign_y", "x1", "x2"}, std::move(rows));
  }

  if (spec.model == "rc_binary") {
    const double rho = spec.param("rho", 0.5);
    const double angle = spec.param("theta_angle", 0.78539816339744830962);
    const double angle_slope = spec.param("angle_slope", 0.5);
    const double c = spec.param("c", 0.5);
    check_rho(rho);
    Rng x1rng(derive_seed(spec.seed, 0));
    Rng x2rng(derive_seed(spec.seed, 1));
    Rng wrng(derive_seed(spec.seed, 2));
    Rng urng(derive_seed(spec.seed, 3));
    const auto x1 = ar1_path(x1rng, n, rho);
    const auto x2 = ar1_path(x2rng, n, rho);
    const auto wchain = ar1_path(wrng, n, rho);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double w = std_normal_cdf(wchain[t]);  // stationary U(0,1), mixing
      const auto theta = unit_from_angle(angle + angle_slope * (w - c));
      const double y = x1[t] * theta[0] + x2[t] * theta[1] + logistic_draw(urng, 1.0);
      rows[t] = {y >= 0.0 ? 1.0 : -1.0, x1[t], x2[t], w};
    }
    return TimeSeriesSample({"sign_y", "x1", "x2", "w"}, std::move(rows));
  }

  if (spec.model == "panel_hk") {
    // One row per individual: (y0..y3, x1..x3), scalar regressor.
    const double beta = spec.param("beta0", 0.92387953251128675613);
    const double gamma = spec.param("gamma0", 0.38268343236508977173);
    Rng rng(derive_seed(spec.seed, 0));
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x1 = rng.normal(), x2 = rng.normal(), x3 = rng.normal();
      const double alpha = rng.normal();
      const double xbar = (x1 + x2 + x3) / 3.0;
      auto logistic = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
      double y_prev = rng.uniform() < logistic(xbar + alpha) ? 1.0 : 0.0;
      const double y0 = y_prev;
      double ys[3];
      const double xs[3] = {x1, x2, x3};
      for (int t = 0; t < 3; ++t) {
        const double p = logistic(xs[t] * beta + gamma * y_prev + alpha);
        ys[t] = rng.uniform() < p ? 1.0 : 0.0;
        y_prev = ys[t];
      }
      rows[i] = {y0, ys[0], ys[1], ys[2], x1, x2, x3};
    }
    return TimeSeriesSample({"y0", "y1", "y2", "y3", "x1", "x2", "x3"}, std::move(rows));
  }

  if (spec.model == "interval_binary") {
    const double rho = spec.param("rho", 0.3);
    const double theta0 = spec.param("theta0", 0.5);
    const double delta = spec.param("delta", 0.25);
    const double uscale = spec.param("uscale", 0.25);
    check_rho(rho);
    if (delta < 0.0) throw InvalidSpec("interval_binary: delta must be >= 0");
    Rng xrng(derive_seed(spec.seed, 0));
    Rng wrng(derive_seed(spec.seed, 1));
    Rng urng(derive_seed(spec.seed, 2));
    const auto xc = ar1_path(xrng, n, rho);
    const auto wc = ar1_path(wrng, n, rho);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double x = 4.0 * (std_normal_cdf(xc[t]) - 0.5);  // U(-2, 2), mixing
      const double w = 2.0 * (std_normal_cdf(wc[t]) - 0.5);  // U(-1, 1), mixing
      const double u = logistic_draw(urng, uscale);
      const double y = (x * theta0 + w + u >= 0.0) ? 1.0 : 0.0;
      rows[t] = {y, x, w - delta, w + delta};
    }
    return TimeSeriesSample({"y", "x", "w_l", "w_u"}, std::move(rows));
  }

  if (spec.model == "monotone_density") {
    const double rho = spec.param("rho", 0.5);
    const double rate = spec.param("rate", 1.0);
    check_rho(rho);
    if (!(rate > 0.0)) throw InvalidSpec("monotone_density: rate must be positive");
    Rng rng(derive_seed(spec.seed, 0));
    const auto a = ar1_path(rng, n, rho);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      // Gaussian-copula transform: Exp(rate) marginal, AR(1) dependence.
      double u = 1.0 - std_normal_cdf(a[t]);
      if (u <= 0.0) u = 1e-300;
      rows[t] = {-std::log(u) / rate};
    }
    return TimeSeriesSample({"z"}, std::move(rows));
  }

  if (spec.model == "hough_line") {
    const double rho = spec.param("rho", 0.5);
    const double b0 = spec.param("intercept", 0.3);
    const double b1 = spec.param("slope", 0.7);
    check_rho(rho);
    Rng xrng(derive_seed(spec.seed, 0));
    Rng urng(derive_seed(spec.seed, 1));
    const auto x = ar1_path(xrng, n, rho);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double u = truncated_normal_draw(urng, kHoughTrunc);
      rows[t] = {b0 + b1 * x[t] + u, x[t]};
    }
    return TimeSeriesSample({"y", "x"}, std::move(rows));
  }

  if (spec.model == "minvol_pred") {
    const double rho = spec.param("rho", 0.5);
    const double theta0 = spec.param("theta0", 0.0);
    const double sigma = spec.param("sigma", 1.0);
    check_rho(rho);
    if (!(sigma > 0.0)) throw InvalidSpec("minvol_pred: sigma must be positive");
    Rng xrng(derive_seed(spec.seed, 0));
    Rng urng(derive_seed(spec.seed, 1));
    const auto x = ar1_path(xrng, n, rho);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t t = 0; t < n; ++t) {
      rows[t] = {theta0 + sigma * urng.normal(), x[t]};
    }
    return TimeSeriesSample({"y", "x"}, std::move(rows));
  }

  throw InvalidSpec("unknown dgp model: " + spec.model);
}

std::vector<double> true_theta(const DgpSpec& spec) {
  if (spec.model == "ar1") return {spec.param("mu", 0.0)};
  if (spec.model == "lms") {
    if (spec.params.count("slope") > 0) {
      return {spec.param("intercept", 1.0), spec.param("slope", 0.0)};
    }
    return {spec.param("intercept", 1.0)};
  }
  if (spec.model == "max_score") {
    return canonical_direction(unit_from_angle(spec.param("theta_angle", 0.78539816339744830962))).v;
  }
  if (spec.model == "rc_binary") {
    return canonical_direction(unit_from_angle(spec.param("theta_angle", 0.78539816339744830962))).v;
  }
  if (spec.model == "panel_hk") {
    return canonical_direction({spec.param("beta0", 0.92387953251128675613),
                                spec.param("gamma0", 0.38268343236508977173)})
        .v;
  }
  if (spec.model == "interval_binary") return {spec.param("theta0", 0.5)};
  if (spec.model == "hough_line") return {spec.param("intercept", 0.3), spec.param("slope", 0.7)};
  if (spec.model == "minvol_pred") return {spec.param("theta0", 0.0)};
  if (spec.model == "monotone_density") return {};
  throw InvalidSpec("unknown dgp model: " + spec.model);
}

GridSet interval_binary_identified_set(const DgpSpec& spec,
                                       const std::vector<double>& theta_grid) {
  const double theta0 = spec.param("theta0", 0.5);
  const double delta = spec.param("delta", 0.25);
  // x ~ U(-2, 2), w ~ U(-1, 1), independent. For each theta, the defining
  // events reduce to w-intervals whose length integrates in closed form over
  // a fine x grid (integrand piecewise linear in x).
  const int nx = 4000;
  auto event_prob = [&](double theta) {
    auto w_len = [&](double wlo, double whi) {
      return std::max(0.0, std::min(whi, 1.0) - std::max(wlo, -1.0));
    };
    double acc = 0.0;
    for (int i = 0; i <= nx; ++i) {
      const double x = -2.0 + 4.0 * static_cast<double>(i) / nx;
      // E1: x theta + w_u <= 0 < x theta0 + w_l
      const double l1 = w_len(delta - x * theta0, -x * theta - delta);
      // E2: x theta0 + w_u <= 0 < x theta + w_l
      const double l2 = w_len(delta - x * theta, -x * theta0 - delta);
      const double weight = (i == 0 || i == nx) ? 0.5 : 1.0;
      acc += weight * (l1 + l2);
    }
    return acc * (4.0 / nx) / (4.0 * 2.0);
  };

  GridSet out = GridSet::empty({theta_grid});
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    if (event_prob(theta_grid[i]) <= 1e-7) out.set(i, true);
  }
  return out;
}

double lms_error_density(const DgpSpec&, double v) {
  return std_normal_pdf(v / kLmsErrorScale) / kLmsErrorScale;
}

double lms_error_density_deriv(const DgpSpec&, double v) {
  const double s = kLmsErrorScale;
  return -(v / (s * s * s)) * std_normal_pdf(v / s);
}

double hough_error_density(const DgpSpec&, double v) {
  if (std::fabs(v) > kHoughTrunc) return 0.0;
  const double mass = std::erf(kHoughTrunc / kSqrt2);
  return std_normal_pdf(v) / mass;
}

double hough_error_density_deriv2(const DgpSpec&, double v) {
  const double mass = std::erf(kHoughTrunc / kSqrt2);
  return (v * v - 1.0) * std_normal_pdf(v) / mass;
}

}  // namespace dgp
}  // namespace cuberoot
