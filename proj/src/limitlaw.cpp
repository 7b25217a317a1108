#include "cuberoot/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "cuberoot/errors.hpp"
#include "cuberoot/rng.hpp"

namespace cuberoot {
namespace limitlaw {

namespace {

double quad_form(const std::vector<std::vector<double>>& V, const std::vector<double>& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) acc += s[i] * V[i][j] * s[j];
  }
  return acc;
}

}  // namespace

void LimitLawSpec::validate() const {
  if (d < 1) throw InvalidSpec("limit law: d must be >= 1");
  if (V.size() != d) throw InvalidSpec("limit law: V must be d x d");
  for (const auto& row : V) {
    if (row.size() != d) throw InvalidSpec("limit law: V must be d x d");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (std::fabs(V[i][j] - V[j][i]) > 1e-12) throw InvalidSpec("limit law: V not symmetric");
    }
  }
  // Negative definiteness spot-check on basis vectors and the diagonal probe.
  std::vector<double> probe(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::fill(probe.begin(), probe.end(), 0.0);
    probe[i] = 1.0;
    if (!(quad_form(V, probe) < 0.0)) throw InvalidSpec("limit law: V not negative definite");
  }
  std::fill(probe.begin(), probe.end(), 1.0);
  if (!(quad_form(V, probe) < 0.0)) throw InvalidSpec("limit law: V not negative definite");
  if (!H) throw InvalidSpec("limit law: missing covariance kernel");
  // Kernel sanity on a few deterministic probes.
  std::vector<double> a(d, 0.0), b(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    a[i] = 0.7 + 0.1 * static_cast<double>(i);
    b[i] = -0.4 + 0.2 * static_cast<double>(i);
  }
  if (std::fabs(H(a, b) - H(b, a)) > 1e-12) throw InvalidSpec("limit law: H not symmetric");
  if (H(a, a) < -1e-12 || H(b, b) < -1e-12) throw InvalidSpec("limit law: H(s,s) negative");
  if (!(K > 0.0) || m < 2) throw InvalidSpec("limit law: need K > 0 and m >= 2");
}

std::function<double(const std::vector<double>&)> empirical_abs_moment(
    const std::function<std::vector<double>(std::uint64_t)>& sampler, std::size_t draws,
    std::uint64_t seed) {
  if (draws == 0) throw InvalidSpec("empirical_abs_moment: draws must be positive");
  auto data = std::make_shared<std::vector<std::vector<double>>>();
  data->reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) data->push_back(sampler(derive_seed(seed, i)));
  return [data](const std::vector<double>& u) {
    double acc = 0.0;
    for (const auto& x : *data) {
      double dot = 0.0;
      for (std::size_t k = 0; k < u.size(); ++k) dot += x[k] * u[k];
      acc += std::fabs(dot);
    }
    return acc / static_cast<double>(data->size());
  };
}

namespace {

LimitLawSpec build_combination_kernel(double density_value,
                                      std::vector<std::vector<double>> V,
                                      std::function<double(const std::vector<double>&)> mean_abs,
                                      double K, std::size_t m) {
  if (!(density_value > 0.0)) throw InvalidDensity("limit kernel: density value must be positive");
  LimitLawSpec spec;
  spec.d = V.size();
  spec.V = std::move(V);
  spec.K = K;
  spec.m = m;
  const double scale = 2.0 * density_value;
  spec.H = [scale, mean_abs](const std::vector<double>& s1, const std::vector<double>& s2) {
    std::vector<double> diff(s1.size());
    for (std::size_t k = 0; k < s1.size(); ++k) diff[k] = s1[k] - s2[k];
    const double l12 = scale * mean_abs(diff);
    const double l10 = scale * mean_abs(s1);
    const double l02 = scale * mean_abs(s2);
    return 0.5 * (l10 + l02 - l12);
  };
  spec.validate();
  return spec;
}

}  // namespace

LimitLawSpec build_kernel_lms(double gamma1, double gamma1_dot,
                              const std::vector<std::vector<double>>& pxx,
                              std::function<double(const std::vector<double>&)> mean_abs,
                              double K, std::size_t m) {
  std::vector<std::vector<double>> V(pxx.size(), std::vector<double>(pxx.size()));
  for (std::size_t i = 0; i < pxx.size(); ++i) {
    for (std::size_t j = 0; j < pxx.size(); ++j) V[i][j] = 2.0 * gamma1_dot * pxx[i][j];
  }
  return build_combination_kernel(gamma1, std::move(V), std::move(mean_abs), K, m);
}

LimitLawSpec build_kernel_hough(double gamma0, double gamma0_ddot,
                                const std::vector<std::vector<double>>& p_absx_xx,
                                std::function<double(const std::vector<double>&)> mean_abs,
                                double K, std::size_t m) {
  std::vector<std::vector<double>> V(p_absx_xx.size(), std::vector<double>(p_absx_xx.size()));
  for (std::size_t i = 0; i < p_absx_xx.size(); ++i) {
    for (std::size_t j = 0; j < p_absx_xx.size(); ++j) V[i][j] = gamma0_ddot * p_absx_xx[i][j];
  }
  return build_combination_kernel(gamma0, std::move(V), std::move(mean_abs), K, m);
}

ArgmaxSample simulate_argmax_law(const LimitLawSpec& spec, std::size_t M, std::uint64_t seed) {
  spec.validate();
  if (M == 0) throw InvalidSpec("simulate_argmax_law: M must be positive");
  double nodes_d = 1.0;
  for (std::size_t k = 0; k < spec.d; ++k) nodes_d *= static_cast<double>(spec.m);
  if (nodes_d > 1e5) throw GridTooLarge("simulate_argmax_law: m^d exceeds 1e5");
  const std::size_t N = static_cast<std::size_t>(nodes_d);

  // Grid nodes in row-major order (last axis fastest) = lexicographic order.
  std::vector<std::vector<double>> nodes(N, std::vector<double>(spec.d));
  for (std::size_t flat = 0; flat < N; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = spec.d; k-- > 0;) {
      const std::size_t idx = rem % spec.m;
      rem /= spec.m;
      nodes[flat][k] =
          -spec.K + 2.0 * spec.K * static_cast<double>(idx) / static_cast<double>(spec.m - 1);
    }
  }

  Eigen::MatrixXd sigma(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) {
      const double v = spec.H(nodes[i], nodes[j]);
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  }

  Eigen::MatrixXd chol;
  bool ok = false;
  for (double jitter = 1e-10; jitter <= 1.0000001e-6; jitter *= 10.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma +
                                    jitter * Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    if (llt.info() == Eigen::Success) {
      chol = llt.matrixL();
      ok = true;
      break;
    }
  }
  if (!ok) throw FactorizationFailure("simulate_argmax_law: covariance not factorizable");

  Eigen::VectorXd drift(N);
  for (std::size_t i = 0; i < N; ++i) drift(i) = 0.5 * quad_form(spec.V, nodes[i]);

  ArgmaxSample out;
  out.points.reserve(M);
  std::size_t boundary = 0;
  const std::size_t chunk = 512;
  Eigen::MatrixXd z(N, chunk);
  for (std::size_t start = 0; start < M; start += chunk) {
    const std::size_t cols = std::min(chunk, M - start);
    for (std::size_t j = 0; j < cols; ++j) {
      Rng rng(derive_seed(seed, start + j));
      for (std::size_t i = 0; i < N; ++i) z(i, j) = rng.normal();
    }
    const Eigen::MatrixXd paths = chol * z.leftCols(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t arg = 0;
      double best = paths(0, j) + drift(0);
      for (std::size_t i = 1; i < N; ++i) {
        const double v = paths(i, j) + drift(i);
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      // Boundary diagnostic: any coordinate index on the grid hull.
      std::size_t rem = arg;
      bool on_hull = false;
      for (std::size_t k = 0; k < spec.d; ++k) {
        const std::size_t idx = rem % spec.m;
        rem /= spec.m;
        if (idx == 0 || idx == spec.m - 1) on_hull = true;
      }
      if (on_hull) ++boundary;
      out.points.push_back(nodes[arg]);
    }
  }
  out.boundary_mass = static_cast<double>(boundary) / static_cast<double>(M);
  return out;
}

std::vector<double> coordinate(const ArgmaxSample& s, std::size_t k) {
  std::vector<double> out(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) out[i] = s.points[i][k];
  return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidSpec("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      const double x = a[i];
      while (i < a.size() && a[i] == x) ++i;
      while (j < b.size() && b[j] == x) ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  return d;
}

}  // namespace limitlaw
}  // namespace cuberoot
