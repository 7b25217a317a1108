// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Oracles here are written independently of the library internals
// (brute force or direct evaluation), sharing only the public definitions.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cuberoot/dgp.hpp"
#include "cuberoot/errors.hpp"
#include "cuberoot/estimators.hpp"
#include "cuberoot/inference.hpp"
#include "cuberoot/kernel.hpp"
#include "cuberoot/limitlaw.hpp"
#include "cuberoot/montecarlo.hpp"
#include "cuberoot/rng.hpp"
#include "cuberoot/sample.hpp"

using namespace cuberoot;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail,
            double seconds) {
  if (!ok) ++g_failures;
  std::printf("criterion %2d: %s  %-52s %s (%.1fs)\n", idx, ok ? "PASS" : "FAIL", what.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

template <typename F>
void run(int idx, const std::string& what, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(idx, ok, what, detail, secs);
}

// ---------------------------------------------------------------- criterion 1

// Greedy O(n^2) upper-concave-hull oracle: from each vertex, the next hull
// vertex maximizes the chord slope (farthest point on ties).
double grenander_oracle(std::vector<double> z, double c) {
  std::sort(z.begin(), z.end());
  const std::size_t n = z.size();
  if (c > z.back()) return 0.0;
  std::vector<double> px{0.0}, py{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(i + 1) / static_cast<double>(n);
    if (z[i] == px.back()) {
      py.back() = y;
    } else {
      px.push_back(z[i]);
      py.push_back(y);
    }
  }
  std::size_t cur = 0;
  while (px[cur] < c) {
    std::size_t best = cur + 1;
    double best_slope = (py[cur + 1] - py[cur]) / (px[cur + 1] - px[cur]);
    for (std::size_t j = cur + 2; j < px.size(); ++j) {
      const double s = (py[j] - py[cur]) / (px[j] - px[cur]);
      if (s >= best_slope) {
        best_slope = s;
        best = j;
      }
    }
    if (px[best] >= c) return best_slope;
    cur = best;
  }
  return 0.0;  // c <= 0 never queried
}

bool criterion1(std::string& detail) {
  Rng rng(20250801);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 50.0);
    std::vector<double> z(n);
    for (auto& v : z) v = -std::log(1.0 - rng.uniform());
    const double zmax = *std::max_element(z.begin(), z.end());
    for (int q = 0; q < 20; ++q) {
      const double c = rng.uniform_pos() * zmax * 1.2;
      const double got = est::grenander_at(z, c);
      const double want = grenander_oracle(z, c);
      worst = std::max(worst, std::fabs(got - want));
      if (!(std::fabs(got - want) <= 1e-12)) {
        detail = "mismatch " + std::to_string(got) + " vs " + std::to_string(want);
        return false;
      }
    }
  }
  std::ostringstream os;
  os << "max |diff| " << worst << " over 4000 queries";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- criterion 2

double score_value(const std::vector<double>& sy, const std::vector<double>& x1,
                   const std::vector<double>& x2, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  double v = 0.0;
  for (std::size_t t = 0; t < sy.size(); ++t) {
    const double ip = x1[t] * c + x2[t] * s;
    if (sy[t] > 0.0) {
      v += ip >= 0.0 ? 1.0 : 0.0;
    } else {
      v += ip < 0.0 ? 1.0 : 0.0;
    }
  }
  return v;
}

bool criterion2(std::string& detail) {
  Rng master(20250802);
  for (int d = 0; d < 100; ++d) {
    std::vector<double> sy, x1, x2;
    if (d % 2 == 0) {
      dgp::DgpSpec spec;
      spec.model = "max_score";
      spec.n = 20 + (static_cast<std::size_t>(d) * 97) % 181;
      spec.seed = derive_seed(1001, static_cast<std::uint64_t>(d));
      const auto s = dgp::generate(spec);
      sy = s.column("sign_y");
      x1 = s.column("x1");
      x2 = s.column("x2");
    } else {
      const std::size_t n = 2 + (static_cast<std::size_t>(d) * 31) % 199;
      for (std::size_t t = 0; t < n; ++t) {
        sy.push_back(master.uniform() < 0.5 ? -1.0 : 1.0);
        x1.push_back(master.normal());
        x2.push_back(master.normal());
      }
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < sy.size(); ++t) rows.push_back({sy[t], x1[t], x2[t]});
    const auto fit = est::max_score(TimeSeriesSample({"sign_y", "x1", "x2"}, rows));

    // Breakpoint-midpoint oracle: direct evaluation on every arc.
    std::vector<double> ang;
    for (std::size_t t = 0; t < sy.size(); ++t) {
      if (x1[t] == 0.0 && x2[t] == 0.0) continue;
      const double base = std::atan2(x2[t], x1[t]);
      for (double a : {base + kPi / 2.0, base - kPi / 2.0}) {
        double v = std::fmod(a, 2.0 * kPi);
        if (v < 0.0) v += 2.0 * kPi;
        ang.push_back(v);
      }
    }
    std::sort(ang.begin(), ang.end());
    ang.erase(std::unique(ang.begin(), ang.end()), ang.end());
    const std::size_t k = ang.size();
    std::vector<double> arc_val(k);
    double oracle_max = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double hi = j + 1 < k ? ang[j + 1] : ang[0] + 2.0 * kPi;
      double mid = std::fmod((ang[j] + hi) / 2.0, 2.0 * kPi);
      if (mid < 0.0) mid += 2.0 * kPi;
      arc_val[j] = score_value(sy, x1, x2, mid);
      oracle_max = std::max(oracle_max, arc_val[j]);
    }
    if (fit.criterion != oracle_max) {
      detail = "sweep " + std::to_string(fit.criterion) + " != oracle " +
               std::to_string(oracle_max);
      return false;
    }

    // 1e5 random directions per dataset, looked up by arc (spot-checked by
    // direct evaluation on the first 100).
    Rng dir(derive_seed(20250803, static_cast<std::uint64_t>(d)));
    for (int r = 0; r < 100000; ++r) {
      const double phi = dir.uniform() * 2.0 * kPi;
      auto it = std::upper_bound(ang.begin(), ang.end(), phi);
      std::size_t j;
      if (it == ang.begin() || it == ang.end()) {
        j = k - 1;
      } else {
        j = static_cast<std::size_t>(it - ang.begin()) - 1;
        if (ang[j] == phi) {
          continue;  // landed exactly on a breakpoint; measure zero, skip
        }
      }
      const double v = r < 100 ? score_value(sy, x1, x2, phi) : arc_val[j];
      if (r < 100 && v != arc_val[j]) {
        detail = "arc table disagrees with direct evaluation";
        return false;
      }
      if (fit.criterion < v) {
        detail = "random direction beats the sweep";
        return false;
      }
    }
  }
  detail = "100 datasets, exact argmax + 1e5 directions each";
  return true;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3(std::string& detail) {
  Rng rng(20250804);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) * 31) % 100;
    std::vector<double> y(n);
    for (auto& v : y) {
      v = rng.uniform() < 0.3 ? std::round(rng.normal() * 10.0) / 10.0 : rng.normal() * 2.0;
    }
    auto ys = y;
    std::sort(ys.begin(), ys.end());
    const std::size_t m = (n + 1) / 2;
    std::size_t best = 0;
    for (std::size_t i = 1; i + m <= n; ++i) {
      if (ys[i + m - 1] - ys[i] < ys[best + m - 1] - ys[best]) best = i;
    }
    const double want = (ys[best] + ys[best + m - 1]) / 2.0;
    const auto fit = est::lms_location(y);
    if (fit.theta_hat[0] != want) {
      detail = "window midpoint mismatch at rep " + std::to_string(rep);
      return false;
    }
  }
  detail = "500 samples, exact match over all shorth windows";
  return true;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4(std::string& detail) {
  Rng rng(20250805);
  Kernel kern;
  const auto bw = make_bandwidth_rule(1.0, 0.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + (static_cast<std::size_t>(rep) * 37) % 99;
    std::vector<std::vector<double>> rows;
    std::vector<double> y(n), w(n);
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      y[t] = std::round(rng.normal() * 20.0) / 10.0;
      const double x = t == 0 ? 0.0 : (rng.uniform() - 0.5) * 3.0;
      w[t] = kernel_eval(kern, x);  // h = 1, center 0
      total += w[t];
      rows.push_back({y[t], x});
    }
    const double alpha = 0.1 + 0.8 * rng.uniform();
    const auto fit = est::min_volume_region(TimeSeriesSample({"y", "x"}, rows), 0.0, alpha,
                                            kern, bw);
    const double target = alpha * total;

    // Weighted coverage of the best width-2nu window: brute force over
    // windows anchored at each observation. Candidate widths can differ by a
    // single ulp (half-gaps of different pairs), so membership must use the
    // exact subtraction predicate, not an additive slack.
    std::vector<std::pair<double, double>> pts(n);
    for (std::size_t t = 0; t < n; ++t) pts[t] = {y[t], w[t]};
    std::sort(pts.begin(), pts.end());
    auto best_cover = [&](double nu) {
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = i; k < n && pts[k].first - pts[i].first <= 2.0 * nu; ++k) {
          acc += pts[k].second;
        }
        best = std::max(best, acc);
      }
      return best;
    };

    if (best_cover(fit.nu_hat) < target - 1e-7) {
      detail = "reported width does not reach the coverage target";
      return false;
    }
    if (fit.coverage * total < target - 1e-7) {
      detail = "attained coverage below alpha";
      return false;
    }
    // Exhaustive dominance: every smaller candidate width falls short.
    std::vector<double> cand{0.0};
    std::vector<double> pos;
    for (std::size_t t = 0; t < n; ++t) {
      if (w[t] > 0.0) pos.push_back(y[t]);
    }
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) cand.push_back((pos[j] - pos[i]) / 2.0);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (double nu : cand) {
      if (nu >= fit.nu_hat) break;
      if (best_cover(nu) >= target + 1e-9) {
        detail = "smaller candidate width also attains alpha";
        return false;
      }
    }
  }
  detail = "200 weighted samples, minimality verified exhaustively";
  return true;
}

// ------------------------------------------------------------- criteria 5-7

bool slope_in(const mc::RateReport& rep, double lo, double hi, std::string& detail) {
  std::ostringstream os;
  os << "slope " << rep.slope << " (se " << rep.slope_se << "), rmse";
  for (const auto& r : rep.rows) os << " " << r.rmse;
  detail = os.str();
  return rep.slope >= lo && rep.slope <= hi;
}

const std::vector<std::size_t> kRateNs{250, 500, 1000, 2000, 4000};

bool criterion5(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "max_score";
  est::EstimatorConfig cfg;  // h = 1
  const auto rep =
      mc::rate_experiment(tmpl, "max_score", cfg, kRateNs, 200, 71001, mc::RateFamily::nh);
  return slope_in(rep, -0.43, -0.23, detail);
}

bool criterion6(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "hough_line";
  est::EstimatorConfig cfg;
  cfg.bandwidth = make_bandwidth_rule(1.0, 0.19);
  const auto rep =
      mc::rate_experiment(tmpl, "hough", cfg, kRateNs, 200, 71002, mc::RateFamily::nh2);
  return slope_in(rep, -0.45, -0.21, detail);
}

bool criterion7(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "rc_binary";
  est::EstimatorConfig cfg;
  cfg.bandwidth = make_bandwidth_rule(1.0, 0.125);
  cfg.center = 0.5;
  const auto rep = mc::rate_experiment(tmpl, "localized_max_score", cfg, kRateNs, 200, 71003,
                                       mc::RateFamily::nh);
  return slope_in(rep, -0.45, -0.21, detail);
}

// ---------------------------------------------------------------- criterion 8

bool criterion8(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "interval_binary";
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(-0.5 + 2.0 * i / 100.0);
  const auto mid = mc::set_experiment(tmpl, grid, 0.25, -1.0, 1000, 200, 71004);
  const auto small = mc::set_experiment(tmpl, grid, 0.25, -1.0, 500, 200, 71005);
  const auto large = mc::set_experiment(tmpl, grid, 0.25, -1.0, 2000, 200, 71006);
  std::ostringstream os;
  os << "containment(n=1000) " << mid.containment << ", median rho " << small.median_rho
     << " (n=500) -> " << large.median_rho << " (n=2000)";
  detail = os.str();
  return mid.containment >= 0.90 && large.median_rho < small.median_rho;
}

// ---------------------------------------------------------------- criterion 9

bool criterion9(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "lms";
  est::EstimatorConfig cfg;
  auto mean_abs = limitlaw::empirical_abs_moment(
      [](std::uint64_t) { return std::vector<double>{1.0}; }, 1000, 42);
  const auto law = limitlaw::build_kernel_lms(dgp::lms_error_density(tmpl, 1.0),
                                              dgp::lms_error_density_deriv(tmpl, 1.0), {{1.0}},
                                              std::move(mean_abs), 3.0, 401);
  const auto rep = mc::limit_comparison(tmpl, "lms_location", cfg, 4000, 1000, 71007, law, 5000);
  std::ostringstream os;
  os << "ks " << rep.ks << " over " << rep.reps << " reps";
  detail = os.str();
  return rep.ks <= 0.15;
}

// --------------------------------------------------------------- criterion 10

bool criterion10(std::string& detail) {
  dgp::DgpSpec tmpl;
  tmpl.model = "lms";
  est::EstimatorConfig cfg;
  const auto rep = mc::coverage_experiment(tmpl, "lms_location", cfg, 2000,
                                           inf::default_block_len(2000), 0.10, 500, 71008);
  std::ostringstream os;
  os << "coverage " << rep.coverage << " (se " << rep.se << ")";
  detail = os.str();
  return rep.coverage >= 0.85 && rep.coverage <= 0.95;
}

// --------------------------------------------------------------- criterion 11

int run_tool(const std::string& args) {
  const std::string cmd = std::string(TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string read_stripped(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.find("\"timestamp\"") != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

bool criterion11(std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("acceptance_tmp");
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> cases{
      {"gen", "gen --dgp lms --n 80 --seed 3"},
      {"estimate", "estimate --estimator lms_location --dgp lms --n 200 --seed 5"},
      {"set-estimate",
       "set-estimate --dgp interval_binary --n 200 --seed 7 --grid=-0.5:1.5:41"},
      {"subsample",
       "subsample --estimator lms_location --dgp lms --n 300 --seed 9 --block-len 45 "
       "--alpha 0.1 --dump-blocks"},
      {"confset",
       "confset --estimator lms_location --dgp lms --n 300 --seed 9 --grid 0.5:1.5:21 "
       "--block-len 45"},
      {"mc-rate",
       "mc-rate --estimator lms_location --dgp lms --n 100 --n 200 --n 400 --reps 50 "
       "--seed 11"},
      {"mc-coverage",
       "mc-coverage --estimator lms_location --dgp lms --n 150 --reps 100 --seed 13"},
      {"mc-limit",
       "mc-limit --estimator lms_location --dgp lms --n 200 --reps 200 --seed 15 "
       "--limit-draws 500 --grid-m 101"},
      {"limit-sim", "limit-sim --dgp lms --seed 17 --limit-draws 500 --grid-m 101"},
  };
  for (const auto& [name, args] : cases) {
    const fs::path a = dir / (name + "_a.out");
    const fs::path b = dir / (name + "_b.out");
    for (const fs::path& p : {a, b}) {
      const int rc = run_tool(args + " --output " + p.string());
      if (rc != 0) {
        detail = name + " exited with code " + std::to_string(rc);
        return false;
      }
    }
    if (read_stripped(a) != read_stripped(b) || read_stripped(a).empty()) {
      detail = name + " reruns differ";
      return false;
    }
  }
  // Exit-code contract on malformed invocations.
  if (run_tool("estimate --estimator lms_location --dgp lms --n 100") != 2) {
    detail = "missing --seed should exit 2";
    return false;
  }
  if (run_tool("estimate --estimator lms_location --input no_such_file.csv") != 3) {
    detail = "missing input file should exit 3";
    return false;
  }
  detail = "9 subcommands byte-identical across reruns";
  return true;
}

}  // namespace

int main() {
  run(1, "grenander equals the concave-majorant oracle", criterion1);
  run(2, "maximum score sweep is exact on S^1", criterion2);
  run(3, "lms location equals the brute-force shorth", criterion3);
  run(4, "minimum-volume region is minimal and covering", criterion4);
  run(5, "max score error slope vs log(nh)", criterion5);
  run(6, "slab line estimator slope vs log(nh^2)", criterion6);
  run(7, "localized max score slope vs log(nh)", criterion7);
  run(8, "level-set estimator contains the identified set", criterion8);
  run(9, "scaled errors match the simulated argmax law", criterion9);
  run(10, "subsampling interval holds nominal coverage", criterion10);
  run(11, "seeded subcommands are byte-for-byte reproducible", criterion11);
  if (g_failures == 0) {
    std::printf("all 11 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
