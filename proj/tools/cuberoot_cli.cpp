// Batch front end: subcommand dispatch, CSV/JSON IO, exit-code mapping.
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuberoot/dgp.hpp"
#include "cuberoot/errors.hpp"
#include "cuberoot/estimators.hpp"
#include "cuberoot/inference.hpp"
#include "cuberoot/limitlaw.hpp"
#include "cuberoot/montecarlo.hpp"
#include "cuberoot/rng.hpp"
#include "cuberoot/sample.hpp"

using json = nlohmann::ordered_json;
using namespace cuberoot;

namespace {

struct Options {
  std::string subcommand;
  std::string estimator;
  std::string input;
  std::string dgp;
  std::vector<std::string> params;  // key=value pairs for the DGP
  std::vector<std::size_t> n_values;
  std::size_t reps = 200;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double alpha = 0.10;
  double bandwidth_c = 1.0;
  double bandwidth_a = 0.0;
  std::string kernel = "epanechnikov";
  double cutoff = -1.0;
  std::size_t block_len = 0;
  std::vector<std::string> grid;  // "lo:hi:count" per axis
  std::size_t workers = 0;
  std::string output;
  std::string csv_output;
  bool dump_blocks = false;
  double at = 0.0;
  bool at_set = false;
  std::string rate_family = "nh";
  std::size_t limit_draws = 5000;
  std::size_t grid_m = 201;
  double grid_radius = 3.0;
  double nuisance_bandwidth = 0.25;
};

std::vector<double> parse_axis(const std::string& s) {
  double lo = 0.0, hi = 0.0;
  long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1 ||
      (count == 1 && hi != lo) || (count > 1 && !(hi > lo))) {
    throw InvalidSpec("bad grid axis (want lo:hi:count): " + s);
  }
  std::vector<double> ax(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    ax[static_cast<std::size_t>(i)] =
        count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return ax;
}

dgp::DgpSpec make_dgp_spec(const Options& opt, std::size_t n, std::uint64_t seed) {
  dgp::DgpSpec spec;
  spec.model = opt.dgp;
  spec.n = n;
  spec.seed = seed;
  for (const auto& kv : opt.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidSpec("bad --param (want key=value): " + kv);
    spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return spec;
}

TimeSeriesSample load_sample(const Options& opt) {
  const bool has_input = !opt.input.empty();
  const bool has_dgp = !opt.dgp.empty();
  if (has_input == has_dgp) throw InvalidSpec("need exactly one of --input and --dgp");
  if (has_input) return TimeSeriesSample::read_csv(opt.input);
  if (opt.n_values.empty()) throw InvalidSpec("--dgp requires --n");
  if (!opt.seed_set) throw InvalidSpec("--dgp requires --seed");
  return dgp::generate(make_dgp_spec(opt, opt.n_values.front(), opt.seed));
}

est::EstimatorConfig make_config(const Options& opt) {
  est::EstimatorConfig cfg;
  cfg.kernel.id = kernel_id_from_string(opt.kernel);
  cfg.bandwidth = make_bandwidth_rule(opt.bandwidth_c, opt.bandwidth_a);
  cfg.center = opt.at;
  cfg.alpha = opt.alpha;
  cfg.nuisance_bandwidth = opt.nuisance_bandwidth;
  cfg.cutoff = opt.cutoff;
  return cfg;
}

json config_echo(const Options& opt) {
  json cfg;
  cfg["subcommand"] = opt.subcommand;
  if (!opt.estimator.empty()) cfg["estimator"] = opt.estimator;
  if (!opt.input.empty()) cfg["input"] = opt.input;
  if (!opt.dgp.empty()) {
    cfg["dgp"] = opt.dgp;
    cfg["params"] = opt.params;
  }
  if (!opt.n_values.empty()) cfg["n"] = opt.n_values;
  cfg["reps"] = opt.reps;
  if (opt.seed_set) cfg["seed"] = opt.seed;
  cfg["alpha"] = opt.alpha;
  cfg["bandwidth_c"] = opt.bandwidth_c;
  cfg["bandwidth_a"] = opt.bandwidth_a;
  cfg["kernel"] = opt.kernel;
  cfg["cutoff"] = opt.cutoff;
  cfg["block_len"] = opt.block_len;
  cfg["grid"] = opt.grid;
  cfg["workers"] = opt.workers;
  if (opt.at_set) cfg["at"] = opt.at;
  cfg["rate_family"] = opt.rate_family;
  cfg["nuisance_bandwidth"] = opt.nuisance_bandwidth;
  return cfg;
}

void emit(const Options& opt, json result) {
  json out;
  out["schema_version"] = "v1";
  out["timestamp"] = static_cast<long long>(std::time(nullptr));
  out["config"] = config_echo(opt);
  out["result"] = std::move(result);
  const std::string text = out.dump(2) + "\n";
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.output);
    if (!f) throw DataError("cannot open output file: " + opt.output);
    f << text;
  }
}

json point_to_json(const est::PointEstimate& fit) {
  json j;
  j["theta_hat"] = fit.theta_hat;
  if (fit.theta_hat.size() == 1) j["estimate"] = fit.theta_hat[0];
  j["criterion"] = fit.criterion;
  j["effective_n"] = fit.effective_n;
  j["method"] = fit.report.method;
  j["approximate"] = fit.report.approximate;
  j["evaluations"] = fit.report.evaluations;
  return j;
}

// Limit-law spec for the DGPs with closed-form kernels (location LMS and
// the slab line estimator). Moments are fixed-seed plug-in averages.
limitlaw::LimitLawSpec build_limit_for(const dgp::DgpSpec& spec, double K, std::size_t m) {
  if (spec.model == "lms") {
    auto mean_abs = limitlaw::empirical_abs_moment(
        [](std::uint64_t) { return std::vector<double>{1.0}; }, 1000, 42);
    return limitlaw::build_kernel_lms(dgp::lms_error_density(spec, 1.0),
                                      dgp::lms_error_density_deriv(spec, 1.0), {{1.0}},
                                      std::move(mean_abs), K, m);
  }
  if (spec.model == "hough_line") {
    const double rho = spec.param("rho", 0.5);
    auto sampler = [rho](std::uint64_t s) {
      Rng rng(s);
      double a = rng.normal();
      for (int t = 0; t < 64; ++t) a = rho * a + std::sqrt(1.0 - rho * rho) * rng.normal();
      return std::vector<double>{1.0, a};
    };
    // P(|x| x x') by the same plug-in draws.
    std::vector<std::vector<double>> pm(2, std::vector<double>(2, 0.0));
    const std::size_t draws = 200000;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto x = sampler(derive_seed(43, i));
      const double norm = std::sqrt(x[0] * x[0] + x[1] * x[1]);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) pm[a][b] += norm * x[a] * x[b] / static_cast<double>(draws);
      }
    }
    auto mean_abs = limitlaw::empirical_abs_moment(sampler, 200000, 44);
    return limitlaw::build_kernel_hough(dgp::hough_error_density(spec, 0.0),
                                        dgp::hough_error_density_deriv2(spec, 0.0), pm,
                                        std::move(mean_abs), K, m);
  }
  throw InvalidSpec("no limit-law kernel for dgp model: " + spec.model);
}

int dispatch(const Options& opt) {
  const auto cfg = make_config(opt);

  if (opt.subcommand == "gen") {
    if (opt.dgp.empty() || opt.n_values.empty() || !opt.seed_set) {
      throw InvalidSpec("gen requires --dgp, --n and --seed");
    }
    if (opt.csv_output.empty() && opt.output.empty()) {
      throw InvalidSpec("gen requires an output path");
    }
    const auto sample = dgp::generate(make_dgp_spec(opt, opt.n_values.front(), opt.seed));
    sample.write_csv(opt.csv_output.empty() ? opt.output : opt.csv_output);
    return 0;
  }

  if (opt.subcommand == "estimate") {
    const auto sample = load_sample(opt);
    json res;
    if (opt.estimator == "grenander") {
      if (!opt.at_set) throw InvalidSpec("grenander needs --at");
      const std::string col = sample.has_field("z") ? "z" : sample.schema().front();
      res["estimate"] = est::grenander_at(sample.column(col), opt.at);
      res["at"] = opt.at;
    } else if (opt.estimator == "min_volume") {
      const auto iv =
          est::min_volume_region(sample, cfg.center, cfg.alpha, cfg.kernel, cfg.bandwidth);
      res["estimate"] = iv.theta_hat;
      res["nu_hat"] = iv.nu_hat;
      res["coverage"] = iv.coverage;
    } else {
      res = point_to_json(est::run_point_estimator(opt.estimator, sample, cfg));
    }
    emit(opt, res);
    return 0;
  }

  if (opt.subcommand == "set-estimate") {
    const auto sample = load_sample(opt);
    if (opt.grid.empty()) throw InvalidSpec("set-estimate needs --grid");
    const auto axis = parse_axis(opt.grid.front());
    const auto fit = est::manski_tamer_set(sample, axis, opt.nuisance_bandwidth, opt.cutoff);
    json res;
    res["cutoff"] = fit.cutoff;
    res["criterion_max"] = fit.criterion_max;
    res["grid"] = axis;
    std::vector<int> mask(fit.set.mask().begin(), fit.set.mask().end());
    res["mask"] = mask;
    res["set_size"] = fit.set.masked_count();
    emit(opt, res);
    return 0;
  }

  if (opt.subcommand == "subsample") {
    const auto sample = load_sample(opt);
    const std::size_t s = opt.block_len > 0 ? opt.block_len : inf::default_block_len(sample.n());
    const auto ci = inf::subsample_ci(sample, opt.estimator, cfg, s, opt.alpha);
    json res;
    res["theta_hat"] = ci.theta_hat;
    res["lower"] = ci.lower;
    res["upper"] = ci.upper;
    res["block_len"] = ci.block_len;
    res["blocks_used"] = ci.blocks_used;
    res["alpha"] = ci.alpha;
    if (opt.dump_blocks) res["block_stats"] = ci.block_stats;
    emit(opt, res);
    return 0;
  }

  if (opt.subcommand == "confset") {
    const auto sample = load_sample(opt);
    if (opt.grid.empty()) throw InvalidSpec("confset needs --grid");
    std::vector<std::vector<double>> axes;
    for (const auto& g : opt.grid) axes.push_back(parse_axis(g));
    const std::size_t s = opt.block_len > 0 ? opt.block_len : inf::default_block_len(sample.n());
    const auto cs = inf::criterion_confidence_set(sample, opt.estimator, cfg, axes, s, opt.alpha);
    json res;
    res["note"] = "grid resolution bounds the numerical search over the parameter space";
    res["blocks_used"] = cs.blocks_used;
    std::vector<int> mask(cs.set.mask().begin(), cs.set.mask().end());
    res["mask"] = mask;
    res["qn"] = cs.qn;
    res["quantiles"] = cs.quantiles;
    res["set_size"] = cs.set.masked_count();
    emit(opt, res);
    return 0;
  }

  // Everything below is a seeded simulation.
  if (!opt.seed_set) throw InvalidSpec(opt.subcommand + " requires --seed");

  if (opt.subcommand == "mc-rate") {
    if (opt.dgp.empty() || opt.n_values.size() < 3) {
      throw InvalidSpec("mc-rate requires --dgp and >= 3 --n values");
    }
    const auto tmpl = make_dgp_spec(opt, 0, 0);
    const auto report =
        mc::rate_experiment(tmpl, opt.estimator, cfg, opt.n_values, opt.reps, opt.seed,
                            mc::rate_family_from_string(opt.rate_family), opt.workers);
    json res;
    res["rate_family"] = mc::to_string(report.family);
    res["slope"] = report.slope;
    res["slope_se"] = report.slope_se;
    res["target_slope"] = -1.0 / 3.0;
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"n", row.n},
                      {"h", row.h},
                      {"effective", row.effective},
                      {"rmse", row.rmse},
                      {"reps", row.reps},
                      {"failures", row.failures}});
    }
    res["rows"] = rows;
    emit(opt, res);
    if (!opt.csv_output.empty()) {
      std::ofstream f(opt.csv_output);
      f << "n,h,effective,rmse,reps,failures\n";
      for (const auto& row : report.rows) {
        f << row.n << "," << row.h << "," << row.effective << "," << row.rmse << "," << row.reps
          << "," << row.failures << "\n";
      }
    }
    return 0;
  }

  if (opt.subcommand == "mc-coverage") {
    if (opt.dgp.empty() || opt.n_values.empty()) {
      throw InvalidSpec("mc-coverage requires --dgp and --n");
    }
    const std::size_t n = opt.n_values.front();
    const std::size_t s = opt.block_len > 0 ? opt.block_len : inf::default_block_len(n);
    const auto report = mc::coverage_experiment(make_dgp_spec(opt, 0, 0), opt.estimator, cfg, n,
                                                s, opt.alpha, opt.reps, opt.seed, opt.workers);
    json res;
    res["coverage"] = report.coverage;
    res["se"] = report.se;
    res["reps"] = report.reps;
    res["failures"] = report.failures;
    res["block_len"] = s;
    emit(opt, res);
    return 0;
  }

  if (opt.subcommand == "mc-limit") {
    if (opt.dgp.empty() || opt.n_values.empty()) {
      throw InvalidSpec("mc-limit requires --dgp and --n");
    }
    const auto tmpl = make_dgp_spec(opt, 0, 0);
    const auto limit = build_limit_for(tmpl, opt.grid_radius, opt.grid_m);
    const auto report = mc::limit_comparison(tmpl, opt.estimator, cfg, opt.n_values.front(),
                                             opt.reps, opt.seed, limit, opt.limit_draws, 0,
                                             opt.workers);
    json res;
    res["ks"] = report.ks;
    res["reps"] = report.reps;
    res["failures"] = report.failures;
    res["limit_draws"] = opt.limit_draws;
    emit(opt, res);
    return 0;
  }

  if (opt.subcommand == "limit-sim") {
    if (opt.dgp.empty()) throw InvalidSpec("limit-sim requires --dgp");
    const auto limit = build_limit_for(make_dgp_spec(opt, 0, 0), opt.grid_radius, opt.grid_m);
    const auto law = limitlaw::simulate_argmax_law(limit, opt.limit_draws, opt.seed);
    json res;
    res["draws"] = law.points.size();
    res["boundary_mass"] = law.boundary_mass;
    auto c0 = limitlaw::coordinate(law, 0);
    json q;
    for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      q[std::to_string(p)] = inf::quantile_type1(c0, p);
    }
    res["quantiles"] = q;
    emit(opt, res);
    if (!opt.csv_output.empty()) {
      std::ofstream f(opt.csv_output);
      for (std::size_t k = 0; k < limit.d; ++k) f << (k ? ",s" : "s") << k;
      f << "\n";
      f.precision(17);
      for (const auto& p : law.points) {
        for (std::size_t k = 0; k < p.size(); ++k) f << (k ? "," : "") << p[k];
        f << "\n";
      }
    }
    return 0;
  }

  throw InvalidSpec("unknown subcommand: " + opt.subcommand);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local M-estimation toolkit: exact optimizers, subsampling, rate experiments"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--estimator", opt.estimator);
    sub->add_option("--input", opt.input);
    sub->add_option("--dgp", opt.dgp);
    sub->add_option("--param", opt.params);
    sub->add_option("--n", opt.n_values);
    sub->add_option("--reps", opt.reps);
    sub->add_option("--seed", opt.seed)->each([&](const std::string&) { opt.seed_set = true; });
    sub->add_option("--alpha", opt.alpha);
    sub->add_option("--bandwidth-c", opt.bandwidth_c);
    sub->add_option("--bandwidth-a", opt.bandwidth_a);
    sub->add_option("--kernel", opt.kernel);
    sub->add_option("--cutoff", opt.cutoff);
    sub->add_option("--block-len", opt.block_len);
    sub->add_option("--grid", opt.grid);
    sub->add_option("--workers", opt.workers);
    sub->add_option("--output", opt.output);
    sub->add_option("--csv", opt.csv_output);
    sub->add_flag("--dump-blocks", opt.dump_blocks);
    sub->add_option("--at", opt.at)->each([&](const std::string&) { opt.at_set = true; });
    sub->add_option("--rate-family", opt.rate_family);
    sub->add_option("--limit-draws", opt.limit_draws);
    sub->add_option("--grid-m", opt.grid_m);
    sub->add_option("--grid-radius", opt.grid_radius);
    sub->add_option("--nuisance-bandwidth", opt.nuisance_bandwidth);
  };
  for (const char* name : {"estimate", "set-estimate", "subsample", "confset", "mc-rate",
                           "mc-coverage", "mc-limit", "limit-sim", "gen"}) {
    add_common(app.add_subcommand(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  opt.subcommand = app.get_subcommands().front()->get_name();
  try {
    return dispatch(opt);
  } catch (const InvalidSpec& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
