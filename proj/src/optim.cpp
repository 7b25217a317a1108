#include "cuberoot/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cuberoot/errors.hpp"

namespace cuberoot {
namespace optim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::vector<double> sorted_deduped(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

double norm_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

OptimizerReport scan_1d(std::vector<double> breakpoints,
                        const std::function<double(double)>& evaluator) {
  if (breakpoints.empty()) throw InvalidSpec("scan_1d requires at least one breakpoint");
  const auto b = sorted_deduped(std::move(breakpoints), 1e-12);
  double maxabs = 0.0;
  for (double x : b) maxabs = std::max(maxabs, std::fabs(x));
  const double outer = maxabs + 1.0;

  OptimizerReport rep;
  rep.method = "scan_1d";
  const double inf = std::numeric_limits<double>::infinity();
  double best = -inf;
  // Intervals in left-endpoint order: (-inf, b0), (b0, b1), ..., (b_last, inf).
  auto consider = [&](double probe, double lo, double hi) {
    const double v = evaluator(probe);
    ++rep.evaluations;
    if (v > best) {
      best = v;
      rep.point = {probe};
      rep.region_lo = lo;
      rep.region_hi = hi;
    }
  };
  consider(-outer, -inf, b.front());
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    consider(0.5 * (b[i] + b[i + 1]), b[i], b[i + 1]);
  }
  consider(outer, b.back(), inf);
  rep.value = best;
  return rep;
}

OptimizerReport angle_sweep_s1(std::vector<double> critical_angles,
                               const std::function<double(double)>& evaluator_at_angle) {
  if (critical_angles.empty()) throw DegenerateData("angle sweep requires critical angles");
  for (double& a : critical_angles) a = norm_angle(a);
  auto a = sorted_deduped(std::move(critical_angles), 1e-12);
  // Wraparound duplicate: 0 and 2pi are the same critical angle.
  if (a.size() > 1 && a.front() < 1e-12 && kTwoPi - a.back() < 1e-12) a.pop_back();

  OptimizerReport rep;
  rep.method = "angle_sweep_s1";
  double best = -std::numeric_limits<double>::infinity();
  double best_mid = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double lo = a[i];
    const double hi = (i + 1 < a.size()) ? a[i + 1] : a[0] + kTwoPi;
    const double mid = norm_angle(0.5 * (lo + hi));
    const double v = evaluator_at_angle(mid);
    ++rep.evaluations;
    if (v > best || (v == best && mid < best_mid)) {
      best = v;
      best_mid = mid;
      rep.region_lo = lo;
      rep.region_hi = hi;
    }
  }
  rep.value = best;
  rep.point = unit_from_angle(best_mid);
  return rep;
}

OptimizerReport sign_agreement_sweep(const std::vector<std::vector<double>>& x,
                                     const std::vector<double>& coeff, double offset) {
  struct Event {
    double angle;
    double delta;
  };
  std::vector<Event> events;
  events.reserve(2 * x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t][0] == 0.0 && x[t][1] == 0.0) continue;
    if (coeff[t] == 0.0) continue;
    const double phi = std::atan2(x[t][1], x[t][0]);
    // I{x' theta(angle) >= 0} holds on the arc (phi - pi/2, phi + pi/2).
    events.push_back({norm_angle(phi - kTwoPi / 4.0), coeff[t]});
    events.push_back({norm_angle(phi + kTwoPi / 4.0), -coeff[t]});
  }
  if (events.empty()) throw DegenerateData("sign agreement sweep: no informative observations");
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.angle < b.angle; });

  std::vector<double> angles;
  for (const auto& e : events) {
    if (angles.empty() || e.angle != angles.back()) angles.push_back(e.angle);
  }

  auto evaluate = [&](double phi) {
    const auto theta = unit_from_angle(phi);
    double v = offset;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t][0] * theta[0] + x[t][1] * theta[1] >= 0.0) v += coeff[t];
    }
    return v;
  };

  OptimizerReport rep;
  rep.method = "sign_agreement_sweep";

  // Value on the first arc, then incremental +/- updates at each critical
  // angle while walking the circle once.
  const double first_hi = (angles.size() > 1) ? angles[1] : angles[0] + kTwoPi;
  double value = evaluate(norm_angle(0.5 * (angles[0] + first_hi)));
  rep.evaluations = 1;

  double best = -std::numeric_limits<double>::infinity();
  double best_mid = std::numeric_limits<double>::infinity();
  std::size_t ev = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i > 0) {
      while (ev < events.size() && events[ev].angle <= angles[i]) {
        if (events[ev].angle == angles[i]) value += events[ev].delta;
        ++ev;
      }
    } else {
      while (ev < events.size() && events[ev].angle <= angles[0]) ++ev;
    }
    const double lo = angles[i];
    const double hi = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + kTwoPi;
    const double mid = norm_angle(0.5 * (lo + hi));
    if (value > best || (value == best && mid < best_mid)) {
      best = value;
      best_mid = mid;
      rep.region_lo = lo;
      rep.region_hi = hi;
    }
  }
  // Re-evaluate at the winning midpoint so the reported value is free of
  // accumulated float drift from the incremental walk.
  rep.value = evaluate(best_mid);
  ++rep.evaluations;
  rep.point = unit_from_angle(best_mid);
  return rep;
}

namespace {

// Max of sum w_t I{b0 in [lo_t, hi_t]} over b0 for fixed slab intervals.
// Returns (weight, maximizing b0 interval start, end).
struct InterceptMax {
  double weight;
  double lo;
  double hi;
};

InterceptMax intercept_max(const std::vector<double>& lo, const std::vector<double>& hi,
                           const std::vector<double>& w) {
  struct Ev {
    double pos;
    int kind;  // 0 = open (at lo, inclusive), 1 = close (just after hi)
    double weight;
  };
  std::vector<Ev> evs;
  evs.reserve(2 * lo.size());
  for (std::size_t t = 0; t < lo.size(); ++t) {
    evs.push_back({lo[t], 0, w[t]});
    evs.push_back({hi[t], 1, w[t]});
  }
  std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.kind < b.kind;  // closed intervals: opens before closes
  });
  double cur = 0.0, best = -1.0, best_lo = 0.0, best_hi = 0.0;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    if (evs[i].kind == 0) {
      cur += evs[i].weight;
      if (cur > best) {
        best = cur;
        best_lo = evs[i].pos;
        best_hi = (i + 1 < evs.size()) ? evs[i + 1].pos : evs[i].pos;
      }
    } else {
      cur -= evs[i].weight;
    }
  }
  return {best, best_lo, best_hi};
}

}  // namespace

OptimizerReport vertex_sweep_2d(const std::vector<double>& y, const std::vector<double>& xtilde,
                                const std::vector<double>& half_width,
                                const std::vector<double>& weight) {
  const std::size_t n = y.size();
  if (n < 1) throw InvalidSpec("vertex_sweep_2d requires n >= 1");

  // Boundary lines in (slope, intercept) space: b0 = c_t - b1 * xtilde_t
  // with c_t = y_t +/- half_width_t.
  std::vector<double> cs, xs;
  cs.reserve(2 * n);
  xs.reserve(2 * n);
  for (std::size_t t = 0; t < n; ++t) {
    cs.push_back(y[t] - half_width[t]);
    xs.push_back(xtilde[t]);
    cs.push_back(y[t] + half_width[t]);
    xs.push_back(xtilde[t]);
  }

  std::vector<double> slopes;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const double dx = xs[i] - xs[j];
      if (std::fabs(dx) > 1e-12) slopes.push_back((cs[i] - cs[j]) / dx);
    }
  }
  if (slopes.empty()) {
    bool identical = true;
    for (std::size_t t = 1; t < n && identical; ++t) {
      identical = (y[t] == y[0]) && (xtilde[t] == xtilde[0]) && (half_width[t] == half_width[0]);
    }
    if (!identical) throw DegenerateData("vertex sweep: all regressors equal, no slope information");
    slopes.push_back(0.0);  // single slab; any slope works
  }
  slopes = sorted_deduped(std::move(slopes), 1e-12);

  OptimizerReport rep;
  rep.method = "vertex_sweep_2d";
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> lo(n), hi(n);
  for (double b1 : slopes) {
    for (std::size_t t = 0; t < n; ++t) {
      const double center = y[t] - b1 * xtilde[t];
      lo[t] = center - half_width[t];
      hi[t] = center + half_width[t];
    }
    const auto im = intercept_max(lo, hi, weight);
    rep.evaluations += n;
    if (im.weight > best) {
      best = im.weight;
      rep.point = {0.5 * (im.lo + im.hi), b1};
      rep.region_lo = im.lo;
      rep.region_hi = im.hi;
    }
  }
  rep.value = best;
  return rep;
}

std::pair<double, double> max_weighted_window(const std::vector<double>& y,
                                              const std::vector<double>& w, double nu) {
  if (y.size() != w.size()) throw InvalidSpec("max_weighted_window: length mismatch");
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw AllZeroWeights("max_weighted_window: all weights zero");

  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

  std::vector<double> ys(y.size()), ws(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    ys[i] = y[order[i]];
    ws[i] = w[order[i]];
  }
  std::vector<double> prefix(ys.size() + 1, 0.0);
  for (std::size_t i = 0; i < ys.size(); ++i) prefix[i + 1] = prefix[i] + ws[i];

  double best = -1.0;
  double best_theta = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < ys.size() && ys[j + 1] - ys[i] <= 2.0 * nu) ++j;
    const double weight = prefix[j + 1] - prefix[i];
    if (weight > best) {
      best = weight;
      best_theta = 0.5 * (ys[i] + ys[j]);
    }
  }
  return {best_theta, best};
}

OptimizerReport grid_refine(const std::function<double(const std::vector<double>&)>& evaluator,
                            std::vector<std::pair<double, double>> box, int levels,
                            int points_per_axis, double shrink) {
  if (levels < 1) throw InvalidSpec("grid_refine requires levels >= 1");
  if (points_per_axis < 2) throw InvalidSpec("grid_refine requires >= 2 points per axis");
  const std::size_t d = box.size();
  for (auto& [lo, hi] : box) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
      throw InvalidSpec("grid_refine box must be finite with lo < hi");
    }
  }
  const auto original = box;

  OptimizerReport rep;
  rep.method = "grid_refine";
  rep.approximate = true;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_pt(d, 0.0);

  for (int level = 0; level < levels; ++level) {
    std::vector<std::size_t> idx(d, 0);
    const std::size_t total = [&] {
      std::size_t p = 1;
      for (std::size_t k = 0; k < d; ++k) p *= static_cast<std::size_t>(points_per_axis);
      return p;
    }();
    std::vector<double> pt(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t k = d; k-- > 0;) {
        idx[k] = rem % static_cast<std::size_t>(points_per_axis);
        rem /= static_cast<std::size_t>(points_per_axis);
      }
      for (std::size_t k = 0; k < d; ++k) {
        pt[k] = box[k].first + (box[k].second - box[k].first) * static_cast<double>(idx[k]) /
                                   static_cast<double>(points_per_axis - 1);
      }
      const double v = evaluator(pt);
      ++rep.evaluations;
      if (v > best) {
        best = v;
        best_pt = pt;
      }
    }
    // Shrink the box around the incumbent, clipped to the original bounds.
    for (std::size_t k = 0; k < d; ++k) {
      const double half = 0.5 * shrink * (box[k].second - box[k].first);
      box[k].first = std::max(original[k].first, best_pt[k] - half);
      box[k].second = std::min(original[k].second, best_pt[k] + half);
    }
  }
  rep.point = best_pt;
  rep.value = best;
  return rep;
}

}  // namespace optim
}  // namespace cuberoot
