#include "cuberoot/kernel.hpp"

#include <cmath>

#include "cuberoot/errors.hpp"

namespace cuberoot {

namespace {

constexpr double kTruncRadius = 4.0;
// P(|Z| <= 4) for a standard normal; renormalization constant of the
// truncated Gaussian kernel.
const double kTruncMass = std::erf(kTruncRadius / std::sqrt(2.0));
const double kInvSqrt2Pi = 0.3989422804014326779399461;

}  // namespace

KernelId kernel_id_from_string(const std::string& s) {
  if (s == "epanechnikov") return KernelId::epanechnikov;
  if (s == "triangular") return KernelId::triangular;
  if (s == "boxcar") return KernelId::boxcar;
  if (s == "truncated_gaussian") return KernelId::truncated_gaussian;
  throw InvalidSpec("unknown kernel: " + s);
}

std::string to_string(KernelId id) {
  switch (id) {
    case KernelId::epanechnikov: return "epanechnikov";
    case KernelId::triangular: return "triangular";
    case KernelId::boxcar: return "boxcar";
    case KernelId::truncated_gaussian: return "truncated_gaussian";
  }
  return "?";
}

double Kernel::support_radius() const {
  switch (id) {
    case KernelId::epanechnikov:
    case KernelId::triangular:
    case KernelId::boxcar: return 1.0;
    case KernelId::truncated_gaussian: return kTruncRadius;
  }
  return 1.0;
}

double Kernel::sup_bound() const {
  switch (id) {
    case KernelId::epanechnikov: return 0.75;
    case KernelId::triangular: return 1.0;
    case KernelId::boxcar: return 0.5;
    case KernelId::truncated_gaussian: return kInvSqrt2Pi / kTruncMass;
  }
  return 1.0;
}

double kernel_eval(const Kernel& k, double u) {
  const double au = std::fabs(u);
  if (au > k.support_radius()) return 0.0;
  switch (k.id) {
    case KernelId::epanechnikov: return 0.75 * (1.0 - u * u);
    case KernelId::triangular: return 1.0 - au;
    case KernelId::boxcar: return 0.5;
    case KernelId::truncated_gaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u) / kTruncMass;
  }
  return 0.0;
}

double BandwidthRule::at(std::size_t n) const {
  return c * std::pow(static_cast<double>(n), -a);
}

double BandwidthRule::effective_size(std::size_t n) const {
  return static_cast<double>(n) * at(n);
}

BandwidthRule make_bandwidth_rule(double c, double a) {
  if (!(c > 0.0)) throw InvalidSpec("bandwidth constant must be positive");
  if (!(a >= 0.0 && a < 1.0)) throw InvalidSpec("bandwidth exponent must lie in [0, 1)");
  return BandwidthRule{c, a};
}

}  // namespace cuberoot
