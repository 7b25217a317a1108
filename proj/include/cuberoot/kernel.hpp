#pragma once

#include <string>

namespace cuberoot {

enum class KernelId { epanechnikov, triangular, boxcar, truncated_gaussian };

KernelId kernel_id_from_string(const std::string& s);
std::string to_string(KernelId id);

// Symmetric density with bounded support: K(u) = K(-u), K(u) = 0 for
// |u| > support_radius, and integral 1. The truncated Gaussian is the
// standard normal restricted to [-4, 4] and renormalized, so bounded
// support holds while approximating the common unbounded choice.
struct Kernel {
  KernelId id = KernelId::epanechnikov;

  double support_radius() const;
  double sup_bound() const;  // upper bound on sup K
};

double kernel_eval(const Kernel& k, double u);

// h_n = c * n^(-a); a = 0 encodes the no-bandwidth case h_n = 1 (with c = 1).
struct BandwidthRule {
  double c = 1.0;
  double a = 0.0;  // exponent in [0, 1)

  double at(std::size_t n) const;
  double effective_size(std::size_t n) const;  // n * h_n
};

BandwidthRule make_bandwidth_rule(double c, double a);

}  // namespace cuberoot
