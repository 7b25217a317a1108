#include "cuberoot/direction.hpp"

#include <algorithm>
#include <cmath>

#include "cuberoot/errors.hpp"

namespace cuberoot {

Direction canonical_direction(std::vector<double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw NumericError("cannot canonicalize a zero vector");
  for (double& x : v) x /= norm;
  for (double x : v) {
    if (std::fabs(x) > 1e-9) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
  return Direction{std::move(v)};
}

std::vector<double> unit_from_angle(double phi) {
  return {std::cos(phi), std::sin(phi)};
}

double geodesic_angle(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  dot = std::clamp(dot, -1.0, 1.0);
  return std::acos(dot);
}

}  // namespace cuberoot
