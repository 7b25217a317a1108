#pragma once

#include <vector>

namespace cuberoot {

// Unit vector on S^{d-1}, d >= 2, with a canonical sign: the first
// coordinate with |v_i| > 1e-9 is positive. This resolves the +/-theta
// ambiguity of sphere-normalized estimators deterministically.
struct Direction {
  std::vector<double> v;
};

// Normalizes and applies the sign rule. Throws NumericError on a zero vector.
Direction canonical_direction(std::vector<double> v);

// Direction at angle phi on S^1: (cos phi, sin phi), canonicalized off.
// The raw (non-canonical) unit vector is returned; callers canonicalize
// when packaging estimates.
std::vector<double> unit_from_angle(double phi);

// Geodesic angle between two unit vectors (in [0, pi]).
double geodesic_angle(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cuberoot
