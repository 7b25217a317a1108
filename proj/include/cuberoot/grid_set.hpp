#pragma once

#include <cstddef>
#include <vector>

namespace cuberoot {

// Cartesian grid with a boolean mask; the representation used for estimated
// parameter sets and confidence sets. Distances are measured between node
// coordinates; the grid step is the documented resolution.
class GridSet {
 public:
  GridSet(std::vector<std::vector<double>> axes, std::vector<char> mask);

  // All-false mask over the given axes.
  static GridSet empty(std::vector<std::vector<double>> axes);

  std::size_t dim() const { return axes_.size(); }
  std::size_t node_count() const { return mask_.size(); }
  const std::vector<std::vector<double>>& axes() const { return axes_; }
  const std::vector<char>& mask() const { return mask_; }

  bool masked(std::size_t flat) const { return mask_[flat] != 0; }
  void set(std::size_t flat, bool on) { mask_[flat] = on ? 1 : 0; }

  // Coordinates of the flat-indexed node (row-major, last axis fastest).
  std::vector<double> node(std::size_t flat) const;

  std::size_t masked_count() const;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<char> mask_;
};

// Directed distance sup_{a in A} inf_{b in B} |a - b| over masked nodes.
// Throws EmptySet when either mask is empty.
double rho(const GridSet& a, const GridSet& b);

// max(rho(a, b), rho(b, a)).
double hausdorff(const GridSet& a, const GridSet& b);

}  // namespace cuberoot
