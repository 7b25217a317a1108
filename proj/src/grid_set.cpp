#include "cuberoot/grid_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuberoot/errors.hpp"

namespace cuberoot {

GridSet::GridSet(std::vector<std::vector<double>> axes, std::vector<char> mask)
    : axes_(std::move(axes)), mask_(std::move(mask)) {
  if (axes_.empty()) throw InvalidSpec("grid must have at least one axis");
  std::size_t prod = 1;
  for (const auto& ax : axes_) {
    if (ax.empty()) throw InvalidSpec("grid axis must be nonempty");
    for (std::size_t i = 1; i < ax.size(); ++i) {
      if (!(ax[i] > ax[i - 1])) throw InvalidSpec("grid axis must be strictly increasing");
    }
    prod *= ax.size();
  }
  if (mask_.size() != prod) throw InvalidSpec("mask size does not match grid product");
}

GridSet GridSet::empty(std::vector<std::vector<double>> axes) {
  std::size_t prod = 1;
  for (const auto& ax : axes) prod *= ax.size();
  return GridSet(std::move(axes), std::vector<char>(prod, 0));
}

std::vector<double> GridSet::node(std::size_t flat) const {
  std::vector<double> out(axes_.size());
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t len = axes_[d].size();
    out[d] = axes_[d][flat % len];
    flat /= len;
  }
  return out;
}

std::size_t GridSet::masked_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), char(1)));
}

namespace {

std::vector<std::vector<double>> masked_nodes(const GridSet& g) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.masked(i)) out.push_back(g.node(i));
  }
  return out;
}

}  // namespace

double rho(const GridSet& a, const GridSet& b) {
  const auto na = masked_nodes(a);
  const auto nb = masked_nodes(b);
  if (na.empty() || nb.empty()) throw EmptySet("rho requires nonempty sets");
  double sup = 0.0;
  for (const auto& p : na) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& q : nb) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p[k] - q[k];
        d2 += d * d;
      }
      inf = std::min(inf, d2);
    }
    sup = std::max(sup, inf);
  }
  return std::sqrt(sup);
}

double hausdorff(const GridSet& a, const GridSet& b) {
  return std::max(rho(a, b), rho(b, a));
}

}  // namespace cuberoot
