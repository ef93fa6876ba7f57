#pragma once

// Discrete Lebesgue norms over a radial grid. Powers are taken after
// factoring out the maximum so that large q does not underflow.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "pmrd/geometry.hpp"

namespace pmrd {

inline double sup_norm(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s = std::max(s, std::abs(v));
  return s;
}

// (sum_i w_i |u_i|^q)^{1/q}; `weighted` selects the density-carrying measure.
inline double lq_norm(const RadialGrid& grid, std::span<const double> u, double q,
                      bool weighted = true) {
  if (!(q > 0.0)) throw std::invalid_argument("lq_norm requires q > 0");
  if (static_cast<int>(u.size()) != grid.cell_count)
    throw std::invalid_argument("state size does not match grid");
  const auto& w = weighted ? grid.measure : grid.measure_plain;
  const double peak = sup_norm(u);
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < grid.cell_count; ++i)
    acc += w[i] * std::pow(std::abs(u[i]) / peak, q);
  return peak * std::pow(acc, 1.0 / q);
}

inline double weighted_mass(const RadialGrid& grid, std::span<const double> u) {
  double acc = 0.0;
  for (int i = 0; i < grid.cell_count; ++i) acc += grid.measure[i] * u[i];
  return acc;
}

}  // namespace pmrd
