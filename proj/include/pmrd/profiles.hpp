#pragma once

// Radial initial data. All profiles are nonnegative and bounded; the bump is
// compactly supported, the Gaussian is cut off by the Dirichlet boundary.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmrd/barenblatt.hpp"
#include "pmrd/geometry.hpp"

namespace pmrd {

enum class DatumProfile { gaussian, bump, barenblatt, custom_table };

inline const char* to_string(DatumProfile p) {
  switch (p) {
    case DatumProfile::gaussian: return "gaussian";
    case DatumProfile::bump: return "bump";
    case DatumProfile::barenblatt: return "barenblatt";
    case DatumProfile::custom_table: return "custom_table";
  }
  return "?";
}

struct InitialDatum {
  DatumProfile profile = DatumProfile::gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  // custom_table: sorted (r, u) pairs, linearly interpolated, zero beyond.
  std::vector<std::pair<double, double>> table;
};

// Pointwise evaluation. The Barenblatt profile is the exact solution anchored
// at unit time with the requested peak; `width` is ignored for it.
inline double datum_value(const InitialDatum& d, double r, double m, int dimension) {
  if (!(d.amplitude >= 0.0)) throw std::invalid_argument("datum amplitude must be >= 0");
  switch (d.profile) {
    case DatumProfile::gaussian: {
      if (!(d.width > 0.0)) throw std::invalid_argument("datum width must be positive");
      const double x = r / d.width;
      return d.amplitude * std::exp(-x * x);
    }
    case DatumProfile::bump: {
      if (!(d.width > 0.0)) throw std::invalid_argument("datum width must be positive");
      const double x = r / d.width;
      if (x >= 1.0) return 0.0;
      return d.amplitude * std::exp(1.0 - 1.0 / (1.0 - x * x));
    }
    case DatumProfile::barenblatt:
      return BarenblattSolution::with_peak(d.amplitude, 1.0, m, dimension).value(r, 1.0);
    case DatumProfile::custom_table: {
      if (d.table.empty()) throw std::invalid_argument("custom datum table is empty");
      if (r <= d.table.front().first) return d.amplitude * d.table.front().second;
      if (r >= d.table.back().first) return 0.0;
      auto hi = std::upper_bound(
          d.table.begin(), d.table.end(), r,
          [](double x, const std::pair<double, double>& row) { return x < row.first; });
      auto lo = hi - 1;
      const double w = (r - lo->first) / (hi->first - lo->first);
      return d.amplitude * ((1.0 - w) * lo->second + w * hi->second);
    }
  }
  return 0.0;
}

inline std::vector<double> datum_values(const InitialDatum& d, const RadialGrid& grid,
                                        double m, int dimension) {
  std::vector<double> u(grid.cell_count);
  for (int i = 0; i < grid.cell_count; ++i)
    u[i] = datum_value(d, grid.centers[i], m, dimension);
  return u;
}

}  // namespace pmrd
