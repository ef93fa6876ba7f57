#pragma once

// Exact self-similar source solution of the porous medium equation
// u_t = lap(u^m) on R^N,
//   U(r,t) = t^-alpha (c - kappa r^2 t^{-2 beta})_+^{1/(m-1)},
//   alpha = N/(N(m-1)+2), beta = alpha/N, kappa = alpha (m-1)/(2 m N).
// Used as a solver accuracy oracle and as an initial profile.

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmrd {

struct BarenblattSolution {
  double m = 2.0;
  int dimension = 3;
  double c = 1.0;  // free mass parameter

  double alpha() const { return dimension / (dimension * (m - 1.0) + 2.0); }
  double beta() const { return alpha() / dimension; }
  double kappa() const { return alpha() * (m - 1.0) / (2.0 * m * dimension); }

  double value(double r, double t) const {
    const double core = c - kappa() * r * r * std::pow(t, -2.0 * beta());
    if (core <= 0.0) return 0.0;
    return std::pow(t, -alpha()) * std::pow(core, 1.0 / (m - 1.0));
  }

  double sup(double t) const {
    return std::pow(t, -alpha()) * std::pow(c, 1.0 / (m - 1.0));
  }

  double support_radius(double t) const {
    return std::sqrt(c / kappa()) * std::pow(t, beta());
  }

  // Pick c so the profile peaks at `peak` at time t0.
  static BarenblattSolution with_peak(double peak, double t0, double m, int dimension) {
    if (!(m > 1.0)) throw std::invalid_argument("Barenblatt requires m > 1");
    if (!(peak > 0.0) || !(t0 > 0.0))
      throw std::invalid_argument("Barenblatt peak and anchor time must be positive");
    BarenblattSolution b;
    b.m = m;
    b.dimension = dimension;
    const double alpha = dimension / (dimension * (m - 1.0) + 2.0);
    b.c = std::pow(peak * std::pow(t0, alpha), m - 1.0);
    return b;
  }
};

}  // namespace pmrd
