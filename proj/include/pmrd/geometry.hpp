#pragma once

// Rotationally symmetric model geometries: Euclidean space, hyperbolic space
// of constant negative curvature, and Euclidean space carrying a bounded
// radial mass density (1+r)^-a. Everything downstream (norms, discrete
// operators) is driven by the warping function f(r) of the metric
// dr^2 + f(r)^2 dtheta^2 and by the cell measures built here.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmrd {

enum class ManifoldKind { euclidean, hyperbolic, weighted_euclidean };

inline const char* to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::euclidean: return "euclidean";
    case ManifoldKind::hyperbolic: return "hyperbolic";
    case ManifoldKind::weighted_euclidean: return "weighted_euclidean";
  }
  return "?";
}

// Area of the unit sphere S^{N-1}.
inline double sphere_area(int dimension) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dimension) /
         std::tgamma(0.5 * dimension);
}

// Sharp Sobolev constant of R^N in the convention
//   ||v||_{2N/(N-2)} <= (1/C_s) ||grad v||_2,
// i.e. the reciprocal of the Aubin-Talenti constant:
//   C_s = sqrt(pi N (N-2)) * (Gamma(N/2)/Gamma(N))^{1/N}.
inline double sharp_sobolev_constant(int dimension) {
  const double n = dimension;
  return std::sqrt(std::numbers::pi * n * (n - 2.0)) *
         std::pow(std::tgamma(0.5 * n) / std::tgamma(n), 1.0 / n);
}

// Bottom of the L^2 spectrum of -Laplace on hyperbolic space of curvature -c
// is (N-1)^2 c / 4, so the Poincare inequality holds with C_p = (N-1)sqrt(c)/2.
inline double hyperbolic_poincare_constant(int dimension, double curvature) {
  return 0.5 * (dimension - 1) * std::sqrt(curvature);
}

struct ModelManifold {
  ManifoldKind kind = ManifoldKind::euclidean;
  int dimension = 3;
  double curvature = 0.0;     // hyperbolic: sectional curvature -curvature < 0
  double weight_decay = 0.0;  // weighted_euclidean: density (1+r)^-weight_decay
  double sobolev_constant = 0.0;   // C_s; must be positive
  double poincare_constant = 0.0;  // C_p; 0 encodes "not available"
};

inline void validate(const ModelManifold& mf) {
  if (mf.dimension < 3)
    throw std::invalid_argument("manifold dimension must be >= 3");
  if (mf.sobolev_constant <= 0.0)
    throw std::invalid_argument("Sobolev constant must be positive");
  if (mf.poincare_constant < 0.0)
    throw std::invalid_argument("Poincare constant must be nonnegative");
  switch (mf.kind) {
    case ManifoldKind::euclidean:
      if (mf.poincare_constant != 0.0)
        throw std::invalid_argument(
            "the Poincare inequality fails on Euclidean space; C_p must be 0");
      break;
    case ManifoldKind::hyperbolic:
      if (mf.curvature <= 0.0)
        throw std::invalid_argument("hyperbolic curvature parameter must be positive");
      break;
    case ManifoldKind::weighted_euclidean:
      if (mf.weight_decay < 0.0)
        throw std::invalid_argument("weight decay exponent must be nonnegative");
      break;
  }
}

inline ModelManifold euclidean_space(int dimension, double sobolev_constant = 0.0) {
  ModelManifold mf;
  mf.kind = ManifoldKind::euclidean;
  mf.dimension = dimension;
  mf.sobolev_constant =
      sobolev_constant > 0.0 ? sobolev_constant : sharp_sobolev_constant(dimension);
  validate(mf);
  return mf;
}

inline ModelManifold hyperbolic_space(int dimension, double curvature,
                                      double sobolev_constant = 0.0,
                                      double poincare_constant = -1.0) {
  ModelManifold mf;
  mf.kind = ManifoldKind::hyperbolic;
  mf.dimension = dimension;
  mf.curvature = curvature;
  mf.sobolev_constant =
      sobolev_constant > 0.0 ? sobolev_constant : sharp_sobolev_constant(dimension);
  mf.poincare_constant = poincare_constant >= 0.0
                             ? poincare_constant
                             : hyperbolic_poincare_constant(dimension, curvature);
  validate(mf);
  return mf;
}

inline ModelManifold weighted_euclidean_space(int dimension, double weight_decay,
                                              double sobolev_constant = 0.0,
                                              double poincare_constant = 0.0) {
  ModelManifold mf;
  mf.kind = ManifoldKind::weighted_euclidean;
  mf.dimension = dimension;
  mf.weight_decay = weight_decay;
  mf.sobolev_constant =
      sobolev_constant > 0.0 ? sobolev_constant : sharp_sobolev_constant(dimension);
  mf.poincare_constant = poincare_constant;
  validate(mf);
  return mf;
}

struct WarpCoefficients {
  double f;      // warping value f(r)
  double drift;  // logarithmic derivative f'(r)/f(r)
};

// Radial reduction of the Laplace-Beltrami operator:
//   lap u = u'' + (N-1) (f'/f) u'.
// Euclidean: f(r) = r. Hyperbolic of curvature -c: f(r) = sinh(sqrt(c) r)/sqrt(c).
inline WarpCoefficients warp_coefficients(const ModelManifold& mf, double r) {
  if (!(r > 0.0)) throw std::domain_error("warp_coefficients requires r > 0");
  if (mf.kind == ManifoldKind::hyperbolic) {
    const double sc = std::sqrt(mf.curvature);
    return {std::sinh(sc * r) / sc, sc / std::tanh(sc * r)};
  }
  return {r, 1.0 / r};
}

// The mass density along the radius: 1 except on the weighted manifold,
// where the bounded representative (1+r)^-a is used.
inline double weight_value(const ModelManifold& mf, double r) {
  if (r < 0.0) throw std::domain_error("weight_value requires r >= 0");
  if (mf.kind == ManifoldKind::weighted_euclidean)
    return std::pow(1.0 + r, -mf.weight_decay);
  return 1.0;
}

// Uniform cell-centered grid on the geodesic ball B_R.
//
// Cells are [i dr, (i+1) dr] with centers r_i = (i + 1/2) dr. Two measure
// vectors are kept: `measure` carries the density (the natural measure for
// the weighted problem and its norms), `measure_plain` is the Riemannian
// volume alone (the diffusion flux is never density-weighted). `face_area`
// holds the warped sphere areas at the cell faces; face 0 sits at the origin
// where f vanishes, which encodes the zero-flux symmetry axis.
struct RadialGrid {
  double outer_radius = 0.0;
  int cell_count = 0;
  double dr = 0.0;
  double sphere = 0.0;  // area of the unit (N-1)-sphere
  std::vector<double> centers;
  std::vector<double> measure;
  std::vector<double> measure_plain;
  std::vector<double> face_area;  // size cell_count + 1
  std::vector<double> density;    // rho at cell centers
};

inline RadialGrid build_grid(const ModelManifold& mf, double outer_radius, int cells) {
  validate(mf);
  if (!(outer_radius > 0.0))
    throw std::invalid_argument("grid outer radius must be positive");
  if (cells < 2) throw std::invalid_argument("grid needs at least 2 cells");

  RadialGrid g;
  g.outer_radius = outer_radius;
  g.cell_count = cells;
  g.dr = outer_radius / cells;
  g.sphere = sphere_area(mf.dimension);
  g.centers.resize(cells);
  g.measure.resize(cells);
  g.measure_plain.resize(cells);
  g.face_area.resize(cells + 1);
  g.density.resize(cells);

  const int n = mf.dimension;
  g.face_area[0] = 0.0;  // f(0) = 0 on every model manifold
  for (int i = 1; i <= cells; ++i) {
    const auto w = warp_coefficients(mf, i * g.dr);
    g.face_area[i] = g.sphere * std::pow(w.f, n - 1);
  }
  for (int i = 0; i < cells; ++i) {
    const double r = (i + 0.5) * g.dr;
    g.centers[i] = r;
    const auto w = warp_coefficients(mf, r);
    const double rho = weight_value(mf, r);
    g.density[i] = rho;
    g.measure_plain[i] = g.sphere * std::pow(w.f, n - 1) * g.dr;
    g.measure[i] = g.measure_plain[i] * rho;
  }
  return g;
}

}  // namespace pmrd
