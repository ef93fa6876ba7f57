#pragma once

// Verification of the quantitative estimates against recorded runs and
// states. Every check returns a BoundReport with one row per sample; the
// margin convention is margin = -violation, so pass <=> worst margin >=
// -tolerance, and larger margins mean more slack.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmrd/constants.hpp"
#include "pmrd/geometry.hpp"
#include "pmrd/norms.hpp"
#include "pmrd/solver.hpp"

namespace pmrd {

struct SampleCheck {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string note;
};

struct BoundReport {
  std::string claim;
  bool pass = false;
  double tolerance = 0.0;
  double worst_margin = 0.0;
  int samples_checked = 0;
  std::vector<SampleCheck> details;
};

namespace detail {

inline BoundReport finish_report(std::string claim, double tolerance,
                                 std::vector<SampleCheck> rows) {
  BoundReport rep;
  rep.claim = std::move(claim);
  rep.tolerance = tolerance;
  rep.details = std::move(rows);
  rep.samples_checked = static_cast<int>(rep.details.size());
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& row : rep.details) rep.worst_margin = std::min(rep.worst_margin, row.margin);
  if (rep.details.empty()) rep.worst_margin = 0.0;
  rep.pass = rep.worst_margin >= -tolerance;
  return rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// L^q monotonicity
// ---------------------------------------------------------------------------

// Checks ||u(t)||_q <= ||u0||_q and that the recorded series is nonincreasing
// up to a per-step drift allowance (steps between samples are estimated from
// the recorded step sizes). Margins are relative to ||u0||_q.
inline BoundReport check_lq_monotone(const RunRecord& rec,
                                     const std::vector<double>& q_list,
                                     double tol = 1e-6, double step_drift = 1e-8) {
  std::vector<SampleCheck> rows;
  for (double q : q_list) {
    auto it = std::find_if(rec.q_list.begin(), rec.q_list.end(),
                           [&](double x) { return std::abs(x - q) < 1e-12; });
    if (it == rec.q_list.end()) {
      std::ostringstream msg;
      msg << "run record does not carry the L^" << q << " norm";
      throw std::invalid_argument(msg.str());
    }
    const std::size_t col = it - rec.q_list.begin();
    const double base = rec.samples.front().lq[col];
    const double scale = std::max(base, 1e-300);
    for (std::size_t j = 0; j < rec.samples.size(); ++j) {
      const auto& s = rec.samples[j];
      SampleCheck row;
      row.t = s.t;
      row.lhs = s.lq[col];
      row.rhs = base;
      row.margin = (base - s.lq[col]) / scale;
      std::ostringstream note;
      note << "q=" << q;
      row.note = note.str();
      rows.push_back(row);
      if (j > 0) {
        const auto& prev = rec.samples[j - 1];
        const double steps =
            s.dt > 0.0 ? std::max(1.0, (s.t - prev.t) / s.dt) : 1.0;
        SampleCheck inc;
        inc.t = s.t;
        inc.lhs = s.lq[col];
        inc.rhs = prev.lq[col];
        // Rescale so the pass rule "margin >= -tol" encodes the drift budget.
        inc.margin = (prev.lq[col] - s.lq[col]) / scale / (steps * step_drift) * tol;
        note << " step";
        inc.note = note.str();
        rows.push_back(inc);
      }
    }
  }
  return detail::finish_report("lq-monotone", tol, std::move(rows));
}

// ---------------------------------------------------------------------------
// Explicit sup bound (Poincare route)
// ---------------------------------------------------------------------------

struct DatumNorms {
  double lm = 0.0;  // ||u0||_m
  double lr = 0.0;  // ||u0||_r
  double lpr = 0.0; // ||u0||_{pr}
};

// sup bound ||u(t)||_inf <= Gamma ||u0||_m^{(s-1)/s}
//                           [ ||u0||_{pr}^p + ||u0||_r / ((m-1)t) ]^{1/(ms)}.
// Margins are relative to the bound. The t = 0 sample is skipped (the bound
// degenerates there).
inline BoundReport verify_sup_bound(const RunRecord& rec, const DatumNorms& u0,
                                    double m, int dimension, double r, double sobolev,
                                    double tol = 1e-3, double discretization_allowance = 0.02) {
  if (!(2.0 * r > dimension))
    throw std::invalid_argument("sup bound check requires r > N/2");
  const double p = rec.problem.p;
  const double s = linf_gain_exponent(dimension, r);
  const double gamma_const = sup_bound_constant(m, dimension, r, sobolev);
  const double total_tol = tol + discretization_allowance;
  std::vector<SampleCheck> rows;
  for (const auto& sample : rec.samples) {
    if (sample.t <= 0.0) continue;
    const double bracket =
        std::pow(u0.lpr, p) + u0.lr / ((m - 1.0) * sample.t);
    const double rhs = gamma_const * std::pow(u0.lm, (s - 1.0) / s) *
                       std::pow(bracket, 1.0 / (m * s));
    SampleCheck row;
    row.t = sample.t;
    row.lhs = sample.sup;
    row.rhs = rhs;
    row.margin = 1.0 - sample.sup / std::max(rhs, 1e-300);
    rows.push_back(row);
  }
  return detail::finish_report("sup-bound-explicit", total_tol, std::move(rows));
}

// ---------------------------------------------------------------------------
// Elliptic L^infinity estimate
// ---------------------------------------------------------------------------

// ||v||_inf <= s/(s-1) (1/C_s)^{2/s} ||f||_r^{1/s} ||v||_1^{(s-1)/s} with
// s = 1 + 2/N - 1/r; r is the integrability exponent of the right hand side.
inline BoundReport check_elliptic_linf(const RadialGrid& grid,
                                       const std::vector<double>& v,
                                       const std::vector<double>& f, double r,
                                       int dimension, double sobolev,
                                       double tol = 1e-3) {
  if (!(2.0 * r > dimension))
    throw std::invalid_argument("elliptic estimate requires integrability r > N/2");
  const double s = linf_gain_exponent(dimension, r);
  const double lhs = sup_norm(v);
  const double f_r = lq_norm(grid, f, r, /*weighted=*/false);
  const double v_1 = lq_norm(grid, v, 1.0, /*weighted=*/false);
  const double rhs = s / (s - 1.0) * std::pow(1.0 / sobolev, 2.0 / s) *
                     std::pow(f_r, 1.0 / s) * std::pow(v_1, (s - 1.0) / s);
  SampleCheck row;
  row.t = 0.0;
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = (lhs == 0.0 && rhs == 0.0) ? 0.0 : 1.0 - lhs / std::max(rhs, 1e-300);
  return detail::finish_report("elliptic-linf", tol, {row});
}

// ---------------------------------------------------------------------------
// Aronson-Benilan estimate
// ---------------------------------------------------------------------------

// Truncated cosine bumps at several scales; nonnegative, radial, vanishing
// at the boundary sphere. The fixed dictionary keeps the check reproducible.
inline std::vector<std::vector<double>> aronson_benilan_test_functions(
    const RadialGrid& grid) {
  const std::vector<double> scales{0.2, 0.35, 0.5, 0.7, 0.9};
  std::vector<std::vector<double>> out;
  for (double sc : scales) {
    const double radius = sc * grid.outer_radius;
    std::vector<double> phi(grid.cell_count, 0.0);
    for (int i = 0; i < grid.cell_count; ++i) {
      const double x = grid.centers[i] / radius;
      if (x < 1.0) {
        const double c = std::cos(0.5 * std::numbers::pi * x);
        phi[i] = c * c;
      }
    }
    out.push_back(std::move(phi));
  }
  return out;
}

// Weak form of -lap(u^m) <= rho u^p + rho u/((m-1)t) against each dictionary
// function:
//   sum_faces A_f d(u^m) d(phi)/dr - <u^p + u/((m-1)t), phi>_rho <= tol ||phi||_1.
// The violation is normalized by the weighted L^1 norm of phi.
inline BoundReport check_aronson_benilan(const RadialGrid& grid,
                                         const std::vector<double>& u, double t,
                                         double m, double p,
                                         const std::vector<std::vector<double>>& phis,
                                         double tol = 1e-3) {
  if (!(t > 0.0)) throw std::invalid_argument("Aronson-Benilan check requires t > 0");
  const int n = grid.cell_count;
  std::vector<double> um(n);
  for (int i = 0; i < n; ++i) um[i] = std::pow(u[i], m);

  std::vector<SampleCheck> rows;
  int k = 0;
  for (const auto& phi : phis) {
    double grad_term = 0.0;
    for (int i = 1; i < n; ++i)
      grad_term += grid.face_area[i] * (um[i] - um[i - 1]) * (phi[i] - phi[i - 1]) / grid.dr;
    // Outer face: both u^m and phi extend by zero across the Dirichlet sphere.
    grad_term += grid.face_area[n] * um[n - 1] * phi[n - 1] * 2.0 / grid.dr;

    double mass_term = 0.0, phi_mass = 0.0;
    for (int i = 0; i < n; ++i) {
      mass_term += grid.measure[i] * (std::pow(u[i], p) + u[i] / ((m - 1.0) * t)) * phi[i];
      phi_mass += grid.measure[i] * phi[i];
    }
    SampleCheck row;
    row.t = t;
    row.lhs = grad_term;
    row.rhs = mass_term;
    row.margin = -(grad_term - mass_term) / std::max(phi_mass, 1e-300);
    row.note = "phi[" + std::to_string(k++) + "]";
    rows.push_back(row);
  }
  return detail::finish_report("aronson-benilan", tol, std::move(rows));
}

// ---------------------------------------------------------------------------
// Monotone run comparison
// ---------------------------------------------------------------------------

enum class SweepMode { cap, radius, amplitude, cells };

inline const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::cap: return "cap";
    case SweepMode::radius: return "radius";
    case SweepMode::amplitude: return "amplitude";
    case SweepMode::cells: return "cells";
  }
  return "?";
}

// Pointwise ordering lo <= hi at all shared samples. Requires stored states
// and matching cell widths; the lo grid may be shorter (radius sweeps), in
// which case hi is compared against the zero extension of lo. Margins are
// relative to the larger run's sup.
inline BoundReport compare_runs_monotone(const RunRecord& lo, const RunRecord& hi,
                                         SweepMode mode, double tol = 1e-10) {
  const double dr_lo = lo.problem.radius / lo.settings.cells;
  const double dr_hi = hi.problem.radius / hi.settings.cells;
  if (std::abs(dr_lo - dr_hi) > 1e-12 * dr_hi)
    throw std::invalid_argument("monotone comparison requires matching cell widths");
  if (lo.settings.cells > hi.settings.cells)
    throw std::invalid_argument("lo run must not have the larger grid");
  if (lo.samples.empty() || lo.samples.size() != hi.samples.size())
    throw std::invalid_argument("runs carry different sample sets");

  std::vector<SampleCheck> rows;
  for (std::size_t j = 0; j < lo.samples.size(); ++j) {
    const auto& a = lo.samples[j];
    const auto& b = hi.samples[j];
    if (std::abs(a.t - b.t) > 1e-9 * std::max(1.0, b.t))
      throw std::invalid_argument("runs sampled at different times");
    if (a.state.empty() || b.state.empty())
      throw std::invalid_argument("monotone comparison needs stored states");
    const double scale = std::max({sup_norm(b.state), sup_norm(a.state), 1e-300});
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.state.size(); ++i)
      worst = std::min(worst, b.state[i] - a.state[i]);
    SampleCheck row;
    row.t = a.t;
    row.lhs = -worst;
    row.rhs = 0.0;
    row.margin = worst / scale;
    row.note = std::string("mode=") + to_string(mode);
    rows.push_back(row);
  }
  return detail::finish_report("monotone-ordering", tol, std::move(rows));
}

// Largest pointwise gap between two runs over all shared samples (used for
// the Cauchy tables of the sweeps).
inline double max_state_difference(const RunRecord& a, const RunRecord& b) {
  double out = 0.0;
  for (std::size_t j = 0; j < std::min(a.samples.size(), b.samples.size()); ++j) {
    const auto& sa = a.samples[j].state;
    const auto& sb = b.samples[j].state;
    const std::size_t n = std::min(sa.size(), sb.size());
    for (std::size_t i = 0; i < n; ++i) out = std::max(out, std::abs(sb[i] - sa[i]));
    for (std::size_t i = n; i < sb.size(); ++i) out = std::max(out, std::abs(sb[i]));
    for (std::size_t i = n; i < sa.size(); ++i) out = std::max(out, std::abs(sa[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decay-rate fit and smoothing statistic
// ---------------------------------------------------------------------------

// Least squares slope of log(value) against log(t); returns the decay
// exponent beta_hat with value ~ t^-beta_hat.
inline double fit_decay_exponent(std::span<const double> times,
                                 std::span<const double> values, double window_lo,
                                 double window_hi) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window_lo || times[i] > window_hi || times[i] <= 0.0) continue;
    if (!(values[i] > 0.0))
      throw std::invalid_argument("decay fit requires positive values in the window");
    x.push_back(std::log(times[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 3)
    throw std::invalid_argument("decay fit needs at least 3 samples in the window");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("decay fit window is degenerate");
  return -sxy / sxx;
}

// S(t) = t^{rate/(m s)} * sup(t); bounded for small data, and its maximum
// should not grow under grid refinement. This is the assertable surrogate
// for the sup bound whose leading constant is not explicit.
struct SmoothingStatistic {
  double max_value = 0.0;
  double exponent = 0.0;  // rate/(m s) actually applied
  std::vector<double> times;
  std::vector<double> values;
};

inline SmoothingStatistic smoothing_statistic(const RunRecord& rec, double rate,
                                              double m, double s, double window_lo,
                                              double window_hi) {
  SmoothingStatistic out;
  out.exponent = rate / (m * s);
  for (const auto& sample : rec.samples) {
    if (sample.t < window_lo || sample.t > window_hi || sample.t <= 0.0) continue;
    out.times.push_back(sample.t);
    out.values.push_back(std::pow(sample.t, out.exponent) * sample.sup);
    out.max_value = std::max(out.max_value, out.values.back());
  }
  return out;
}

inline std::vector<double> sample_times_of(const RunRecord& rec) {
  std::vector<double> t;
  for (const auto& s : rec.samples) t.push_back(s.t);
  return t;
}

inline std::vector<double> sup_series_of(const RunRecord& rec) {
  std::vector<double> v;
  for (const auto& s : rec.samples) v.push_back(s.sup);
  return v;
}

}  // namespace pmrd
