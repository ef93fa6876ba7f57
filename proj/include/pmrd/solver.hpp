#pragma once

// Radial finite-volume solver for the truncated Dirichlet problem
//   rho u_t = lap(u^m) + rho T_cap(u^p)   in B_R x (0, t_end],
//   u = 0 on the boundary sphere, zero flux through the origin,
// and for the companion linear elliptic problem -lap v = f.
//
// Time stepping is implicit Euler in the diffusion term (Newton on the
// nonlinear system, tridiagonal Jacobian) and explicit in the reaction.
// The implicit system matrix is an M-matrix, so each accepted step is order
// preserving; that discrete comparison property is what the monotone
// refinement experiments rely on.

#include <algorithm>
#include <concepts>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmrd/geometry.hpp"
#include "pmrd/norms.hpp"
#include "pmrd/profiles.hpp"

namespace pmrd {

struct ProblemParams {
  double m = 2.0;
  double p = 3.0;
  double cap = std::numeric_limits<double>::infinity();  // reaction truncation level
  double radius = 10.0;
  InitialDatum datum;
  bool reaction = true;
};

inline void validate(const ProblemParams& pp) {
  if (!(pp.m > 1.0)) throw std::invalid_argument("problem requires m > 1");
  if (!(pp.p > pp.m)) throw std::invalid_argument("problem requires p > m");
  if (!(pp.cap > 0.0)) throw std::invalid_argument("truncation cap must be positive");
  if (!(pp.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
}

// Reaction truncation: clip to [-cap, cap]. States are nonnegative, so only
// the upper clip is ever active.
inline double truncate_reaction(double value, double cap) {
  if (value >= cap) return cap;
  if (value <= -cap) return -cap;
  return value;
}

enum class OuterBoundary { dirichlet_zero, no_flux };

struct RadialState {
  double time = 0.0;
  std::vector<double> values;
};

struct SolverSettings {
  int cells = 1000;
  double dt0 = 1e-3;    // also the ceiling for the adaptive step
  double dt_min = 1e-12;
  double t_end = 1.0;
  double sup_cap = 1e6;  // numerical blow-up indicator level
  double newton_tol = 1e-12;
  int newton_max_iter = 40;
  double degeneracy_eta = 1e-12;   // Jacobian floor max(u, eta)^{m-1}
  double reaction_growth_cap = 0.5;  // max sup growth fraction per explicit substep
  double dt_growth = 1.2;
  std::vector<double> sample_times;  // strictly increasing; t_end appended if absent
  bool store_states = false;
  OuterBoundary outer = OuterBoundary::dirichlet_zero;
};

namespace detail {

// Tridiagonal solve (Thomas). The systems here are M-matrices, so no
// pivoting is needed.
inline void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                              std::vector<double>& upper, std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace detail

// Diffusion stencil coefficients: lambda_minus/lambda_plus multiply the flux
// differences through the inner/outer faces of each cell, already divided by
// the density-weighted cell measure. The outer Dirichlet face uses the half
// cell distance to the boundary.
struct DiffusionOperator {
  std::vector<double> lambda_minus;
  std::vector<double> lambda_plus;
  double outer_factor = 2.0;  // Dirichlet ghost at distance dr/2
  bool outer_open = true;     // false: zero flux through the boundary sphere

  static DiffusionOperator build(const RadialGrid& g, OuterBoundary outer) {
    DiffusionOperator op;
    const int n = g.cell_count;
    op.lambda_minus.resize(n);
    op.lambda_plus.resize(n);
    for (int i = 0; i < n; ++i) {
      op.lambda_minus[i] = g.face_area[i] / (g.measure[i] * g.dr);
      op.lambda_plus[i] = g.face_area[i + 1] / (g.measure[i] * g.dr);
    }
    op.outer_open = outer == OuterBoundary::dirichlet_zero;
    return op;
  }

  // Applies v -> (1/rho) lap_h v at cell i for a power field v (= u^m).
  double apply(const std::vector<double>& v, int i) const {
    const int n = static_cast<int>(v.size());
    double acc = 0.0;
    if (i > 0) acc += lambda_minus[i] * (v[i - 1] - v[i]);
    if (i < n - 1) {
      acc += lambda_plus[i] * (v[i + 1] - v[i]);
    } else if (outer_open) {
      acc += lambda_plus[i] * outer_factor * (0.0 - v[i]);
    }
    return acc;
  }
};

struct StepResult {
  bool accepted = false;
  int newton_iterations = 0;
  std::string reject_reason;
};

// One time step: explicit truncated reaction, then the implicit diffusion
// solve u - dt (1/rho) lap_h(u^m) = b. Rejection (reaction growth over the
// cap, or Newton failure) leaves the state untouched.
inline StepResult advance_step(const RadialGrid& grid, const DiffusionOperator& op,
                               RadialState& state, const ProblemParams& pp,
                               const SolverSettings& st, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance_step requires dt > 0");
  const int n = grid.cell_count;
  const double m = pp.m;

  std::vector<double> b(n);
  if (pp.reaction) {
    const double sup = sup_norm(state.values);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = truncate_reaction(std::pow(state.values[i], pp.p), pp.cap);
      worst = std::max(worst, r);
      b[i] = state.values[i] + dt * r;
    }
    if (dt * worst > st.reaction_growth_cap * (sup + 1e-300) && worst > 0.0)
      return {false, 0, "reaction growth over cap"};
  } else {
    b = state.values;
  }

  // Newton iteration on G(v) = v - dt * op(v^m) - b.
  std::vector<double> v = b;
  std::vector<double> vm(n), residual(n);
  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  const double scale = 1.0 + sup_norm(b);
  int iter = 0;
  for (; iter < st.newton_max_iter; ++iter) {
    for (int i = 0; i < n; ++i) vm[i] = std::pow(std::max(v[i], 0.0), m);
    double res_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      residual[i] = v[i] - dt * op.apply(vm, i) - b[i];
      res_norm = std::max(res_norm, std::abs(residual[i]));
    }
    if (res_norm <= st.newton_tol * scale) break;

    for (int i = 0; i < n; ++i) {
      const double phi = m * std::pow(std::max(v[i], st.degeneracy_eta), m - 1.0);
      double d = 1.0 + dt * (op.lambda_minus[i] + op.lambda_plus[i]) * phi;
      if (i == n - 1) {
        d = 1.0 + dt * op.lambda_minus[i] * phi;
        if (op.outer_open) d += dt * op.lambda_plus[i] * op.outer_factor * phi;
      }
      diag[i] = d;
      lower[i] = (i > 0)
                     ? -dt * op.lambda_minus[i] *
                           m * std::pow(std::max(v[i - 1], st.degeneracy_eta), m - 1.0)
                     : 0.0;
      upper[i] = (i < n - 1)
                     ? -dt * op.lambda_plus[i] *
                           m * std::pow(std::max(v[i + 1], st.degeneracy_eta), m - 1.0)
                     : 0.0;
      rhs[i] = -residual[i];
    }
    detail::solve_tridiagonal(lower, diag, upper, rhs);
    for (int i = 0; i < n; ++i) v[i] += rhs[i];
  }
  if (iter == st.newton_max_iter) return {false, iter, "Newton did not converge"};

  for (int i = 0; i < n; ++i) state.values[i] = std::max(v[i], 0.0);
  state.time += dt;
  return {true, iter, {}};
}

enum class RunStatus { completed, blow_up, dt_underflow };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blow_up: return "blow_up";
    case RunStatus::dt_underflow: return "dt_underflow";
  }
  return "?";
}

struct Sample {
  double t = 0.0;
  double dt = 0.0;  // step size in effect when the sample was taken
  double sup = 0.0;
  std::vector<double> lq;     // one entry per q in RunRecord::q_list
  std::vector<double> state;  // kept only when store_states is set
};

struct RunRecord {
  std::vector<double> q_list;
  std::vector<Sample> samples;
  RunStatus status = RunStatus::completed;
  double t_stop = 0.0;
  // provenance
  ModelManifold manifold;
  ProblemParams problem;
  SolverSettings settings;
};

namespace detail {

inline Sample take_sample(const RadialGrid& grid, const RadialState& state, double dt,
                          const std::vector<double>& q_list, bool store) {
  Sample s;
  s.t = state.time;
  s.dt = dt;
  s.sup = sup_norm(state.values);
  s.lq.reserve(q_list.size());
  for (double q : q_list) s.lq.push_back(lq_norm(grid, state.values, q));
  if (store) s.state = state.values;
  return s;
}

}  // namespace detail

// Evolve with adaptive stepping: halve on rejection, grow by dt_growth up to
// dt0 on success, clamp to hit sample times exactly. A sup-norm crossing of
// sup_cap reports blow_up; a step size falling below dt_min reports
// dt_underflow (evidence of, not proof of, a singularity).
inline RunRecord evolve(const ModelManifold& mf, const ProblemParams& pp,
                        const SolverSettings& st,
                        const std::vector<double>& q_list = {}) {
  validate(pp);
  if (!(st.dt_min < st.dt0)) throw std::invalid_argument("requires dt_min < dt0");
  if (!(st.t_end > 0.0)) throw std::invalid_argument("requires t_end > 0");
  if (!(st.sup_cap > 0.0)) throw std::invalid_argument("requires sup_cap > 0");

  const RadialGrid grid = build_grid(mf, pp.radius, st.cells);
  const auto op = DiffusionOperator::build(grid, st.outer);

  RadialState state;
  state.time = 0.0;
  state.values = datum_values(pp.datum, grid, pp.m, mf.dimension);
  for (double v : state.values)
    if (!(v >= 0.0)) throw std::invalid_argument("initial datum must be nonnegative");

  std::vector<double> sample_times = st.sample_times;
  std::sort(sample_times.begin(), sample_times.end());
  for (double t : sample_times)
    if (!(t > 0.0) || t > st.t_end * (1.0 + 1e-12))
      throw std::invalid_argument("sample times must lie in (0, t_end]");
  if (sample_times.empty() || sample_times.back() < st.t_end * (1.0 - 1e-12))
    sample_times.push_back(st.t_end);

  RunRecord rec;
  rec.q_list = q_list;
  rec.manifold = mf;
  rec.problem = pp;
  rec.settings = st;
  rec.samples.push_back(detail::take_sample(grid, state, 0.0, q_list, st.store_states));

  double dt_ctrl = st.dt0;
  double dt_last = 0.0;
  std::size_t next_sample = 0;
  while (next_sample < sample_times.size()) {
    const double target = sample_times[next_sample];
    if (state.time >= target - 1e-12 * std::max(1.0, target)) {
      rec.samples.push_back(
          detail::take_sample(grid, state, dt_last, q_list, st.store_states));
      ++next_sample;
      continue;
    }
    const double dt = std::min(dt_ctrl, target - state.time);
    const bool clamped = dt < dt_ctrl;

    const StepResult step = advance_step(grid, op, state, pp, st, dt);
    if (!step.accepted) {
      dt_ctrl = dt / 2.0;
      if (dt_ctrl < st.dt_min) {
        rec.status = RunStatus::dt_underflow;
        rec.t_stop = state.time;
        rec.samples.push_back(
            detail::take_sample(grid, state, dt_ctrl, q_list, st.store_states));
        return rec;
      }
      continue;
    }
    dt_last = dt;
    if (!clamped) dt_ctrl = std::min(st.dt0, dt_ctrl * st.dt_growth);

    if (sup_norm(state.values) >= st.sup_cap) {
      rec.status = RunStatus::blow_up;
      rec.t_stop = state.time;
      rec.samples.push_back(detail::take_sample(grid, state, dt, q_list, st.store_states));
      return rec;
    }
  }
  rec.status = RunStatus::completed;
  rec.t_stop = state.time;
  return rec;
}

// -lap v = f on B_R with v = 0 on the boundary sphere, discretized with the
// same flux stencil as the parabolic operator (density plays no role here).
inline RadialState elliptic_solve_radial(const ModelManifold& mf, double outer_radius,
                                         int cells, const std::vector<double>& rhs) {
  const RadialGrid grid = build_grid(mf, outer_radius, cells);
  if (static_cast<int>(rhs.size()) != cells)
    throw std::invalid_argument("elliptic rhs size does not match grid");
  const int n = cells;
  std::vector<double> lower(n), diag(n), upper(n), b(n);
  for (int i = 0; i < n; ++i) {
    const double lm = grid.face_area[i] / (grid.measure_plain[i] * grid.dr);
    const double lp = grid.face_area[i + 1] / (grid.measure_plain[i] * grid.dr);
    double d = lm + lp;
    if (i == n - 1) d = lm + 2.0 * lp;  // Dirichlet ghost at distance dr/2
    diag[i] = d;
    lower[i] = (i > 0) ? -lm : 0.0;
    upper[i] = (i < n - 1) ? -lp : 0.0;
    b[i] = rhs[i];
  }
  detail::solve_tridiagonal(lower, diag, upper, b);
  for (double v : b)
    if (!std::isfinite(v))
      throw std::runtime_error("elliptic solve produced non-finite values");
  RadialState out;
  out.time = 0.0;
  out.values = std::move(b);
  return out;
}

template <class F>
  requires std::invocable<F&, double>
RadialState elliptic_solve_radial(const ModelManifold& mf, double outer_radius,
                                  int cells, F&& rhs_fn) {
  const RadialGrid grid = build_grid(mf, outer_radius, cells);
  std::vector<double> rhs(cells);
  for (int i = 0; i < cells; ++i) rhs[i] = rhs_fn(grid.centers[i]);
  return elliptic_solve_radial(mf, outer_radius, cells, rhs);
}

}  // namespace pmrd
