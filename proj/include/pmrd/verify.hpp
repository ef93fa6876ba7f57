#pragma once

// The acceptance suite: thirteen self-contained criteria covering the
// exponent identities, the threshold engine, the elliptic estimate, solver
// accuracy against the exact self-similar solution, L^q monotonicity, the
// smoothing surrogate, the explicit sup bound, the monotone refinement
// structure, the blow-up dichotomy, the Aronson-Benilan estimate, the
// weighted variants, and a mutation guard on the exponent engine. Each
// criterion carries its runtime budget; criteria are independent so they can
// be invoked one at a time.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pmrd/barenblatt.hpp"
#include "pmrd/constants.hpp"
#include "pmrd/diagnostics.hpp"
#include "pmrd/experiment.hpp"
#include "pmrd/geometry.hpp"
#include "pmrd/rational.hpp"
#include "pmrd/solver.hpp"

namespace pmrd {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Exponent identity suite (with a mutation hook on delta_1)
// ---------------------------------------------------------------------------

struct IdentitySuiteResult {
  int tuples = 0;
  double worst = 0.0;
  bool pass = false;
  std::string worst_case;
};

// Cross-checks, over random admissible tuples, that the two forms of the
// smoothing exponents agree when started from the smallness exponent, and
// that the sup-bound exponents compose from them:
//   gamma = p gamma_{pr} = gamma_r + 1, delta_1 = p delta_{pr}, delta_2 = delta_r.
// `delta1_alternative` substitutes the delta_1 formula; the mutation guard
// uses it to show the suite actually rejects a wrong denominator.
inline IdentitySuiteResult identity_suite(
    std::uint64_t seed, int count = 1000, double tolerance = 1e-12,
    const std::function<double(double, double, int, double)>& delta1_alternative = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dims(3, 8);

  IdentitySuiteResult out;
  out.tuples = count;
  for (int i = 0; i < count; ++i) {
    const int n = dims(rng);
    const double m = 1.0 + 3.0 * unit(rng) + 1e-6;
    const double p = m + 2.0 / n + (3.0 - 2.0 / n) * unit(rng) + 1e-6;
    const double p0 = smallness_exponent(m, p, n);
    const double q = p0 + (100.0 - p0) * unit(rng);
    const double r = std::max(p0, 0.5 * n) + 1e-3 + 50.0 * unit(rng);

    const auto direct = smoothing_exponents_from_small(m, p, n, q);
    const auto ladder = smoothing_exponents(p0, q, n, m);
    auto sup = sup_bound_exponents(m, p, n, r);
    if (delta1_alternative) sup.datum_power_reaction = delta1_alternative(m, p, n, r);
    const auto at_pr = smoothing_exponents_from_small(m, p, n, p * r);
    const auto at_r = smoothing_exponents_from_small(m, p, n, r);
    const auto lad_pr = smoothing_exponents(p0, p * r, n, m);
    const auto lad_r = smoothing_exponents(p0, r, n, m);

    const double gaps[] = {
        std::abs(direct.rate - ladder.rate),
        std::abs(direct.datum_power - ladder.datum_power),
        std::abs(sup.rate - p * at_pr.rate),
        std::abs(sup.rate - (at_r.rate + 1.0)),
        std::abs(sup.datum_power_reaction - p * lad_pr.datum_power),
        std::abs(sup.datum_power_time - lad_r.datum_power),
    };
    for (double g : gaps) {
      if (g > out.worst) {
        out.worst = g;
        std::ostringstream os;
        os << "m=" << m << " p=" << p << " N=" << n << " q=" << q << " r=" << r;
        out.worst_case = os.str();
      }
    }
  }
  out.pass = out.worst <= tolerance;
  return out;
}

namespace detail {

template <class F>
CriterionResult timed_criterion(int id, std::string name, double budget_seconds, F&& body) {
  CriterionResult res;
  res.id = id;
  res.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " exception: " << e.what();
    ok = false;
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && res.seconds > budget_seconds) {
    ok = false;
    detail << " [over budget " << budget_seconds << " s]";
  }
  res.pass = ok;
  res.detail = detail.str();
  return res;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Criterion bodies
// ---------------------------------------------------------------------------

inline CriterionResult criterion_exponent_identities(std::uint64_t seed) {
  return detail::timed_criterion(1, "exponent-identities", 1.0, [&](std::ostringstream& os) {
    const auto res = identity_suite(seed, 1000, 1e-12);
    os << res.tuples << " tuples, worst gap " << res.worst;
    if (!res.pass) os << " at " << res.worst_case;
    return res.pass;
  });
}

inline CriterionResult criterion_moser_ladder() {
  return detail::timed_criterion(2, "moser-ladder", 0.0, [&](std::ostringstream& os) {
    bool ok = true;
    // Exact closed form vs recursion out to n = 30 over rational parameters.
    struct Case { Rational q0, m; int n; };
    const std::vector<Case> cases = {
        {ratio(2), ratio(2), 4},      {ratio(3, 2), ratio(2), 3},
        {ratio(5, 2), ratio(7, 3), 5}, {ratio(2), ratio(3, 2), 6},
        {ratio(7, 4), ratio(5, 2), 8},
    };
    for (const auto& c : cases) {
      const Rational sigma = Rational(c.n) / Rational(c.n - 2);
      Rational q = c.q0;
      for (int n = 0; n <= 30; ++n) {
        if (exponent_ladder_closed_form(c.q0, c.n, c.m, n) != q) {
          ok = false;
          os << "closed form mismatch at n=" << n << " N=" << c.n << "; ";
        }
        q = sigma * (c.m + q - Rational(1));
      }
    }
    // Worked instance and its aggregates.
    const auto d = moser_data(2.0, 4, 2.0, 9.0);
    const std::vector<double> want{2.0, 6.0, 14.0};
    ok = ok && d.ladder == want && d.nbar == 2;
    ok = ok && detail::close(d.a, 3.0, 1e-15) && detail::close(d.b, 28.0, 1e-14);
    ok = ok && detail::close(d.alpha, 3.0 / 14.0, 1e-15);
    ok = ok && detail::close(d.beta, 3.0 / 7.0, 1e-15);
    ok = ok && detail::close(d.delta, 4.0 / 7.0, 1e-15);
    ok = ok && detail::close(d.beta, d.sigma * d.alpha, 1e-15);
    os << "ladder [2,6,14], aggregates a=" << d.a << " b=" << d.b << " alpha=" << d.alpha
       << " beta=" << d.beta << " delta=" << d.delta;
    return ok;
  });
}

inline CriterionResult criterion_threshold_engine() {
  return detail::timed_criterion(3, "threshold-engine", 0.0, [&](std::ostringstream& os) {
    bool ok = true;
    const double eps0 = threshold_small_data(3.0, 2.0, 4, 1.0, 9.0, 2.0);
    ok = ok && detail::close(eps0, 52.0 / 225.0, 1e-12);
    const double eps1 = threshold_poincare(2.0, 2.0, 3.0, 4, 1.0, 1.0);
    ok = ok && detail::close(eps1, 20.0 / 49.0, 1e-12);
    os << "eps0_tilde=" << eps0 << " (52/225), eps1_tilde=" << eps1 << " (20/49)";
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
      const double q = 2.0 + i * 2.0;
      const double e = threshold_small_data(3.0, 2.0, 4, 1.0, q, 2.0);
      if (e > prev * (1.0 + 1e-14)) {
        ok = false;
        os << "; not nonincreasing at q=" << q;
      }
      prev = e;
    }
    return ok;
  });
}

inline CriterionResult criterion_elliptic_estimate() {
  return detail::timed_criterion(4, "elliptic-estimate", 10.0, [&](std::ostringstream& os) {
    bool ok = true;
    // Exact centre values of -lap v = 1 on the unit ball.
    {
      const auto mf = euclidean_space(3);
      const auto v = elliptic_solve_radial(mf, 1.0, 1000, [](double) { return 1.0; });
      const double err3 = std::abs(v.values.front() - 1.0 / 6.0);
      const auto mf4 = euclidean_space(4);
      const auto w = elliptic_solve_radial(mf4, 1.0, 1000, [](double) { return 1.0; });
      const double err4 = std::abs(w.values.front() - 1.0 / 8.0);
      ok = ok && err3 <= 1e-4 && err4 <= 1e-4;
      os << "centre errors N=3: " << err3 << ", N=4: " << err4;
    }
    // Nine-case sweep of the level-set estimate with measured norms.
    const auto mf = euclidean_space(3);
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 2; ++j) {
      for (double radius : {1.0, 5.0, 20.0}) {
        const int cells = 1000;
        const auto grid = build_grid(mf, radius, cells);
        std::vector<double> f(cells);
        for (int i = 0; i < cells; ++i) f[i] = std::pow(grid.centers[i], j);
        const auto v = elliptic_solve_radial(mf, radius, cells, f);
        const auto rep = check_elliptic_linf(grid, v.values, f, 2.0, 3,
                                             mf.sobolev_constant);
        worst = std::min(worst, rep.worst_margin);
        ok = ok && rep.pass;
      }
    }
    os << "; sweep worst margin " << worst;
    return ok;
  });
}

namespace detail {

// Max relative sup-norm error against the exact self-similar solution over
// the recorded samples (simulation time t corresponds to profile time 1+t).
inline double barenblatt_sup_error(int cells) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 3.0;  // irrelevant: reaction off
  pp.reaction = false;
  pp.radius = 10.0;
  pp.datum.profile = DatumProfile::barenblatt;
  pp.datum.amplitude = 1.0;
  SolverSettings st;
  st.cells = cells;
  st.t_end = 1.0;
  st.dt0 = 0.2 * (pp.radius / cells);
  st.dt_min = 1e-12;
  for (int k = 1; k <= 10; ++k) st.sample_times.push_back(0.1 * k);
  const auto rec = evolve(mf, pp, st);
  const auto exact = BarenblattSolution::with_peak(1.0, 1.0, 2.0, 3);
  double worst = 0.0;
  for (const auto& s : rec.samples) {
    if (s.t <= 0.0) continue;
    const double ref = exact.sup(1.0 + s.t);
    worst = std::max(worst, std::abs(s.sup - ref) / ref);
  }
  return worst;
}

}  // namespace detail

inline CriterionResult criterion_barenblatt_accuracy() {
  return detail::timed_criterion(5, "barenblatt-accuracy", 60.0, [&](std::ostringstream& os) {
    const double e500 = detail::barenblatt_sup_error(500);
    const double e1000 = detail::barenblatt_sup_error(1000);
    const double e2000 = detail::barenblatt_sup_error(2000);
    const double r1 = e500 / e1000;
    const double r2 = e1000 / e2000;
    os << "errors " << e500 << " / " << e1000 << " / " << e2000 << ", ratios " << r1 << ", "
       << r2;
    return e2000 <= 0.02 && r1 >= 1.5 && r2 >= 1.5;
  });
}

// Shared configuration for the small-datum Euclidean run of criteria 6/7/11,
// and its weighted twin (criterion 12).
inline ExperimentConfig small_datum_config(bool weighted) {
  ExperimentConfig cfg;
  cfg.name = weighted ? "small-datum-weighted" : "small-datum";
  cfg.manifold = weighted ? weighted_euclidean_space(3, 2.0) : euclidean_space(3);
  cfg.problem.m = 2.0;
  cfg.problem.p = 3.0;
  cfg.problem.radius = 10.0;
  cfg.problem.reaction = true;
  cfg.problem.datum.profile = DatumProfile::gaussian;
  cfg.problem.datum.amplitude = 1.0;
  cfg.problem.datum.width = 1.0;
  cfg.r = 2.0;
  cfg.q_list = {1.5, 2.0, 4.0};  // p0, m, 2m
  DatumNormalization dn;
  dn.q_spec = "p0";
  dn.fraction = 0.5;
  dn.threshold = "eps0";
  cfg.normalize = dn;
  cfg.solver.cells = 1000;
  cfg.solver.dt0 = 2e-3;
  cfg.solver.t_end = 10.0;
  cfg.solver.store_states = true;
  for (int i = 0; i < 25; ++i)
    cfg.solver.sample_times.push_back(0.01 * std::pow(1000.0, i / 24.0));
  cfg.checks = {DiagnosticCheck::lq_monotone};
  cfg.ab_times = {0.1, 1.0, 10.0};
  return cfg;
}

inline CriterionResult criterion_lq_monotonicity(bool weighted = false) {
  const int id = weighted ? 12 : 6;
  const char* name = weighted ? "weighted-lq-monotonicity" : "lq-monotonicity";
  return detail::timed_criterion(id, name, 60.0, [&](std::ostringstream& os) {
    ExperimentConfig cfg = small_datum_config(weighted);
    const auto datum = resolve_datum(cfg);
    const auto rec = execute_run(cfg);
    const auto rep = check_lq_monotone(rec, cfg.q_list);
    os << "datum |u0|_p0 = " << datum.achieved_norm << " (threshold "
       << datum.threshold.value_or(0.0) << "), worst margin " << rep.worst_margin;
    return rep.pass && rec.status == RunStatus::completed;
  });
}

inline CriterionResult criterion_smoothing_statistic() {
  return detail::timed_criterion(7, "smoothing-statistic", 0.0, [&](std::ostringstream& os) {
    ExperimentConfig cfg = small_datum_config(false);
    resolve_datum(cfg);
    const auto rec = execute_run(cfg);
    ExperimentConfig fine = cfg;
    fine.normalize.reset();  // same datum, finer grid
    fine.solver.cells = 2000;
    const auto rec2 = execute_run(fine);

    const auto e = sup_bound_exponents(cfg.problem.m, cfg.problem.p, 3, cfg.r);
    const double s = linf_gain_exponent(3, cfg.r);
    const auto stat = smoothing_statistic(rec, e.rate, cfg.problem.m, s, 0.1, 10.0);
    const auto stat2 = smoothing_statistic(rec2, e.rate, cfg.problem.m, s, 0.1, 10.0);
    const double fitted =
        fit_decay_exponent(sample_times_of(rec), sup_series_of(rec), 1.0, 10.0);
    const double expected = e.rate / (cfg.problem.m * s);
    os << "max S coarse " << stat.max_value << ", fine " << stat2.max_value << ", fitted "
       << fitted << " vs " << expected << " - 0.05";
    const bool bounded = std::isfinite(stat.max_value) && std::isfinite(stat2.max_value);
    // The discrete sup is sampled at cell centres, which biases the coarse
    // grid low by O((dr/2)^2 u''); grant that bias when comparing maxima.
    const double sup_sampling_bias = 1e-3;
    const bool refine_ok = stat2.max_value <= stat.max_value * (1.0 + sup_sampling_bias);
    return bounded && refine_ok && fitted >= expected - 0.05;
  });
}

inline ExperimentConfig poincare_bound_config(bool weighted) {
  ExperimentConfig cfg;
  cfg.name = weighted ? "sup-bound-weighted" : "sup-bound-hyperbolic";
  // The weighted Poincare constant for decay power 2 is not pinned by a
  // formula; 0.5 is the documented conservative configuration choice.
  cfg.manifold = weighted ? weighted_euclidean_space(3, 2.0, 0.0, 0.5)
                          : hyperbolic_space(3, 1.0);
  cfg.problem.m = 2.0;
  cfg.problem.p = 2.5;
  cfg.problem.radius = 6.0;
  cfg.problem.reaction = true;
  cfg.problem.datum.profile = DatumProfile::gaussian;
  cfg.problem.datum.amplitude = 1.0;
  cfg.problem.datum.width = 1.0;
  cfg.r = 2.0;
  cfg.q_list = {2.0, 2.5};
  DatumNormalization dn;
  dn.q_spec = "pN2";
  dn.fraction = 0.5;
  dn.threshold = "eps1";
  cfg.normalize = dn;
  cfg.solver.cells = 900;
  cfg.solver.dt0 = 1e-3;
  cfg.solver.t_end = 5.0;
  for (int i = 0; i < 21; ++i)
    cfg.solver.sample_times.push_back(0.05 * std::pow(100.0, i / 20.0));
  cfg.checks = {DiagnosticCheck::sup_bound};
  return cfg;
}

inline CriterionResult criterion_sup_bound(bool weighted = false) {
  const int id = weighted ? 12 : 8;
  const char* name = weighted ? "weighted-sup-bound" : "sup-bound-explicit";
  return detail::timed_criterion(id, name, 120.0, [&](std::ostringstream& os) {
    ExperimentConfig cfg = poincare_bound_config(weighted);
    const auto datum = resolve_datum(cfg);
    const auto rec = execute_run(cfg);
    const auto reports = run_diagnostics(cfg, rec);
    os << "datum |u0|_{pN/2} = " << datum.achieved_norm << " (threshold "
       << datum.threshold.value_or(0.0) << ")";
    bool ok = rec.status == RunStatus::completed;
    for (const auto& rep : reports) {
      os << ", " << rep.claim << " worst margin " << rep.worst_margin;
      ok = ok && rep.pass;
    }
    return ok;
  });
}

inline CriterionResult criterion_monotone_refinement() {
  return detail::timed_criterion(9, "monotone-refinement", 0.0, [&](std::ostringstream& os) {
    // Truncation-cap sweep. The datum peaks above 8^{1/p}, so every cap is
    // active from the start; a narrow peak makes the super-level sets (and
    // with them the successive gaps) shrink quickly along the cap ladder.
    ExperimentConfig kc;
    kc.manifold = euclidean_space(3);
    kc.problem.m = 2.0;
    kc.problem.p = 3.0;
    kc.problem.radius = 8.0;
    kc.problem.datum.profile = DatumProfile::gaussian;
    kc.problem.datum.amplitude = 2.2;
    kc.problem.datum.width = 1.0;
    kc.solver.cells = 400;
    kc.solver.dt0 = 5e-4;
    kc.solver.t_end = 0.06;
    kc.solver.sample_times = {0.02, 0.04, 0.06};
    const auto cap_sweep =
        run_sweep(kc, SweepMode::cap, {1.0, 2.0, 4.0, 8.0,
                                       std::numeric_limits<double>::infinity()});

    // Radius sweep: Gaussian tails make the Dirichlet wall position matter.
    ExperimentConfig rc;
    rc.manifold = euclidean_space(3);
    rc.problem.m = 2.0;
    rc.problem.p = 3.0;
    rc.problem.radius = 5.0;
    rc.problem.datum.profile = DatumProfile::gaussian;
    rc.problem.datum.amplitude = 1.0;
    rc.problem.datum.width = 2.0;
    rc.solver.cells = 250;
    rc.solver.dt0 = 5e-4;
    rc.solver.t_end = 0.5;
    rc.solver.sample_times = {0.1, 0.25, 0.5};
    const auto radius_sweep = run_sweep(rc, SweepMode::radius, {5.0, 10.0, 20.0});

    os << "cap gaps:";
    for (double d : cap_sweep.differences) os << " " << d;
    os << "; radius gaps:";
    for (double d : radius_sweep.differences) os << " " << d;
    return cap_sweep.pass && radius_sweep.pass;
  });
}

inline CriterionResult criterion_blowup_dichotomy() {
  return detail::timed_criterion(10, "blowup-dichotomy", 0.0, [&](std::ostringstream& os) {
    // Subcritical reaction power: a sizeable datum must trip the numerical
    // blow-up indicator well before t = 100.
    ExperimentConfig bc;
    bc.manifold = euclidean_space(3);
    bc.problem.m = 2.0;
    bc.problem.p = 2.2;
    bc.problem.radius = 10.0;
    bc.problem.datum.profile = DatumProfile::bump;
    bc.problem.datum.amplitude = 5.0;
    bc.problem.datum.width = 2.0;
    bc.solver.cells = 600;
    bc.solver.dt0 = 1e-3;
    bc.solver.t_end = 100.0;
    bc.solver.sup_cap = 1e6;
    bc.solver.sample_times = {0.05, 0.1, 0.5, 1.0, 10.0, 100.0};
    const auto blow = execute_run(bc);

    // Supercritical power with a small datum: completes to t = 100 bounded.
    ExperimentConfig gc = small_datum_config(false);
    gc.solver.t_end = 100.0;
    gc.solver.dt0 = 0.02;
    gc.solver.sample_times.clear();
    for (int i = 0; i < 20; ++i)
      gc.solver.sample_times.push_back(0.1 * std::pow(1000.0, i / 19.0));
    gc.ab_times.clear();
    gc.checks.clear();
    resolve_datum(gc);
    const auto global = execute_run(gc);

    os << "blow-up status " << to_string(blow.status) << " at t=" << blow.t_stop
       << "; global status " << to_string(global.status) << ", sup(100)="
       << global.samples.back().sup;
    const bool fired = blow.status == RunStatus::blow_up && blow.t_stop < 100.0;
    const bool bounded = global.status == RunStatus::completed &&
                         global.samples.back().sup <= global.samples.front().sup;
    return fired && bounded;
  });
}

inline CriterionResult criterion_aronson_benilan() {
  return detail::timed_criterion(11, "aronson-benilan", 0.0, [&](std::ostringstream& os) {
    bool ok = true;
    // Exact self-similar state: the time term dominates, margins must be
    // clearly one-sided.
    const auto mf = euclidean_space(3);
    const auto grid = build_grid(mf, 10.0, 1500);
    const auto exact = BarenblattSolution::with_peak(1.0, 1.0, 2.0, 3);
    std::vector<double> u(grid.cell_count);
    for (int i = 0; i < grid.cell_count; ++i) u[i] = exact.value(grid.centers[i], 1.0);
    const auto phis = aronson_benilan_test_functions(grid);
    const auto rep = check_aronson_benilan(grid, u, 1.0, 2.0, 3.0, phis);
    ok = ok && rep.pass;
    os << "self-similar worst margin " << rep.worst_margin;

    // Reactive small-datum run at t in {0.1, 1, 10}.
    ExperimentConfig cfg = small_datum_config(false);
    cfg.checks = {DiagnosticCheck::aronson_benilan};
    resolve_datum(cfg);
    const auto rec = execute_run(cfg);
    const auto reports = run_diagnostics(cfg, rec);
    for (const auto& r : reports) {
      os << "; t=" << (r.details.empty() ? 0.0 : r.details.front().t) << " margin "
         << r.worst_margin;
      ok = ok && r.pass;
    }
    return ok;
  });
}

inline CriterionResult criterion_weighted_case() {
  return detail::timed_criterion(12, "weighted-case", 0.0, [&](std::ostringstream& os) {
    const auto mono = criterion_lq_monotonicity(true);
    const auto bound = criterion_sup_bound(true);
    os << "monotonicity: " << mono.detail << " | sup bound: " << bound.detail;
    return mono.pass && bound.pass;
  });
}

inline CriterionResult criterion_mutation_guard(std::uint64_t seed) {
  return detail::timed_criterion(13, "mutation-guard", 0.0, [&](std::ostringstream& os) {
    const auto honest = identity_suite(seed, 1000, 1e-12);
    // Wrong denominator (m-1) in delta_1: the identity suite must reject it.
    const auto mutated = identity_suite(
        seed, 1000, 1e-12, [](double m, double p, int n, double r) {
          return p * (p - m) / (m - 1.0) * (1.0 + n * (m - 1.0) / (2.0 * p * r));
        });
    os << "honest worst " << honest.worst << ", mutated worst " << mutated.worst;
    return honest.pass && !mutated.pass;
  });
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

inline std::vector<CriterionResult> run_acceptance(const std::string& profile,
                                                   std::uint64_t seed = 20240711) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_exponent_identities(seed));
  out.push_back(criterion_moser_ladder());
  out.push_back(criterion_threshold_engine());
  out.push_back(criterion_elliptic_estimate());
  out.push_back(criterion_barenblatt_accuracy());
  out.push_back(criterion_lq_monotonicity(false));
  out.push_back(criterion_smoothing_statistic());
  out.push_back(criterion_sup_bound(false));
  out.push_back(criterion_monotone_refinement());
  out.push_back(criterion_blowup_dichotomy());
  out.push_back(criterion_aronson_benilan());
  out.push_back(criterion_weighted_case());
  out.push_back(criterion_mutation_guard(seed));
  (void)profile;  // both profiles run the full list; `full` adds the scoreboard
  return out;
}

inline CriterionResult run_criterion(int id, std::uint64_t seed = 20240711) {
  switch (id) {
    case 1: return criterion_exponent_identities(seed);
    case 2: return criterion_moser_ladder();
    case 3: return criterion_threshold_engine();
    case 4: return criterion_elliptic_estimate();
    case 5: return criterion_barenblatt_accuracy();
    case 6: return criterion_lq_monotonicity(false);
    case 7: return criterion_smoothing_statistic();
    case 8: return criterion_sup_bound(false);
    case 9: return criterion_monotone_refinement();
    case 10: return criterion_blowup_dichotomy();
    case 11: return criterion_aronson_benilan();
    case 12: return criterion_weighted_case();
    case 13: return criterion_mutation_guard(seed);
    default: throw std::invalid_argument("criterion id must be 1..13");
  }
}

inline nlohmann::json scoreboard_json(const std::vector<CriterionResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"detail", r.detail}});
    all = all && r.pass;
  }
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"suite", "acceptance"},
                        {"all_pass", all},
                        {"criteria", rows}};
}

}  // namespace pmrd
