#include "pmrd/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pmrd/barenblatt.hpp"
#include "pmrd/diagnostics.hpp"
#include "pmrd/norms.hpp"

using namespace pmrd;

namespace {

SolverSettings quick_settings(int cells, double t_end, double dt0) {
  SolverSettings st;
  st.cells = cells;
  st.t_end = t_end;
  st.dt0 = dt0;
  return st;
}

}  // namespace

TEST(Elliptic, ExactQuadraticSolutions) {
  // -lap v = 1 on the unit ball: v = (1 - r^2)/(2N).
  const auto v3 = elliptic_solve_radial(euclidean_space(3), 1.0, 1000,
                                        [](double) { return 1.0; });
  EXPECT_NEAR(v3.values.front(), 1.0 / 6.0, 1e-4);
  const auto v4 = elliptic_solve_radial(euclidean_space(4), 1.0, 1000,
                                        [](double) { return 1.0; });
  EXPECT_NEAR(v4.values.front(), 0.125, 1e-4);
}

TEST(Elliptic, SecondOrderConvergence) {
  auto err = [](int cells) {
    const auto mf = euclidean_space(3);
    const auto g = build_grid(mf, 1.0, cells);
    const auto v = elliptic_solve_radial(mf, 1.0, cells, [](double) { return 1.0; });
    double worst = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double exact = (1.0 - g.centers[i] * g.centers[i]) / 6.0;
      worst = std::max(worst, std::abs(v.values[i] - exact));
    }
    return worst;
  };
  EXPECT_GE(err(250) / err(500), 3.0);
  EXPECT_GE(err(500) / err(1000), 3.0);
}

TEST(Elliptic, ZeroRhsGivesZero) {
  const auto v = elliptic_solve_radial(euclidean_space(3), 2.0, 200,
                                       [](double) { return 0.0; });
  for (double x : v.values) EXPECT_DOUBLE_EQ(x, 0.0);
}

TEST(Elliptic, RejectsMismatchedRhs) {
  EXPECT_THROW(elliptic_solve_radial(euclidean_space(3), 1.0, 10, std::vector<double>(9)),
               std::invalid_argument);
}

TEST(Step, ZeroStateIsFixedPoint) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.radius = 5.0;
  const auto grid = build_grid(mf, pp.radius, 100);
  const auto op = DiffusionOperator::build(grid, OuterBoundary::dirichlet_zero);
  RadialState state{0.0, std::vector<double>(100, 0.0)};
  SolverSettings st;
  const auto res = advance_step(grid, op, state, pp, st, 0.5);
  EXPECT_TRUE(res.accepted);
  for (double v : state.values) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(Step, ConstantStateReactionSubstep) {
  // Far from the boundary the diffusion of a constant vanishes, so one step
  // adds dt * min(c^p, cap) to the interior.
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 3.0;
  pp.radius = 20.0;
  const int n = 200;
  const auto grid = build_grid(mf, pp.radius, n);
  const auto op = DiffusionOperator::build(grid, OuterBoundary::dirichlet_zero);
  const double c = 0.7, dt = 1e-3;
  for (double cap : {0.2, std::numeric_limits<double>::infinity()}) {
    pp.cap = cap;
    RadialState state{0.0, std::vector<double>(n, c)};
    SolverSettings st;
    const auto res = advance_step(grid, op, state, pp, st, dt);
    ASSERT_TRUE(res.accepted);
    const double expected = c + dt * std::min(std::pow(c, 3.0), cap);
    EXPECT_NEAR(state.values[0], expected, 1e-12);
    EXPECT_NEAR(state.values[n / 2], expected, 1e-12);
  }
}

TEST(Step, PureDiffusionDecreasesBarenblattSup) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.reaction = false;
  pp.radius = 10.0;
  pp.datum.profile = DatumProfile::barenblatt;
  pp.datum.amplitude = 1.0;
  const auto grid = build_grid(mf, pp.radius, 800);
  const auto op = DiffusionOperator::build(grid, OuterBoundary::dirichlet_zero);
  RadialState state{0.0, datum_values(pp.datum, grid, pp.m, 3)};
  const double sup0 = sup_norm(state.values);
  SolverSettings st;
  for (int k = 0; k < 10; ++k)
    ASSERT_TRUE(advance_step(grid, op, state, pp, st, 1e-3).accepted);
  EXPECT_LT(sup_norm(state.values), sup0);
}

TEST(Evolve, ZeroDatumCompletes) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.datum.amplitude = 0.0;
  auto st = quick_settings(100, 0.5, 1e-2);
  const auto rec = evolve(mf, pp, st, {1.5, 2.0});
  EXPECT_EQ(rec.status, RunStatus::completed);
  for (const auto& s : rec.samples) {
    EXPECT_DOUBLE_EQ(s.sup, 0.0);
    for (double v : s.lq) EXPECT_DOUBLE_EQ(v, 0.0);
  }
}

TEST(Evolve, ConservesWeightedMassWithoutReaction) {
  // Zero-flux boundary, no reaction: the density-weighted cell sum is
  // conserved to roundoff across a thousand steps.
  for (auto mf : {euclidean_space(3), weighted_euclidean_space(3, 2.0)}) {
    ProblemParams pp;
    pp.m = 2.0;
    pp.reaction = false;
    pp.radius = 10.0;
    pp.datum.profile = DatumProfile::gaussian;
    pp.datum.amplitude = 1.0;
    pp.datum.width = 2.0;
    const auto grid = build_grid(mf, pp.radius, 200);
    const auto op = DiffusionOperator::build(grid, OuterBoundary::no_flux);
    RadialState state{0.0, datum_values(pp.datum, grid, pp.m, 3)};
    const double mass0 = weighted_mass(grid, state.values);
    SolverSettings st;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      ASSERT_TRUE(advance_step(grid, op, state, pp, st, 1e-3).accepted);
      worst = std::max(worst, std::abs(weighted_mass(grid, state.values) - mass0));
    }
    EXPECT_LE(worst / mass0, 1e-8);
  }
}

TEST(Evolve, NonnegativityHolds) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.5;
  pp.p = 3.2;
  pp.radius = 6.0;
  pp.datum.profile = DatumProfile::bump;
  pp.datum.amplitude = 0.8;
  pp.datum.width = 1.5;
  auto st = quick_settings(300, 0.5, 1e-3);
  st.store_states = true;
  st.sample_times = {0.1, 0.3, 0.5};
  const auto rec = evolve(mf, pp, st);
  EXPECT_EQ(rec.status, RunStatus::completed);
  for (const auto& s : rec.samples)
    for (double v : s.state) EXPECT_GE(v, 0.0);
}

TEST(Evolve, ComparisonPrincipleForOrderedData) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 3.0;
  pp.radius = 8.0;
  pp.datum.profile = DatumProfile::gaussian;
  pp.datum.width = 1.5;
  auto st = quick_settings(300, 0.4, 1e-3);
  st.store_states = true;
  st.sample_times = {0.1, 0.2, 0.4};

  pp.datum.amplitude = 0.4;
  const auto lo = evolve(mf, pp, st);
  pp.datum.amplitude = 0.8;
  const auto hi = evolve(mf, pp, st);
  const auto rep = compare_runs_monotone(lo, hi, SweepMode::amplitude);
  EXPECT_TRUE(rep.pass) << "worst margin " << rep.worst_margin;
}

TEST(Evolve, TruncationMonotoneInCap) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 3.0;
  pp.radius = 8.0;
  pp.datum.profile = DatumProfile::bump;
  pp.datum.amplitude = 1.5;
  pp.datum.width = 2.0;
  auto st = quick_settings(300, 0.1, 5e-4);
  st.store_states = true;
  st.sample_times = {0.05, 0.1};

  pp.cap = 1.0;
  const auto lo = evolve(mf, pp, st);
  pp.cap = 10.0;
  const auto hi = evolve(mf, pp, st);
  const auto rep = compare_runs_monotone(lo, hi, SweepMode::cap);
  EXPECT_TRUE(rep.pass) << "worst margin " << rep.worst_margin;

  // Identical runs agree to roundoff.
  const auto again = evolve(mf, pp, st);
  EXPECT_LE(max_state_difference(hi, again), 1e-12);
}

TEST(Evolve, BlowUpIndicatorFires) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 2.2;
  pp.radius = 10.0;
  pp.datum.profile = DatumProfile::bump;
  pp.datum.amplitude = 5.0;
  pp.datum.width = 2.0;
  auto st = quick_settings(300, 50.0, 1e-3);
  st.sup_cap = 100.0;
  const auto rec = evolve(mf, pp, st);
  EXPECT_EQ(rec.status, RunStatus::blow_up);
  EXPECT_LT(rec.t_stop, 50.0);
  EXPECT_GE(rec.samples.back().sup, 100.0);
}

TEST(Evolve, StepUnderflowReportedDistinctly) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.p = 2.2;
  pp.radius = 10.0;
  pp.datum.profile = DatumProfile::bump;
  pp.datum.amplitude = 5.0;
  pp.datum.width = 2.0;
  auto st = quick_settings(300, 50.0, 1e-3);
  st.sup_cap = 1e12;  // far above what the step-size floor allows
  st.dt_min = 1e-5;
  const auto rec = evolve(mf, pp, st);
  EXPECT_EQ(rec.status, RunStatus::dt_underflow);
  EXPECT_LT(rec.samples.back().sup, 1e12);
}

TEST(Evolve, BarenblattAccuracyQuick) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  pp.m = 2.0;
  pp.reaction = false;
  pp.radius = 10.0;
  pp.datum.profile = DatumProfile::barenblatt;
  pp.datum.amplitude = 1.0;
  auto st = quick_settings(500, 1.0, 4e-3);
  st.sample_times = {0.25, 0.5, 0.75, 1.0};
  const auto rec = evolve(mf, pp, st);
  const auto exact = BarenblattSolution::with_peak(1.0, 1.0, 2.0, 3);
  for (const auto& s : rec.samples) {
    if (s.t <= 0.0) continue;
    const double ref = exact.sup(1.0 + s.t);
    EXPECT_NEAR(s.sup / ref, 1.0, 5e-2);
  }
}

TEST(Evolve, RejectsBadSettings) {
  const auto mf = euclidean_space(3);
  ProblemParams pp;
  auto st = quick_settings(100, 1.0, 1e-3);
  st.dt_min = 1.0;  // dt_min >= dt0
  EXPECT_THROW(evolve(mf, pp, st), std::invalid_argument);
  auto st2 = quick_settings(100, 1.0, 1e-3);
  st2.sample_times = {2.0};  // beyond t_end
  EXPECT_THROW(evolve(mf, pp, st2), std::invalid_argument);
  ProblemParams bad;
  bad.p = 1.5;  // p <= m
  EXPECT_THROW(evolve(mf, bad, quick_settings(100, 1.0, 1e-3)), std::invalid_argument);
}
