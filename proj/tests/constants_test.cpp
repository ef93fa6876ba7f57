#include "pmrd/constants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmrd/rational.hpp"

using namespace pmrd;

TEST(Exponents, SmallnessExponent) {
  EXPECT_DOUBLE_EQ(smallness_exponent(2.0, 3.0, 3), 1.5);
  EXPECT_DOUBLE_EQ(smallness_exponent(2.0, 2.5, 4), 1.0);  // p = m + 2/N boundary
  EXPECT_NEAR(smallness_exponent(2.0, 2.7, 3), 1.05, 1e-12);
  EXPECT_THROW(smallness_exponent(1.0, 2.0, 3), std::invalid_argument);
  EXPECT_THROW(smallness_exponent(2.0, 2.0, 3), std::invalid_argument);
}

TEST(Exponents, LinfGain) {
  EXPECT_NEAR(linf_gain_exponent(3, 2.0), 7.0 / 6.0, 1e-15);
  EXPECT_DOUBLE_EQ(linf_gain_exponent(4, 4.0), 1.25);
  EXPECT_THROW(linf_gain_exponent(4, 2.0), std::invalid_argument);  // r = N/2
}

TEST(Exponents, SupBoundTriple) {
  const auto e = sup_bound_exponents(2.0, 3.0, 3, 2.0);
  EXPECT_NEAR(e.rate, 9.0 / 8.0, 1e-15);
  EXPECT_NEAR(e.datum_power_reaction, 15.0 / 8.0, 1e-15);
  EXPECT_NEAR(e.datum_power_time, 7.0 / 8.0, 1e-15);
  // gamma = gamma_r + 1 = p gamma_{pr}
  const auto at_r = smoothing_exponents_from_small(2.0, 3.0, 3, 2.0);
  EXPECT_NEAR(at_r.rate, 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(at_r.rate + 1.0, e.rate, 1e-15);
  const auto at_pr = smoothing_exponents_from_small(2.0, 3.0, 3, 6.0);
  EXPECT_NEAR(3.0 * at_pr.rate, e.rate, 1e-15);
}

TEST(Exponents, SmoothingDualForms) {
  // Ladder form from q0 = 1.5 equals the direct form with p = 3 on N = 3.
  const auto lad = smoothing_exponents(1.5, 6.0, 3, 2.0);
  EXPECT_NEAR(lad.rate, 3.0 / 8.0, 1e-15);
  const auto dir = smoothing_exponents_from_small(2.0, 3.0, 3, 6.0);
  EXPECT_NEAR(dir.rate, 3.0 / 8.0, 1e-15);
  // q = q0: no gain, datum power one.
  const auto none = smoothing_exponents(2.0, 2.0, 4, 2.0);
  EXPECT_DOUBLE_EQ(none.rate, 0.0);
  EXPECT_DOUBLE_EQ(none.datum_power, 1.0);
  // Direct ladder-form evaluation.
  const auto d = smoothing_exponents(2.0, 14.0, 4, 2.0);
  EXPECT_NEAR(d.datum_power, 4.0 / 7.0, 1e-15);
  EXPECT_THROW(smoothing_exponents(2.0, 1.5, 4, 2.0), std::invalid_argument);
}

TEST(Exponents, LargeQLimits) {
  // gamma_q -> 1/(p-1), delta_q -> (p-m)/(p-1) as q -> infinity.
  const double m = 2.0, p = 3.0;
  const auto e = smoothing_exponents_from_small(m, p, 3, 1e6);
  EXPECT_NEAR(e.rate, 1.0 / (p - 1.0), 1e-4);
  EXPECT_NEAR(e.datum_power, (p - m) / (p - 1.0), 1e-4);
}

TEST(Ladder, WorkedExamples) {
  const auto a = exponent_ladder(2.0, 4, 2.0, 9.0);
  ASSERT_EQ(a, (std::vector<double>{2.0, 6.0, 14.0}));
  const auto b = exponent_ladder(2.0, 4, 2.0, 2.0);
  ASSERT_EQ(b, (std::vector<double>{2.0}));
  const auto c = exponent_ladder(1.5, 3, 2.0, 20.0);
  ASSERT_EQ(c, (std::vector<double>{1.5, 7.5, 25.5}));
  EXPECT_THROW(exponent_ladder(2.0, 4, 2.0, 1.0), std::invalid_argument);
}

TEST(Ladder, ClosedFormMatchesRecursionDouble) {
  for (int n_dim : {3, 4, 5, 6, 7, 8}) {
    const double sigma = static_cast<double>(n_dim) / (n_dim - 2);
    double q = 1.7;
    for (int n = 0; n <= 30; ++n) {
      const double closed = exponent_ladder_closed_form(1.7, n_dim, 2.3, n);
      EXPECT_NEAR(closed / q, 1.0, 1e-12) << "N=" << n_dim << " n=" << n;
      q = sigma * (2.3 + q - 1.0);
    }
  }
}

TEST(Ladder, ClosedFormMatchesRecursionExactly) {
  const Rational q0 = ratio(5, 2);
  const Rational m = ratio(7, 3);
  const int dim = 5;
  const Rational sigma = Rational(dim) / Rational(dim - 2);
  Rational q = q0;
  for (int n = 0; n <= 30; ++n) {
    EXPECT_EQ(exponent_ladder_closed_form(q0, dim, m, n), q) << "n=" << n;
    q = sigma * (m + q - Rational(1));
  }
}

TEST(Ladder, AggregatesWorkedInstance) {
  const auto d = moser_data(2.0, 4, 2.0, 9.0);
  EXPECT_EQ(d.nbar, 2);
  EXPECT_DOUBLE_EQ(d.sigma, 2.0);
  EXPECT_DOUBLE_EQ(d.a, 3.0);
  EXPECT_DOUBLE_EQ(d.b, 28.0);
  EXPECT_NEAR(d.alpha, 3.0 / 14.0, 1e-15);
  EXPECT_NEAR(d.beta, 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(d.delta, 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(d.beta, d.sigma * d.alpha, 1e-15);
  // Interpolation weight along the same ladder.
  EXPECT_NEAR(interpolation_weight(2.0, 14.0, 6.0), 2.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(interpolation_weight(2.0, 14.0, 14.0), 0.0);
  EXPECT_NEAR(d.theta, (2.0 / 9.0) * (14.0 - 9.0) / 12.0, 1e-15);
}

TEST(Ladder, ThetaWithinUnitInterval) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double q0 = 1.0 + 3.0 * unit(rng) + 1e-3;
    const double m = 1.0 + 2.0 * unit(rng) + 1e-3;
    const int dim = 3 + static_cast<int>(unit(rng) * 5.99);
    const double q = q0 + 40.0 * unit(rng);
    const auto d = moser_data(q0, dim, m, q);
    EXPECT_GE(d.theta, 0.0);
    EXPECT_LE(d.theta, 1.0);
    EXPECT_GE(d.ladder.back(), q);
    for (std::size_t k = 1; k < d.ladder.size(); ++k)
      EXPECT_GT(d.ladder[k], d.ladder[k - 1]);
  }
}

TEST(Thresholds, SmallDataWorkedValues) {
  EXPECT_NEAR(threshold_small_data(3.0, 2.0, 4, 1.0, 9.0, 2.0), 52.0 / 225.0, 1e-12);
  // C_s scaling: threshold carries C_s^2 inside (exponent one here).
  EXPECT_NEAR(threshold_small_data(3.0, 2.0, 4, 0.5, 9.0, 2.0), 13.0 / 225.0, 1e-12);
  EXPECT_THROW(threshold_small_data(2.4, 2.0, 4, 1.0, 9.0, 2.0), std::invalid_argument);
}

TEST(Thresholds, SmallDataMonotoneInQ) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const double q = 2.0 + 2.0 * i;
    const double e = threshold_small_data(3.0, 2.0, 4, 1.0, q, 2.0);
    EXPECT_LE(e, prev * (1.0 + 1e-14));
    prev = e;
  }
}

TEST(Thresholds, FamilyWorkedValues) {
  const auto fam9 = threshold_family(3.0, 2.0, 4, 3.0, 1.0, 9.0);
  EXPECT_NEAR(fam9.eps0, 52.0 / 225.0, 1e-12);      // q = p r = 9
  EXPECT_NEAR(fam9.eps0_hat, 52.0 / 225.0, 1e-12);  // same q here
  const auto fam2 = threshold_family(3.0, 2.0, 4, 3.0, 1.0, 2.0);
  EXPECT_NEAR(fam2.eps_bar, 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(fam2.eps, 52.0 / 225.0, 1e-12);  // min(4/9, 52/225)
}

TEST(Thresholds, NormDecreaseBelowSmallnessExponent) {
  // The two-term threshold is defined for any q > 1, also below p0 = 2 here.
  EXPECT_NEAR(threshold_norm_decrease(3.0, 2.0, 4, 1.0, 1.5), 0.32, 1e-12);
  EXPECT_NEAR(threshold_norm_decrease(3.0, 2.0, 4, 1.0, 2.0), 4.0 / 9.0, 1e-12);
  EXPECT_THROW(threshold_norm_decrease(3.0, 2.0, 4, 1.0, 1.0), std::invalid_argument);
  // The bundled family keeps the q >= p0 contract of the ladder member.
  EXPECT_THROW(threshold_family(3.0, 2.0, 4, 3.0, 1.0, 1.5), std::invalid_argument);
}

TEST(Thresholds, FamilyMinProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int dim = 3 + static_cast<int>(unit(rng) * 5.99);
    const double m = 1.0 + 2.0 * unit(rng) + 1e-3;
    const double p = m + 2.0 / dim + 2.0 * unit(rng) + 1e-3;
    const double p0 = smallness_exponent(m, p, dim);
    const double r = std::max(p0, dim / 2.0) + unit(rng) * 10.0 + 1e-3;
    const double q = p0 + 20.0 * unit(rng);
    const auto fam = threshold_family(p, m, dim, r, 1.0, q);
    EXPECT_LE(fam.eps, fam.eps0 * (1.0 + 1e-15));
    EXPECT_LE(fam.eps, fam.eps_bar * (1.0 + 1e-15));
  }
}

TEST(Thresholds, PoincareWorkedValues) {
  EXPECT_NEAR(threshold_poincare(2.0, 2.0, 3.0, 4, 1.0, 1.0), 20.0 / 49.0, 1e-12);
  // C_p enters through C_p^{2m/p}.
  const double scaled = threshold_poincare(2.0, 2.0, 3.0, 4, 0.5, 1.0);
  EXPECT_NEAR(scaled, std::pow(0.5, 4.0 / 3.0) * 20.0 / 49.0, 1e-15);
  EXPECT_NEAR(scaled, 0.16198, 1e-5);
  EXPECT_THROW(threshold_poincare(2.0, 2.0, 3.0, 4, 0.0, 1.0), std::invalid_argument);
}

TEST(Thresholds, PoincareOverallIsMinOverFourExponents) {
  const double m = 2.0, p = 2.5, r = 2.0, cp = 1.0, cs = 1.0;
  double expect = std::numeric_limits<double>::infinity();
  for (double q : {m, p, p * r, r})
    expect = std::min(expect, threshold_poincare(q, m, p, 3, cp, cs));
  EXPECT_DOUBLE_EQ(threshold_poincare_overall(m, p, 3, r, cp, cs), expect);
}

TEST(Identities, DualFormAgreementRandomTuples) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int dim = 3 + static_cast<int>(unit(rng) * 5.99);
    const double m = 1.0 + 3.0 * unit(rng) + 1e-6;
    const double p = m + 2.0 / dim + (3.0 - 2.0 / dim) * unit(rng) + 1e-6;
    const double p0 = smallness_exponent(m, p, dim);
    const double q = p0 + (100.0 - p0) * unit(rng);
    const auto a = smoothing_exponents_from_small(m, p, dim, q);
    const auto b = smoothing_exponents(p0, q, dim, m);
    worst = std::max(worst, std::abs(a.rate - b.rate));
    worst = std::max(worst, std::abs(a.datum_power - b.datum_power));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Identities, ExactRationalSpecialization) {
  // The dual forms agree identically in exact arithmetic.
  const Rational m = ratio(9, 4), p = ratio(10, 3);
  const int dim = 5;
  const Rational p0 = smallness_exponent(m, p, dim);
  for (const Rational& q : {p0, p0 + ratio(7, 2), ratio(50)}) {
    const auto a = smoothing_exponents_from_small(m, p, dim, q);
    const auto b = smoothing_exponents(p0, q, dim, m);
    EXPECT_EQ(a.rate, b.rate);
    EXPECT_EQ(a.datum_power, b.datum_power);
  }
  const Rational r = ratio(4);
  const auto sup = sup_bound_exponents(m, p, dim, r);
  const auto lad_pr = smoothing_exponents(p0, p * r, dim, m);
  const auto lad_r = smoothing_exponents(p0, r, dim, m);
  EXPECT_EQ(sup.datum_power_reaction, p * lad_pr.datum_power);
  EXPECT_EQ(sup.datum_power_time, lad_r.datum_power);
  EXPECT_EQ(sup.rate, p * smoothing_exponents_from_small(m, p, dim, p * r).rate);
  EXPECT_EQ(sup.rate, smoothing_exponents_from_small(m, p, dim, r).rate + Rational(1));
}

TEST(Table, AvailabilityFollowsHypotheses) {
  // Supercritical with Poincare: everything present.
  const auto full = build_exponent_table(2.0, 3.0, 3, 2.0, 4.0, 2.0, 1.0);
  EXPECT_TRUE(full.sup_bound.has_value());
  EXPECT_TRUE(full.family.has_value());
  EXPECT_TRUE(full.eps1.has_value());
  // Subcritical power: small-data family absent, Poincare route present.
  const auto sub = build_exponent_table(2.0, 2.2, 3, 2.0, 4.0, 2.0, 1.0);
  EXPECT_FALSE(sub.sup_bound.has_value());
  EXPECT_FALSE(sub.family.has_value());
  EXPECT_TRUE(sub.eps1.has_value());
  // No Poincare constant: that route is absent.
  const auto nop = build_exponent_table(2.0, 3.0, 3, 2.0, 4.0, 2.0, 0.0);
  EXPECT_FALSE(nop.eps1.has_value());
  EXPECT_TRUE(nop.family.has_value());
}
