#pragma once

// Exponents, exponent ladders and smallness thresholds for the sup-norm and
// L^q estimates of the porous-medium reaction-diffusion problem
//   u_t = lap(u^m) + u^p,   m > 1, p > m.
//
// The algebraic kernel is generic over the scalar so that every identity can
// be checked in exact rational arithmetic as well as in double precision.
// Threshold functions involve non-rational powers and are double only.
//
// Two conventions adopted here (both recorded in the README):
//  * the datum powers delta_1, delta_2 of the sup bound carry the (p-1)
//    denominator, consistent with delta_1 = p * delta_{pr} and
//    delta_2 = delta_r from the L^q0 -> L^q smoothing exponents;
//  * thresholds carry the outer power 1/(p-m), and runs compare the datum
//    norm against the threshold directly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pmrd {

// ---------------------------------------------------------------------------
// Scalar-generic algebraic kernel
// ---------------------------------------------------------------------------

template <class S>
S pow_int(S base, int exponent) {
  S out(1);
  for (int i = 0; i < exponent; ++i) out = out * base;
  return out;
}

// Lebesgue exponent of the smallness norm, (p-m) N/2. Data small in this
// norm give global solutions once the exponent exceeds 1, i.e. p > m + 2/N.
template <class S>
S smallness_exponent(S m, S p, int dimension) {
  if (!(m > S(1))) throw std::invalid_argument("requires m > 1");
  if (!(p > m)) throw std::invalid_argument("requires p > m");
  if (dimension < 3) throw std::invalid_argument("requires dimension >= 3");
  return (p - m) * S(dimension) / S(2);
}

// Gain exponent of the level-set L^infinity estimate, s = 1 + 2/N - 1/r.
// Only r > N/2 makes s > 1, which the estimate needs.
template <class S>
S linf_gain_exponent(int dimension, S r) {
  if (!(S(2) * r > S(dimension)))
    throw std::invalid_argument("integrability exponent must exceed N/2");
  return S(1) + S(2) / S(dimension) - S(1) / r;
}

// L^{q0} -> L^q smoothing: ||u(t)||_q <= C t^-rate ||u0||_q0^datum_power.
template <class S>
struct SmoothingExponents {
  S rate;         // power of 1/t
  S datum_power;  // power of the initial norm
};

// Smoothing exponents in ladder form, valid for any starting exponent q0 > 1.
template <class S>
SmoothingExponents<S> smoothing_exponents(S q0, S q, int dimension, S m) {
  if (!(q0 > S(1))) throw std::invalid_argument("requires q0 > 1");
  if (!(q >= q0)) throw std::invalid_argument("requires q >= q0");
  const S n(dimension);
  const S half_nm1 = n * (m - S(1)) / S(2);
  SmoothingExponents<S> e;
  e.rate = (S(1) / q0 - S(1) / q) * n * q0 / (S(2) * q0 + n * (m - S(1)));
  e.datum_power = (q0 / q) * (q + half_nm1) / (q0 + half_nm1);
  return e;
}

// Same exponents written directly in terms of (m, p); agrees with the ladder
// form exactly when q0 is the smallness exponent.
template <class S>
SmoothingExponents<S> smoothing_exponents_from_small(S m, S p, int dimension, S q) {
  const S n(dimension);
  SmoothingExponents<S> e;
  e.rate = (S(1) - n * (p - m) / (S(2) * q)) / (p - S(1));
  e.datum_power = (p - m) / (p - S(1)) * (S(1) + n * (m - S(1)) / (S(2) * q));
  return e;
}

// Exponent triple of the sup-norm bound
//   ||u(t)||_inf <= Gamma t^{-rate/(m s)}
//                   {||u0||_{p0}^{datum_power_reaction} + ||u0||_{p0}^{datum_power_time}/(m-1)}^{1/(m s)}
//                   ||u0||_m^{(s-1)/s}.
template <class S>
struct SupBoundExponents {
  S rate;                  // gamma; the time power is rate/(m s)
  S datum_power_reaction;  // delta_1, attached to the reaction-driven term
  S datum_power_time;      // delta_2, attached to the 1/((m-1)t) term
};

template <class S>
SupBoundExponents<S> sup_bound_exponents(S m, S p, int dimension, S r) {
  const S n(dimension);
  const S p0 = smallness_exponent(m, p, dimension);
  if (!(p0 > S(1)))
    throw std::invalid_argument("sup bound exponents require p > m + 2/N");
  if (!(r > p0) || !(S(2) * r > n))
    throw std::invalid_argument("requires r > max{(p-m)N/2, N/2}");
  SupBoundExponents<S> e;
  e.rate = p / (p - S(1)) * (S(1) - n * (p - m) / (S(2) * p * r));
  e.datum_power_reaction =
      p * (p - m) / (p - S(1)) * (S(1) + n * (m - S(1)) / (S(2) * p * r));
  e.datum_power_time = (p - m) / (p - S(1)) * (S(1) + n * (m - S(1)) / (S(2) * r));
  return e;
}

// Moser exponent ladder q_n = N/(N-2) (m + q_{n-1} - 1), stopped at the first
// index reaching q_target.
template <class S>
std::vector<S> exponent_ladder(S q0, int dimension, S m, S q_target) {
  if (!(q0 > S(1))) throw std::invalid_argument("ladder requires q0 > 1");
  if (!(q_target >= q0))
    throw std::invalid_argument("ladder target must be >= q0");
  const S sigma = S(dimension) / S(dimension - 2);
  std::vector<S> ladder{q0};
  while (ladder.back() < q_target)
    ladder.push_back(sigma * (m + ladder.back() - S(1)));
  return ladder;
}

// Closed form of the ladder, q_n = sigma^n q0 + sigma (m-1) sum_{i<n} sigma^i.
template <class S>
S exponent_ladder_closed_form(S q0, int dimension, S m, int n) {
  const S sigma = S(dimension) / S(dimension - 2);
  S geometric(0);
  for (int i = 0; i < n; ++i) geometric = geometric + pow_int(sigma, i);
  return pow_int(sigma, n) * q0 + sigma * (m - S(1)) * geometric;
}

// ---------------------------------------------------------------------------
// Ladder aggregates and thresholds (double precision)
// ---------------------------------------------------------------------------

struct MoserData {
  double q0 = 0.0;
  std::vector<double> ladder;  // q_0 ... q_nbar
  int nbar = 0;                // first index with q_nbar >= q_target
  double sigma = 0.0;          // N/(N-2)
  double a = 0.0;              // sigma^nbar - 1
  double b = 0.0;              // N(m-1) a + 2 q0 (a+1)
  double alpha = 0.0;          // (N-2)/2 * a / q_nbar
  double beta = 0.0;           // N/2 * a / q_nbar = sigma * alpha
  double delta = 0.0;          // (a+1) q0 / q_nbar
  double theta = 0.0;          // interpolation weight of q between q0 and q_nbar
};

// Interpolation weight of an exponent q between the foot and the top of a
// computed ladder (1 at the foot, 0 at the top).
inline double interpolation_weight(double q0, double q_top, double q) {
  if (!(q0 <= q) || !(q <= q_top))
    throw std::invalid_argument("interpolation exponent must lie within the ladder");
  if (q_top == q0) return 1.0;
  return (q0 / q) * (q_top - q) / (q_top - q0);
}

inline MoserData moser_data(double q0, int dimension, double m, double q_target) {
  MoserData d;
  d.q0 = q0;
  d.ladder = exponent_ladder(q0, dimension, m, q_target);
  d.nbar = static_cast<int>(d.ladder.size()) - 1;
  d.sigma = static_cast<double>(dimension) / (dimension - 2);
  const double top = d.ladder.back();
  d.a = pow_int(d.sigma, d.nbar) - 1.0;
  d.b = dimension * (m - 1.0) * d.a + 2.0 * q0 * (d.a + 1.0);
  d.alpha = 0.5 * (dimension - 2) * d.a / top;
  d.beta = 0.5 * dimension * d.a / top;
  d.delta = (d.a + 1.0) * q0 / top;
  d.theta = interpolation_weight(q0, top, q_target);
  return d;
}

// Smallness threshold for the L^q0 -> L^q smoothing estimate:
//   [ min{ min_n 2m (q_n - 1)/(m + q_n - 1)^2 C_s^2,
//          2m (p0 - 1)/(m + p0 - 1)^2 C_s^2 } ]^{1/(p-m)}.
// Nonincreasing in q: raising the target only extends the ladder minimum.
inline double threshold_small_data(double p, double m, int dimension, double sobolev,
                                   double q, double q0) {
  if (!(sobolev > 0.0)) throw std::invalid_argument("requires C_s > 0");
  const double p0 = smallness_exponent(m, p, dimension);
  if (!(p0 > 1.0))
    throw std::invalid_argument("threshold requires p > m + 2/N");
  const auto gain = [&](double x) {
    return 2.0 * m * (x - 1.0) / ((m + x - 1.0) * (m + x - 1.0)) * sobolev * sobolev;
  };
  double inner = gain(p0);
  for (double qn : exponent_ladder(q0, dimension, m, q))
    inner = std::min(inner, gain(qn));
  return std::pow(inner, 1.0 / (p - m));
}

// Two-term threshold under which the L^q norm of the solution cannot
// increase; defined for any q > 1 (not only above the smallness exponent).
inline double threshold_norm_decrease(double p, double m, int dimension, double sobolev,
                                      double q) {
  if (!(sobolev > 0.0)) throw std::invalid_argument("requires C_s > 0");
  if (!(q > 1.0)) throw std::invalid_argument("requires q > 1");
  const double p0 = smallness_exponent(m, p, dimension);
  if (!(p0 > 1.0))
    throw std::invalid_argument("threshold requires p > m + 2/N");
  const auto gain = [&](double x) {
    return 2.0 * m * (x - 1.0) / ((m + x - 1.0) * (m + x - 1.0)) * sobolev * sobolev;
  };
  return std::pow(std::min(gain(q), gain(p0)), 1.0 / (p - m));
}

struct ThresholdFamily {
  double eps0 = 0.0;      // ladder threshold at q = p r, q0 = p0
  double eps0_hat = 0.0;  // ladder threshold at the requested q, q0 = p0
  double eps_bar = 0.0;   // two-term threshold at the requested q
  double eps = 0.0;       // min(eps_bar, eps0)
};

inline ThresholdFamily threshold_family(double p, double m, int dimension, double r,
                                        double sobolev, double q) {
  const double p0 = smallness_exponent(m, p, dimension);
  if (!(p0 > 1.0))
    throw std::invalid_argument("threshold family requires p > m + 2/N");
  if (!(q >= p0)) throw std::invalid_argument("threshold family requires q >= p0");
  ThresholdFamily t;
  t.eps0 = threshold_small_data(p, m, dimension, sobolev, p * r, p0);
  t.eps0_hat = threshold_small_data(p, m, dimension, sobolev, q, p0);
  t.eps_bar = threshold_norm_decrease(p, m, dimension, sobolev, q);
  t.eps = std::min(t.eps_bar, t.eps0);
  return t;
}

// Smallness threshold on Poincare manifolds (p > m suffices). The constant
// couples both functional inequalities:
//   C = C_p^{2m/p} (1/C_s)^{2 (1-theta)(p+q-1)/(p+m+q-1)},
//   theta = m(m+q-1)/(p(p+q-1)),
// and the outer power (p+m+q-1)/(p(p+q-1) - m(m+q-1)) reduces to 1/(p-m).
inline double threshold_poincare(double q, double m, double p, int dimension,
                                 double poincare, double sobolev) {
  if (!(p > m) || !(m > 1.0)) throw std::invalid_argument("requires p > m > 1");
  if (!(q > 1.0)) throw std::invalid_argument("requires q > 1");
  if (!(sobolev > 0.0)) throw std::invalid_argument("requires C_s > 0");
  if (!(poincare > 0.0))
    throw std::invalid_argument("threshold unavailable: Poincare constant required");
  const double theta = m * (m + q - 1.0) / (p * (p + q - 1.0));
  const double tilde_c =
      std::pow(1.0 / sobolev, 2.0 * (1.0 - theta) * (p + q - 1.0) / (p + m + q - 1.0));
  const double c = std::pow(poincare, 2.0 * m / p) * tilde_c;
  const auto gain = [&](double x) {
    return 2.0 * m * (x - 1.0) / ((m + x - 1.0) * (m + x - 1.0)) * c;
  };
  const double inner = std::min(gain(q), gain(0.5 * p * dimension));
  const double denom = p * (p + q - 1.0) - m * (m + q - 1.0);
  if (!(denom > 0.0))
    throw std::logic_error("threshold exponent denominator must be positive for p > m");
  return std::pow(inner, (p + m + q - 1.0) / denom);
}

// Overall Poincare-route threshold: minimum over the four exponents the
// sup-bound proof runs the monotonicity lemma at.
inline double threshold_poincare_overall(double m, double p, int dimension, double r,
                                         double poincare, double sobolev) {
  double out = std::numeric_limits<double>::infinity();
  for (double q : {m, p, p * r, r})
    out = std::min(out, threshold_poincare(q, m, p, dimension, poincare, sobolev));
  return out;
}

// Constant of the explicit sup bound, Gamma = [s/(s-1) (1/C_s)^{2/s}]^{1/m}.
inline double sup_bound_constant(double m, int dimension, double r, double sobolev) {
  const double s = linf_gain_exponent(dimension, r);
  return std::pow(s / (s - 1.0) * std::pow(1.0 / sobolev, 2.0 / s), 1.0 / m);
}

// ---------------------------------------------------------------------------
// Assembled table
// ---------------------------------------------------------------------------

struct ExponentTable {
  double m = 0.0, p = 0.0, r = 0.0, q = 0.0;
  int dimension = 0;
  double sobolev = 0.0, poincare = 0.0;
  double p0 = 0.0;
  std::optional<double> s;
  std::optional<SupBoundExponents<double>> sup_bound;
  std::optional<SmoothingExponents<double>> smoothing_q;  // q0 = p0
  std::optional<double> eps0_tilde;                       // ladder threshold at (q, p0)
  std::optional<ThresholdFamily> family;
  std::optional<double> eps1_tilde;  // Poincare threshold at the requested q
  std::optional<double> eps1;        // min over {m, p, pr, r}
  std::optional<MoserData> moser;    // ladder from p0 to q
};

inline ExponentTable build_exponent_table(double m, double p, int dimension, double r,
                                          double q, double sobolev, double poincare) {
  if (!(m > 1.0) || !(p > m))
    throw std::invalid_argument("exponent table requires p > m > 1");
  if (dimension < 3) throw std::invalid_argument("requires dimension >= 3");
  if (!(sobolev > 0.0)) throw std::invalid_argument("requires C_s > 0");
  ExponentTable t;
  t.m = m;
  t.p = p;
  t.r = r;
  t.q = q;
  t.dimension = dimension;
  t.sobolev = sobolev;
  t.poincare = poincare;
  t.p0 = smallness_exponent(m, p, dimension);
  if (2.0 * r > dimension) t.s = linf_gain_exponent(dimension, r);

  const bool supercritical = t.p0 > 1.0;
  if (supercritical && r > t.p0 && 2.0 * r > dimension)
    t.sup_bound = sup_bound_exponents(m, p, dimension, r);
  if (supercritical && q >= t.p0) {
    t.smoothing_q = smoothing_exponents(t.p0, q, dimension, m);
    t.eps0_tilde = threshold_small_data(p, m, dimension, sobolev, q, t.p0);
    t.family = threshold_family(p, m, dimension, r, sobolev, q);
    t.moser = moser_data(t.p0, dimension, m, q);
  }
  if (poincare > 0.0) {
    if (q > 1.0) t.eps1_tilde = threshold_poincare(q, m, p, dimension, poincare, sobolev);
    t.eps1 = threshold_poincare_overall(m, p, dimension, r, poincare, sobolev);
  }
  return t;
}

}  // namespace pmrd
