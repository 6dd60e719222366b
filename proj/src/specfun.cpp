// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "pinchopt/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pinchopt::specfun {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0)
    throw std::invalid_argument(std::string(what) +
                                " must be finite and nonnegative");
}

// I0 power series sum_k (x^2/4)^k / (k!)^2. Used through x = 15, where the
// largest term ratio is 56.25/k^2 and ~45 terms reach full precision.
double i0_series(double x) {
  const double t = 0.25 * x * x;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 200; ++k) {
    term *= t / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// e^{-x} I0(x) for x > 15 by the asymptotic series
//   (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k),
// truncated at its smallest term. That term is of order e^{-2x}: below
// 1e-13 at the switch point and negligible shortly after.
double i0e_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * x * k);
    if (next >= term) break;  // divergence onset; stop at the smallest term
    sum += next;
    term = next;
    if (next < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

// Correction series S(z) in ln k! = ln sqrt(2 pi k) + k (ln k - 1) + S(k),
// accurate past z = 20.
double stirling_corr(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 -
          (1.0 / 360.0 -
           (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / 1188.0 / z2) / z2) / z2) /
              z2) /
         z;
}

// ln of the Poisson pmf e^{-mu} mu^k / k!. The direct lgamma form loses
// ~|lgamma| ulps, which matters once k is in the thousands and the result
// is a small difference of large terms; that regime has mu close to k, so
// it is served by the Stirling-difference form
//   k (log1p(t) - t) - ln sqrt(2 pi k) - S(k),  t = (mu - k)/k,
// whose terms are all O(1)-accurate. When mu is far from k (|t| > 0.5) the
// 1 + t argument of log1p is itself inexact, so the direct form is used;
// there the difference is not small and lgamma's ulp error is harmless.
double log_poisson_pmf(int k, double mu) {
  if (k == 0) return -mu;
  const double kd = static_cast<double>(k);
  const double t = (mu - kd) / kd;
  if (k < 20 || std::fabs(t) > 0.5)
    return -mu + kd * std::log(mu) - std::lgamma(kd + 1.0);
  const double g = (std::fabs(t) > 1e-4)
                       ? std::log1p(t) - t
                       : t * t * (-0.5 + t * (1.0 / 3.0 - 0.25 * t));
  return kd * g - 0.5 * std::log(2.0 * kPi * kd) - stirling_corr(kd);
}

// Poisson-mixture series in the noncentral chi-squared form,
//   Q1(a,b) = sum_k pois(k; u) T_k(y),  u = a^2/2, y = b^2/2,
// where T_k(y) = e^{-y} sum_{j<=k} y^j/j! is the upper Poisson tail
// complement. Summation starts at the mode k0 = floor(u) and walks both
// directions with the pmf recurrences; both walks stop on geometric bounds
// of the remaining mass. Requires a > 0, b > 0 and no overwhelming tail
// (the caller's early outs guarantee |a-b| stays moderate, which keeps
// k0 <= ~1400 and both anchors representable).
double marcum_series(double a, double b) {
  const double u = 0.5 * a * a;
  const double y = 0.5 * b * b;
  const int k0 = static_cast<int>(u);

  const double pk0 = std::exp(log_poisson_pmf(k0, u));
  const double lpsi = log_poisson_pmf(k0, y);
  double psi0;
  double t0;
  if (lpsi < -690.0) {
    // pois(k0; y) underflows. The T walk then never reaches the region
    // where T transitions between 0 and 1 (that would need y within
    // ~sqrt(690 y) of k0, which contradicts the underflow), so T is
    // constant over the whole summation window.
    psi0 = 0.0;
    t0 = (k0 >= y) ? 1.0 : 0.0;
  } else {
    // T_k0 summed smallest-term-first: psi_j = psi_k0 * prod (i/y) upward
    // in j = k0..1 equals e^{-y} y^j / j!.
    psi0 = std::exp(lpsi);
    double acc = psi0;
    double term = psi0;
    for (int j = k0; j >= 1; --j) {
      term *= static_cast<double>(j) / y;
      acc += term;
      if (term < 1e-17 * acc && static_cast<double>(j - 1) <= y) break;
    }
    t0 = std::min(acc, 1.0);
  }

  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation; the result is 1 - O(eps) in the
                      // hardest cases and plain summation loses ~1e-12
  const auto add = [&sum, &comp](double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };

  // Upward walk. Remaining mass above k is bounded by the geometric tail
  // pois(k) (k+1)/(k+1-u) once k > u.
  {
    double pk = pk0;
    double tk = t0;
    double psik = psi0;
    for (int k = k0; k <= k0 + 4000;) {
      add(pk * tk);
      ++k;
      pk *= u / k;
      psik *= y / k;
      tk = std::min(tk + psik, 1.0);
      if (k > u && pk * (k + 1) / (k + 1 - u) < 1e-16 * sum) break;
    }
  }

  // Downward walk; mass below k is bounded by pois(k) k/(u-k) for k < u.
  {
    double pk = pk0;
    double tk = t0;
    double psik = psi0;
    for (int k = k0; k >= 1;) {
      const double pkm = pk * k / u;
      const double tkm = std::max(tk - psik, 0.0);
      const double psikm = psik * k / y;
      add(pkm * tkm);
      pk = pkm;
      tk = tkm;
      psik = psikm;
      --k;
      if (k > 0 && u > k && pk * k / (u - k) < 1e-16 * sum) break;
    }
  }

  return std::clamp(sum + comp, 0.0, 1.0);
}

// Large-argument expansion around the Gaussian limit, valid once a b is
// large and |b - a| moderate (both enforced by the caller):
//   Q1(a,b) = (2 pi)^{-1/2} sum_k A_k a^{-2k} sum_j C(1/2-k, j) a^{-j} M_j,
// with A_k the I0 asymptotic coefficients ((2k-1)!!)^2/(k! 8^k), c = b - a,
//   M_0 = sqrt(pi/2) erfc(c/sqrt(2)), M_1 = e^{-c^2/2},
//   M_j = c^{j-1} e^{-c^2/2} + (j-1) M_{j-2}.
// With a >= ~35 here, truncation at k = 6, j < 15 leaves ~1e-13.
double marcum_asymptotic(double a, double b) {
  const double c = b - a;
  const double e = std::exp(-0.5 * c * c);

  constexpr int kM = 16;
  double m[kM];
  m[0] = std::sqrt(kPi / 2.0) * std::erfc(c / std::sqrt(2.0));
  m[1] = e;
  double cpow = 1.0;  // c^{j-1}
  for (int j = 2; j < kM; ++j) {
    cpow *= c;
    m[j] = cpow * e + (j - 1) * m[j - 2];
  }

  const double inv_a = 1.0 / a;
  double s = 0.0;
  double ak = 1.0;
  double apow2k = 1.0;
  for (int k = 0; k <= 6; ++k) {
    const double alpha = 0.5 - k;
    double cj = 1.0;  // binomial C(alpha, j)
    double apj = 1.0;
    double inner = 0.0;
    for (int j = 0; j < kM - 1; ++j) {
      const double term = cj * apj * m[j];
      inner += term;
      if (std::fabs(term) < 1e-18 * std::fabs(inner) + 1e-300) break;
      cj *= (alpha - j) / (j + 1);
      apj *= inv_a;
    }
    s += ak * apow2k * inner;
    ak *= (2.0 * k + 1.0) * (2.0 * k + 1.0) / ((k + 1.0) * 8.0);
    apow2k *= inv_a * inv_a;
  }
  return std::clamp(s / std::sqrt(2.0 * kPi), 0.0, 1.0);
}

// Rational approximation of the standard normal quantile (relative error
// under 1.2e-9 over (0,1)). Only seeds the Newton iteration in solve_r_min,
// so its approximation error never reaches a result.
double normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

void CoverageProblem::validate() const {
  if (!std::isfinite(l) || l < 0.0)
    throw std::invalid_argument(
        "CoverageProblem: l must be finite and nonnegative");
  if (!std::isfinite(sigma) || sigma <= 0.0)
    throw std::invalid_argument("CoverageProblem: sigma must be positive");
  if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument(
        "CoverageProblem: epsilon must lie in (0, 1)");
}

double bessel_i0(double x) {
  require_finite_nonneg(x, "bessel_i0: x");
  if (x <= 15.0) return i0_series(x);
  return std::exp(x) * i0e_asymptotic(x);
}

double bessel_i0_scaled(double x) {
  require_finite_nonneg(x, "bessel_i0_scaled: x");
  if (x <= 15.0) return std::exp(-x) * i0_series(x);
  return i0e_asymptotic(x);
}

double marcum_q1(double a, double b) {
  require_finite_nonneg(a, "marcum_q1: a");
  require_finite_nonneg(b, "marcum_q1: b");
  if (b == 0.0) return 1.0;                   // full Rician mass
  if (a == 0.0) return std::exp(-0.5 * b * b);  // Rayleigh tail

  // Saturated tails. 1 - Q1 <= b^2 e^{-(a-b)^2/2} when a >= b, and
  // Q1 <= e^{-(b-a)^2/2} (1 + a/(b-a)) when b > a; past these cutoffs the
  // missing mass is under 4e-18, far inside the 1e-10 contract.
  if (a >= b) {
    const double c = a - b;
    if (0.5 * c * c > 40.0 + 2.0 * std::max(0.0, std::log(b))) return 1.0;
  } else {
    const double c = b - a;
    if (0.5 * c * c - std::log1p(a / c) > 40.0) return 0.0;
  }

  // The series cost and its anchor magnitudes grow with a^2; the expansion
  // takes over once a b is large, where its smallest term is far below the
  // contract (it would not be near a b ~ 30, so the crossover sits high).
  if (a * b > 2000.0) return marcum_asymptotic(a, b);
  return marcum_series(a, b);
}

double noncentral_chi2_cdf_2dof(double x, double lambda) {
  require_finite_nonneg(x, "noncentral_chi2_cdf_2dof: x");
  require_finite_nonneg(lambda, "noncentral_chi2_cdf_2dof: lambda");
  return std::clamp(1.0 - marcum_q1(std::sqrt(lambda), std::sqrt(x)), 0.0,
                    1.0);
}

double coverage_probability(const CoverageProblem& p, double r) {
  p.validate();
  require_finite_nonneg(r, "coverage_probability: r");
  return std::clamp(1.0 - marcum_q1(p.l / p.sigma, r / p.sigma), 0.0, 1.0);
}

double solve_r_min(const CoverageProblem& p) {
  p.validate();
  if (p.epsilon <= 1e-12 || p.epsilon >= 1.0 - 1e-12)
    throw std::invalid_argument(
        "solve_r_min: epsilon too close to 0 or 1 to invert");

  const double nu = p.l / p.sigma;
  const double eps = p.epsilon;

  // Bracket in normalized radius x = r/sigma: Q1(nu, 0) = 1 > eps, and
  // doubling from 1 terminates since Q1 -> 0.
  double lo = 0.0;
  double hi = 1.0;
  while (marcum_q1(nu, hi) >= eps) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9)
      throw std::runtime_error("solve_r_min: bracket expansion ran away");
  }

  // Newton within the bracket, bisection fallback when a step leaves it.
  // dQ1/db = -b e^{-(a-b)^2/2} (e^{-ab} I0(ab)) is cheap and stable.
  //
  // Seed: inverting the leading terms of the Gaussian-limit expansion
  // Q1(nu, nu + c) ~ Phi_c(c) + phi(c)/(2 nu) puts the root near
  // nu + z + 1/(2 nu), z the upper normal quantile of eps; the error is
  // O(1/nu^2), so Newton finishes in two or three steps. Small nu falls
  // back to the exact Rayleigh-limit inverse.
  double x = (nu >= 5.0) ? nu - normal_quantile(eps) + 0.5 / nu
                         : std::sqrt(nu * nu + 2.0 * std::log(1.0 / eps));
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = marcum_q1(nu, x) - eps;
    if (std::fabs(f) <= 5e-12) return p.sigma * x;
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 1e-9) return p.sigma * (0.5 * (lo + hi));

    const double diff = nu - x;
    const double dq = -x * std::exp(-0.5 * diff * diff) *
                      bessel_i0_scaled(nu * x);
    double next = x - f / dq;
    if (!std::isfinite(next) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);
    x = next;
  }
  throw std::runtime_error("solve_r_min: no convergence in 200 iterations");
}

}  // namespace pinchopt::specfun
