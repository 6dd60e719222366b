// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace pinchopt::specfun {

// Inputs of the coverage-radius inversion: the antenna's ground projection
// sits at horizontal distance l from the estimated user location, the true
// location is an isotropic Gaussian with per-axis std-dev sigma, and the
// outage budget is epsilon.
struct CoverageProblem {
  double l = 0.0;        // meters, >= 0
  double sigma = 1.0;    // meters, > 0
  double epsilon = 0.01; // probability, in (0,1)

  void validate() const;  // throws std::invalid_argument on violation
};

// Modified Bessel function of the first kind, order 0. Result >= 1; grows
// like e^x / sqrt(2 pi x) and overflows to +inf past x ~ 713.
double bessel_i0(double x);

// e^{-x} I0(x). Never overflows; this is the form used inside marcum_q1 and
// the r_min Newton derivative.
double bessel_i0_scaled(double x);

// Marcum Q-function of order 1:
//   Q1(a,b) = integral_b^inf x e^{-(x^2+a^2)/2} I0(a x) dx.
// Absolute error <= 1e-10 over the full nonnegative quadrant; result is
// clamped to [0,1].
double marcum_q1(double a, double b);

// CDF of the noncentral chi-squared distribution with 2 degrees of freedom:
// F(x; 2, lambda) = 1 - Q1(sqrt(lambda), sqrt(x)).
double noncentral_chi2_cdf_2dof(double x, double lambda);

// Probability that the true user position falls inside the ground circle of
// radius r centered on the antenna projection: 1 - Q1(l/sigma, r/sigma).
double coverage_probability(const CoverageProblem& p, double r);

// Smallest radius whose coverage probability reaches 1 - epsilon, i.e. the
// root of Q1(l/sigma, r/sigma) = epsilon. Exit criteria: |Q1 - epsilon| <=
// 5e-12 or bracket width <= 1e-9 sigma, whichever first; hard error after
// 200 iterations. epsilon outside (1e-12, 1 - 1e-12) is rejected.
double solve_r_min(const CoverageProblem& p);

}  // namespace pinchopt::specfun
