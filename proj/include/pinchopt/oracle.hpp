// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

// Reference evaluators used to cross-check the closed-form special-function
// implementations. Everything here goes through adaptive quadrature of the
// defining integrals and deliberately shares no code path with
// pinchopt::specfun, so agreement between the two is meaningful evidence.
namespace pinchopt::oracle {

// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b]. A segment is
// accepted when |K15 - G7| <= max(abs_tol, rel_tol * |K15|), otherwise it is
// bisected with the absolute budget split between the halves.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol);

// I0 via (1/pi) integral_0^pi e^{x cos t} dt, exponentially scaled resp. raw.
double bessel_i0_scaled(double x);
double bessel_i0(double x);

// Q1 via quadrature of x e^{-(x-a)^2/2} * (e^{-ax} I0(ax)) from b upward;
// the integrand past max(a,b) + 34 is below 1e-250 and is dropped.
double marcum_q1(double a, double b);

}  // namespace pinchopt::oracle
