// Copyright 2026 The nball Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Special functions used by the closed-form distance distributions.
//
// Everything here is self-contained (no libm special functions beyond
// exp/log/pow) so the analytic formulas can be cross-checked against
// independent library implementations in the tests.

namespace nball::specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 607/128, 15 terms).
double log_gamma(double x);

/// Gamma(x) for any x that is not a nonpositive integer (reflection below 0.5).
double gamma(double x);

/// B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), p, q > 0.
double beta(double p, double q);

/// Unregularized lower incomplete beta B_x(p, q) = int_0^x t^(p-1) (1-t)^(q-1) dt.
///
/// Continued fraction (modified Lentz) below x = (p+1)/(p+q+2); above it the
/// reflection B_x(p,q) = B(p,q) - B_{1-x}(q,p) is used.
double incomplete_beta(double x, double p, double q);

/// Regularized I_x(p, q) = B_x(p, q) / B(p, q).
double regularized_incomplete_beta(double x, double p, double q);

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^-t dt for a >= 0,
/// x > 0. a == 0 is the exponential integral E1(x).
double upper_incomplete_gamma(double a, double x);

/// Exponential integral E1(x), x > 0: series for x <= 1, continued fraction above.
double expint_e1(double x);

/// 2F1(a, b; c; z) restricted to the distance-distribution family
/// a = 1/2, b = 1/2 - n/2 (n >= 1 integer), c = 3/2, 0 <= z <= 1.
/// Any other parameter set raises DomainError.
double gauss_2f1(double a, double b, double c, double z);

/// Number of series terms a terminating 2F1 (b a nonpositive integer) uses: 1 - b.
int gauss_2f1_terms(double b);

/// ln(n!!) for integer n >= -1 (with 0!! = (-1)!! = 1).
double log_double_factorial(int n);

/// ln C(n, k).
double log_binomial(int n, int k);

}  // namespace nball::specfun
