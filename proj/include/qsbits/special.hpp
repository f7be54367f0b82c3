// Copyright 2026 The qsbits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

namespace qsbits {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Principal-branch-continuous log Gamma; throws std::domain_error at poles.
Complex log_gamma(Complex z);
/// Gamma(z); throws std::domain_error at nonpositive integers.
Complex complex_gamma(Complex z);

/// log Gamma(x + w) - log Gamma(x) for large real x (x >= 2|w| + 30),
/// without the cancellation of differencing two large log-Gammas.
Complex log_gamma_shift(double x, Complex w);

/// n! * Gamma(z) / Gamma(z + n + d). Stable for n up to ~1e7 and any z on
/// the fluctuation lines (direct product for small n, Stirling difference otherwise).
Complex factorial_gamma_ratio(long n, Complex z, long d);

/// zeta(s) via the Borwein-accelerated alternating (eta) series, s != 1.
/// At the zeros of 1 - 2^(1-s) the quotient is replaced by its limit
/// eta'(s) / (ln 2 * 2^(1-s)); for |Im s| > 120 Euler-Maclaurin is used.
Complex complex_zeta(Complex s);

/// Independent Euler-Maclaurin evaluation of zeta(s), Re s > -10, s != 1.
Complex zeta_euler_maclaurin(Complex s);

/// Borwein eta(s) and its derivative with `terms` accelerated terms.
Complex eta_borwein(Complex s, int terms);
Complex eta_prime_borwein(Complex s, int terms);

}  // namespace qsbits
