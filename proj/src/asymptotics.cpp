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

#include "qsbits/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace qsbits {

namespace {

constexpr double kPiSq6 = 1.64493406684822643647241516664602519;

void require_n(long n, long min, const char* what) {
  if (n < min) throw std::invalid_argument(std::string(what) + ": n too small");
}

double eval(const FluctuationSeries& s) { return s.evaluate().value; }

FluctuationSeries a_series() {
  // zeta Gamma(1-chi) / (Gamma(4-chi) (1-chi))
  return {[](Complex x) { return factorial_gamma_ratio(0, 1.0 - x, 3) / (1.0 - x); }, true};
}

FluctuationSeries a_tilde_series() {
  return {[](Complex x) { return factorial_gamma_ratio(0, 1.0 - x, 3) / (kLn2 * (2.0 - x)); }, true};
}

FluctuationSeries b_series() {
  return {[](Complex x) { return 2.0 * factorial_gamma_ratio(0, -x, 3) / (kLn2 * (1.0 - x)); }, true};
}

FluctuationSeries b_tilde_series() {
  return {[](Complex x) { return factorial_gamma_ratio(0, 1.0 - x, 2) / (kLn2 * (2.0 - x) * (1.0 - x)); }, true};
}

}  // namespace

double harmonic_double(long n) {
  if (n <= 0) return 0.0;
  if (n <= 1000) {
    double h = 0.0;
    for (long k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
    return h;
  }
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2) -
         1.0 / (252.0 * x2 * x2 * x2);
}

double harmonic2_double(long n) {
  if (n <= 0) return 0.0;
  if (n <= 1000) {
    double h = 0.0;
    for (long k = n; k >= 1; --k) h += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    return h;
  }
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  return kPiSq6 - 1.0 / x + 1.0 / (2.0 * x2) - 1.0 / (6.0 * x2 * x) + 1.0 / (30.0 * x2 * x2 * x) -
         1.0 / (42.0 * x2 * x2 * x2 * x);
}

AsymptoticConstants base_constants() {
  AsymptoticConstants k;
  k.a = (28.0 / 9.0 + (17.0 - 6.0 * kEulerGamma) / (9.0 * kLn2)) / 2.0;
  k.a_tilde = 7.0 / (36.0 * kLn2) - 41.0 / 72.0 - kEulerGamma / (12.0 * kLn2);
  return k;
}

AsymptoticConstants asymptotic_constants(const SeriesOptions& options) {
  AsymptoticConstants k = base_constants();
  const SeriesValue sa = a_series().evaluate(options);
  const SeriesValue sat = a_tilde_series().evaluate(options);
  const SeriesValue sb = b_series().evaluate(options);
  const SeriesValue sbt = b_tilde_series().evaluate(options);
  k.a -= 2.0 / kLn2 * sa.value;
  k.a_tilde -= sat.value;
  k.b = sb.value;
  k.b_tilde = sbt.value;
  k.k_used = std::max({sa.k_used, sat.k_used, sb.k_used, sbt.k_used});
  return k;
}

const AsymptoticConstants& asymptotic_constants() {
  static const AsymptoticConstants k = asymptotic_constants(SeriesOptions{});
  return k;
}

double slope_c() { return 2.0 * asymptotic_constants().a; }
double slope_c(const SeriesOptions& options) { return 2.0 * asymptotic_constants(options).a; }

double slope_avg() { return 4.0 * (1.0 + kLn2 - asymptotic_constants().a_tilde); }
double slope_avg(const SeriesOptions& options) {
  return 4.0 * (1.0 + kLn2 - asymptotic_constants(options).a_tilde);
}

FluctuationSeries sigma_series(long n) {
  // zeta Gamma(n+1) Gamma(1-chi) / (ln2 Gamma(n+3-chi))
  return {[n](Complex x) { return factorial_gamma_ratio(n, 1.0 - x, 2) / kLn2; }, true};
}

FluctuationSeries sigma_tilde_series(long n) {
  return {[n](Complex x) { return factorial_gamma_ratio(n, 1.0 - x, 1) / (kLn2 * (1.0 - x)); }, true};
}

FluctuationSeries sigma_tt_series(long n) {
  // zeta Gamma(-chi) Gamma(n+1) / (ln2 (1-chi) Gamma(n+1-chi))
  return {[n](Complex x) { return factorial_gamma_ratio(n, -x, 1) / (kLn2 * (1.0 - x)); }, true};
}

FluctuationSeries xi_tt_series(long n) {
  // zeta Gamma(1-chi) Gamma(n) / (ln2 (2-chi)(1-chi) Gamma(n+1-chi))
  return {[n](Complex x) { return factorial_gamma_ratio(n - 1, 1.0 - x, 1) / (kLn2 * (2.0 - x) * (1.0 - x)); },
          true};
}

FluctuationSeries f5_residue_series(long n) {
  // -n! Gamma(2-chi) / (ln2 chi^2 (1+chi)^2 (1-chi)^2 Gamma(n-chi))
  return {[n](Complex x) {
            const Complex d = x * (1.0 + x) * (1.0 - x);
            return -factorial_gamma_ratio(n, 2.0 - x, -2) / (kLn2 * d * d);
          },
          false};
}

double sigma_tt(long n) { return eval(sigma_tt_series(n)); }

double lemma_v(long n) {
  require_n(n, 2, "lemma_v");
  const double x = static_cast<double>(n);
  const double h = harmonic_double(n + 2);
  return -1.0 / (x + 1.0) + (h / kLn2 - (kEulerGamma / kLn2 - 0.5)) / ((x + 1.0) * (x + 2.0)) -
         eval(sigma_series(n));
}

double lemma_u(long n) {
  require_n(n, 2, "lemma_u");
  const double x = static_cast<double>(n);
  return -harmonic_double(n) + asymptotic_constants().a - harmonic_double(n + 1) / (kLn2 * (x + 1.0)) +
         ((kEulerGamma - 1.0) / kLn2 - 0.5) / (x + 1.0) + eval(sigma_tilde_series(n));
}

double lemma_t(long n) {
  require_n(n, 2, "lemma_t");
  const auto& k = asymptotic_constants();
  const double x = static_cast<double>(n);
  const double h = harmonic_double(n);
  const double h2 = harmonic2_double(n);
  return -(x * h - x - 1.0) + k.a * (x - 2.0) - (h * h + h2 - 3.5) / (2.0 * kLn2) +
         ((kEulerGamma - 1.0) / kLn2 - 0.5) * (h - 1.5) + k.b - sigma_tt(n);
}

double mu1_stable(long n) {
  require_n(n, 1, "mu1_stable");
  if (n == 1) return 0.0;
  const double x = static_cast<double>(n);
  return 2.0 * x * (harmonic_double(n) - 1.0) + 2.0 * lemma_t(n);
}

double f1_closed(long n) {
  require_n(n, 2, "f1_closed");
  const double x = static_cast<double>(n);
  return -0.5 * x * (x - 1.0) * harmonic_double(n - 2) + 1.25 * x * (x - 1.0) - x * harmonic_double(n - 1) - 0.5;
}

double f3_closed(long n) {
  require_n(n, 2, "f3_closed");
  const double x = static_cast<double>(n);
  const double h = harmonic_double(n - 2);
  return x * h - x - h + 2.0;
}

double f4_stable(long n) {
  require_n(n, 3, "f4_stable");
  const auto& k = asymptotic_constants();
  const double x = static_cast<double>(n);
  const double h1 = harmonic_double(n - 1);
  const double e = (3.0 + kLn2 - 2.0 * kEulerGamma) / kLn2;
  return x * h1 / 9.0 + 8.0 * h1 / 9.0 + (k.a_tilde - 1.0 / 9.0) * x - 8.0 / 9.0 - 3.0 / (8.0 * kLn2) - e / 8.0 -
         2.0 * k.a_tilde + k.b_tilde - eval(xi_tt_series(n)) + harmonic_double(n) / (2.0 * kLn2 * x) +
         e / (4.0 * x);
}

double f5_stable(long n) {
  require_n(n, 3, "f5_stable");
  const double x = static_cast<double>(n);
  const double h1 = harmonic_double(n - 1);
  const double bracket = h1 * h1 / (2.0 * kLn2) + (0.5 - 1.0 / kLn2) * h1 + harmonic2_double(n - 1) / (2.0 * kLn2) +
                         2.0 / kLn2 + kLn2 / 12.0 - 0.5;
  return (2.0 * harmonic_double(n) + 3.0 + 4.0 * kLn2) / 4.0 -
         x * (x - 1.0) / 2.0 * (harmonic_double(n - 2) - kLn2 - 3.0) - x * bracket + eval(f5_residue_series(n));
}

double mu_avg_stable(long n) {
  require_n(n, 1, "mu_avg_stable");
  if (n == 1) return 0.0;
  if (n == 2) return 2.0;
  const double x = static_cast<double>(n);
  return 2.0 * (x - 1.0) + 8.0 / x * (f5_stable(n) - f1_closed(n)) + 4.0 / x * lemma_t(n) +
         4.0 / 9.0 * f3_closed(n) - 4.0 * f4_stable(n);
}

double avg_log_coefficient() { return 4.0 * (2.0 * (1.0 - kEulerGamma) / kLn2 - 1.0); }

AsymptoticEstimate mu1_asymptotic(long n) {
  require_n(n, 2, "mu1_asymptotic");
  const double ln = std::log(static_cast<double>(n));
  AsymptoticEstimate e;
  e.n = n;
  e.value = slope_c() * static_cast<double>(n) - ln * ln / kLn2 - (2.0 / kLn2 + 1.0) * ln;
  e.remainder_bound_note = "O(1) remainder with bounded periodic fluctuation; not included";
  return e;
}

AsymptoticEstimate mu_avg_asymptotic(long n) {
  require_n(n, 2, "mu_avg_asymptotic");
  const double ln = std::log(static_cast<double>(n));
  AsymptoticEstimate e;
  e.n = n;
  e.value = slope_avg() * static_cast<double>(n) - 4.0 / kLn2 * ln * ln + avg_log_coefficient() * ln;
  e.remainder_bound_note = "O(1) remainder with bounded periodic fluctuation; not included";
  return e;
}

double fluct_amplitude(const std::function<FluctuationSeries(long)>& series, std::span<const long> n_grid,
                       const SeriesOptions& options) {
  if (n_grid.empty()) throw std::invalid_argument("fluct_amplitude: empty grid");
  double best = 0.0;
  for (long n : n_grid) best = std::max(best, std::abs(series(n).evaluate(options).value));
  return best;
}

}  // namespace qsbits
