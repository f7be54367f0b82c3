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

#include <functional>
#include <span>
#include <string>

#include "qsbits/fluctuation.hpp"

namespace qsbits {

/// Harmonic numbers in double precision (asymptotic series for n > 1000).
double harmonic_double(long n);
double harmonic2_double(long n);

/// Constants of the bit-comparison asymptotics. `k_used` is the largest k
/// summed in the fluctuation parts (0 when the sums are dropped).
struct AsymptoticConstants {
  double a = 0.0;        // slope of t_n, equals c / 2
  double a_tilde = 0.0;  // enters the averaged slope 4(1 + ln 2 - a_tilde)
  double b = 0.0;        // constant term of t_n
  double b_tilde = 0.0;  // constant term of F4
  int k_used = 0;
};

/// k_max = 0 in `options` means adaptive; use `base_constants()` to drop the sums.
AsymptoticConstants asymptotic_constants(const SeriesOptions& options);
/// Default-option constants, computed once.
const AsymptoticConstants& asymptotic_constants();
/// Closed-form parts only (every fluctuation sum set to zero).
AsymptoticConstants base_constants();

/// Slope c of mu(1,n) ~ c n.
double slope_c();
double slope_c(const SeriesOptions& options);
/// Slope 4(1 + ln 2 - a_tilde) of the rank-averaged cost.
double slope_avg();
double slope_avg(const SeriesOptions& options);

// Fluctuation series parametrised by n (all sums over k != 0).
FluctuationSeries sigma_series(long n);          // enters v_n
FluctuationSeries sigma_tilde_series(long n);    // enters u_n
FluctuationSeries sigma_tt_series(long n);       // enters t_n
FluctuationSeries xi_tt_series(long n);          // enters F4
FluctuationSeries f5_residue_series(long n);     // enters F5

double sigma_tt(long n);

/// Second difference v_n = t_{n+2} - 2 t_{n+1} + t_n, n >= 2.
double lemma_v(long n);
/// First difference u_n = t_{n+1} - t_n, n >= 2.
double lemma_u(long n);
/// t_n without Bernoulli numbers, n >= 2.
double lemma_t(long n);

/// mu(1,n) = 2n(H_n - 1) + 2 t_n, n >= 1.
double mu1_stable(long n);

double f1_closed(long n);
double f3_closed(long n);
/// Floating-point forms of F4 and F5 valid for n >= 3.
double f4_stable(long n);
double f5_stable(long n);
/// Rank-averaged cost from the closed/stable forms of F1..F5, n >= 1.
double mu_avg_stable(long n);

struct AsymptoticEstimate {
  double value = 0.0;
  long n = 0;
  std::string remainder_bound_note;
};

/// Coefficient of ln n in the rank-averaged expansion, 4(2(1 - gamma)/ln 2 - 1).
/// The gamma part comes from the cross term of H_n^2 in F5.
double avg_log_coefficient();

AsymptoticEstimate mu1_asymptotic(long n);
AsymptoticEstimate mu_avg_asymptotic(long n);

/// max over the grid of |series(n)|.
double fluct_amplitude(const std::function<FluctuationSeries(long)>& series, std::span<const long> n_grid,
                       const SeriesOptions& options = {});

}  // namespace qsbits
