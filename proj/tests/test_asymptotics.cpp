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

#include "doctest.h"
#include <chrono>
#include <cmath>
#include <vector>

#include "qsbits/asymptotics.hpp"
#include "qsbits/exact_mu.hpp"

using qsbits::kEulerGamma;
using qsbits::kLn2;

TEST_CASE("slope constants") {
  CHECK(std::abs(qsbits::slope_c() - 5.27938) <= 5e-5);
  CHECK(std::abs(qsbits::slope_avg() - 8.20731) <= 5e-5);
  CHECK(qsbits::slope_c() == doctest::Approx(2.0 * qsbits::asymptotic_constants().a).epsilon(1e-15));
  const double a_tilde = qsbits::asymptotic_constants().a_tilde;
  CHECK(qsbits::slope_avg() == doctest::Approx(4.0 * (1.0 + kLn2) - 4.0 * a_tilde).epsilon(1e-15));
}

TEST_CASE("base constants without fluctuation sums") {
  const auto base = qsbits::base_constants();
  CHECK(2.0 * base.a == doctest::Approx(28.0 / 9.0 + (17.0 - 6.0 * kEulerGamma) / (9.0 * kLn2)).epsilon(1e-15));
  CHECK(base.k_used == 0);
  const double avg_base = 4.0 * (1.0 + kLn2 - base.a_tilde);
  const double diff_c = std::abs(2.0 * base.a - qsbits::slope_c());
  const double diff_avg = std::abs(avg_base - qsbits::slope_avg());
  CHECK(diff_c < 0.01);
  CHECK(diff_avg < 0.01);
  CHECK(diff_c > 1e-4);  // the sums are small but not negligible at 5 digits
}

TEST_CASE("fluctuation terms come in conjugate pairs") {
  const std::vector<qsbits::FluctuationSeries> all = {
      qsbits::sigma_series(5),   qsbits::sigma_tilde_series(5), qsbits::sigma_tt_series(5),
      qsbits::xi_tt_series(5),   qsbits::f5_residue_series(5),  qsbits::sigma_tt_series(300)};
  for (const auto& s : all) {
    for (int k = 1; k <= 20; ++k) {
      const auto t = s.term(k);
      CHECK(std::abs(s.term(-k) - std::conj(t)) <= 1e-15 * std::abs(t) + 1e-300);
    }
    CHECK(std::abs(s.partial_sum(50).imag()) < 1e-12);
    CHECK(std::abs(s.evaluate().imag_residual) < 1e-12);
  }
}

TEST_CASE("zeta-weighted constant series decay like k^-4") {
  // The Gamma ratios in these kernels are rational functions of chi, so the
  // truncation error of a plain K-term sum is polynomial in 1/K.
  const auto s = qsbits::sigma_tt_series(2);
  const double r = std::abs(s.term(40)) / std::abs(s.term(80));
  CHECK(r == doctest::Approx(16.0).epsilon(0.3));
  qsbits::SeriesOptions five;
  five.k_max = 5;
  five.tail_correction = false;
  qsbits::SeriesOptions ten = five;
  ten.k_max = 10;
  CHECK(std::abs(qsbits::slope_c(five) - qsbits::slope_c(ten)) > 1e-7);
}

TEST_CASE("tail-corrected truncation is stable") {
  qsbits::SeriesOptions deep;
  deep.k_max = 1000;
  CHECK(std::abs(qsbits::slope_c() - qsbits::slope_c(deep)) < 1e-11);
  CHECK(std::abs(qsbits::slope_avg() - qsbits::slope_avg(deep)) < 1e-11);
  qsbits::SeriesOptions k200;
  k200.k_max = 200;
  CHECK(std::abs(qsbits::slope_c(k200) - qsbits::slope_c(deep)) < 1e-11);
  // Without the correction the same K is far less accurate.
  k200.tail_correction = false;
  CHECK(std::abs(qsbits::slope_c(k200) - qsbits::slope_c(deep)) > 1e-11);
}

TEST_CASE("lemma_t matches the Bernoulli sum") {
  CHECK(std::abs(qsbits::lemma_t(2)) < 1e-10);
  CHECK(qsbits::lemma_t(3) == doctest::Approx(-1.0 / 9.0).epsilon(1e-10));
  for (int n = 2; n <= 60; ++n) {
    const double exact = qsbits::t_direct(n).to_double();
    CAPTURE(n);
    CHECK(std::abs(qsbits::lemma_t(n) - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
  }
  CHECK_THROWS(qsbits::lemma_t(1));
}

TEST_CASE("lemma_v is the second difference of t_n, with -1/(n+1)") {
  for (int n = 2; n <= 40; ++n) {
    const qsbits::Rational second = qsbits::t_direct(n + 2) - qsbits::Rational(2) * qsbits::t_direct(n + 1) +
                                    qsbits::t_direct(n);
    CAPTURE(n);
    CHECK(std::abs(qsbits::lemma_v(n) - second.to_double()) <= 1e-10);
    // The opposite sign on the 1/(n+1) term would be off by 2/(n+1).
    CHECK(std::abs(qsbits::lemma_v(n) + 2.0 / (n + 1.0) - second.to_double()) > 1e-3);
  }
  CHECK(qsbits::lemma_v(2) == doctest::Approx(-1.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("lemma_u is the first difference of t_n") {
  for (int n = 2; n <= 40; ++n) {
    const double first = (qsbits::t_direct(n + 1) - qsbits::t_direct(n)).to_double();
    CHECK(std::abs(qsbits::lemma_u(n) - first) <= 1e-10 * std::max(1.0, std::abs(first)));
  }
}

TEST_CASE("mu1_stable") {
  CHECK(qsbits::mu1_stable(1) == 0.0);
  CHECK(qsbits::mu1_stable(3) == doctest::Approx(43.0 / 9.0).epsilon(1e-9));
  const double exact = qsbits::mu1_exact(100).value.to_double();
  CHECK(std::abs(qsbits::mu1_stable(100) - exact) <= 1e-9 * exact);
  const double big = qsbits::mu1_stable(1000000);
  CHECK(std::isfinite(big));
  CHECK(big / 1e6 == doctest::Approx(qsbits::slope_c()).epsilon(1e-3));
}

TEST_CASE("harmonic numbers in double precision") {
  double h = 0.0;
  double h2 = 0.0;
  for (long k = 1; k <= 3000; ++k) {
    h += 1.0 / static_cast<double>(k);
    h2 += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    if (k >= 990 && k <= 1010) {
      CHECK(qsbits::harmonic_double(k) == doctest::Approx(h).epsilon(1e-14));
      CHECK(qsbits::harmonic2_double(k) == doctest::Approx(h2).epsilon(1e-14));
    }
  }
  CHECK(qsbits::harmonic_double(3000) == doctest::Approx(h).epsilon(1e-14));
}

TEST_CASE("stable F4, F5 and the averaged cost agree with the exact rationals") {
  for (int n : {3, 4, 5, 7, 10, 20, 50, 100, 200}) {
    const auto f = qsbits::f_terms(n);
    CAPTURE(n);
    CHECK(qsbits::f4_stable(n) == doctest::Approx(f.f4.to_double()).epsilon(1e-9));
    CHECK(qsbits::f5_stable(n) == doctest::Approx(f.f5.to_double()).epsilon(1e-9));
    CHECK(qsbits::f1_closed(n) == doctest::Approx(f.f1.to_double()).epsilon(1e-12));
    CHECK(qsbits::f3_closed(n) == doctest::Approx(f.f3.to_double()).epsilon(1e-12));
  }
  for (int n = 1; n <= 30; ++n) {
    CHECK(qsbits::mu_avg_stable(n) == doctest::Approx(qsbits::mu_avg_exact(n).value.to_double()).epsilon(1e-10));
  }
}

TEST_CASE("expansions: remainders bounded and non-growing") {
  CHECK(std::abs(qsbits::mu1_exact(1024).value.to_double() - qsbits::mu1_asymptotic(1024).value) < 10.0);
  CHECK(std::isfinite(qsbits::mu1_asymptotic(2).value));
  CHECK(std::isfinite(qsbits::mu_avg_asymptotic(2).value));
  CHECK(qsbits::mu1_asymptotic(8).n == 8);
  CHECK_FALSE(qsbits::mu1_asymptotic(8).remainder_bound_note.empty());
  double prev1 = 0.0;
  double prev_avg = 0.0;
  for (long n = 1024; n <= 16384; n *= 2) {
    const double r1 = std::abs(qsbits::mu1_stable(n) - qsbits::mu1_asymptotic(n).value);
    const double ravg = std::abs(qsbits::mu_avg_stable(n) - qsbits::mu_avg_asymptotic(n).value);
    CHECK(r1 < 10.0);
    CHECK(ravg < 20.0);
    if (n > 1024) {
      CHECK(r1 <= prev1 + 0.05);
      CHECK(ravg <= prev_avg + 0.05);
    }
    prev1 = r1;
    prev_avg = ravg;
  }
}

TEST_CASE("averaged expansion: ln n coefficient") {
  CHECK(qsbits::avg_log_coefficient() ==
        doctest::Approx(4.0 * (2.0 / kLn2 - 1.0) - 8.0 * kEulerGamma / kLn2).epsilon(1e-15));
  // Against the exact rationals the remainder of the expansion with the
  // coefficient 4(2/ln2 - 1) drifts by -8 gamma per doubling of n.
  auto displayed = [](long n) {
    const double ln = std::log(static_cast<double>(n));
    return qsbits::slope_avg() * static_cast<double>(n) - 4.0 / kLn2 * ln * ln + 4.0 * (2.0 / kLn2 - 1.0) * ln;
  };
  const double r256 = qsbits::mu_avg_exact(256).value.to_double() - displayed(256);
  const double r512 = qsbits::mu_avg_exact(512).value.to_double() - displayed(512);
  CHECK(r512 - r256 == doctest::Approx(-8.0 * kEulerGamma).epsilon(0.05));
  const double c256 = qsbits::mu_avg_exact(256).value.to_double() - qsbits::mu_avg_asymptotic(256).value;
  const double c512 = qsbits::mu_avg_exact(512).value.to_double() - qsbits::mu_avg_asymptotic(512).value;
  CHECK(std::abs(c512 - c256) < 0.2);
}

TEST_CASE("fluctuation amplitude") {
  std::vector<long> grid;
  for (double x = 2.0; x <= 1e4; x *= 1.1) grid.push_back(std::lround(x));
  const double amp = qsbits::fluct_amplitude(qsbits::sigma_tt_series, grid);
  CHECK(amp < 0.00110);
  CHECK(amp > 0.0005);
  const std::vector<long> one = {37};
  CHECK(qsbits::fluct_amplitude(qsbits::sigma_tt_series, one) == std::abs(qsbits::sigma_tt(37)));
  CHECK(std::abs(qsbits::sigma_tt(37) - qsbits::sigma_tt_series(37).partial_sum(1024).real()) < 1e-12);
  CHECK_THROWS(qsbits::fluct_amplitude(qsbits::sigma_tt_series, std::vector<long>{}));
}

TEST_CASE("constants are fast") {
  const auto t0 = std::chrono::steady_clock::now();
  qsbits::SeriesOptions opts;
  (void)qsbits::asymptotic_constants(opts);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
}
