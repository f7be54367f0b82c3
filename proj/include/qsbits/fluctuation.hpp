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

#include "qsbits/special.hpp"

namespace qsbits {

/// chi_k = 2 pi i k / ln 2.
Complex chi(int k);

/// zeta(1 - chi_k) for k != 0, served from a read-only table built on first use.
Complex zeta_at_chi(int k);

/// Largest |k| for which zeta_at_chi is tabulated.
inline constexpr int kZetaTableCap = 4096;

struct SeriesOptions {
  /// 0 selects adaptive truncation (doubling K until the estimate is below tol).
  int k_max = 0;
  double tol = 1e-14;
  /// Upper bound on K in adaptive mode.
  int k_cap = 1024;
  /// Add the mean-value estimate of the omitted tail (zeta-weighted series only).
  bool tail_correction = true;
};

struct SeriesValue {
  double value = 0.0;
  /// Imaginary part of the symmetric sum; zero up to rounding.
  double imag_residual = 0.0;
  int k_used = 0;
  /// Estimated absolute error of `value`.
  double tail_estimate = 0.0;
};

/// sum over k in Z \ {0} of w_k * kernel(chi_k), with w_k = zeta(1 - chi_k)
/// for zeta-weighted series and 1 otherwise.
class FluctuationSeries {
 public:
  using Kernel = std::function<Complex(Complex)>;

  FluctuationSeries(Kernel kernel, bool zeta_weighted);

  [[nodiscard]] Complex term(int k) const;
  /// sum over 0 < |k| <= k_max.
  [[nodiscard]] Complex partial_sum(int k_max) const;
  [[nodiscard]] SeriesValue evaluate(const SeriesOptions& options = {}) const;
  [[nodiscard]] bool zeta_weighted() const { return zeta_weighted_; }

 private:
  [[nodiscard]] double tail_mean(int k_from) const;
  [[nodiscard]] SeriesValue truncated(int k_max, bool correct) const;

  Kernel kernel_;
  bool zeta_weighted_;
};

}  // namespace qsbits
