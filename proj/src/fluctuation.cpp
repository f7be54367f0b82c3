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

#include "qsbits/fluctuation.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qsbits {

namespace {

// Table of zeta(1 - chi_k), k = 1..size, extended in blocks under a lock.
// Entries never change once written.
class ZetaTable {
 public:
  Complex get(int k) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(values_.size()) < k) {
      const int next = static_cast<int>(values_.size()) + 1;
      values_.push_back(complex_zeta(1.0 - chi(next)));
    }
    return values_[static_cast<std::size_t>(k - 1)];
  }

 private:
  std::mutex mutex_;
  std::vector<Complex> values_;
};

ZetaTable& zeta_table() {
  static ZetaTable table;
  return table;
}

}  // namespace

Complex chi(int k) { return {0.0, 2.0 * kPi * static_cast<double>(k) / kLn2}; }

Complex zeta_at_chi(int k) {
  if (k == 0) throw std::domain_error("zeta_at_chi: k = 0 is the pole");
  const int a = std::abs(k);
  const Complex z = a <= kZetaTableCap ? zeta_table().get(a) : complex_zeta(1.0 - chi(a));
  return k > 0 ? z : std::conj(z);
}

FluctuationSeries::FluctuationSeries(Kernel kernel, bool zeta_weighted)
    : kernel_(std::move(kernel)), zeta_weighted_(zeta_weighted) {}

Complex FluctuationSeries::term(int k) const {
  if (k == 0) throw std::domain_error("FluctuationSeries: k = 0 is excluded");
  const Complex g = kernel_(chi(k));
  return zeta_weighted_ ? zeta_at_chi(k) * g : g;
}

Complex FluctuationSeries::partial_sum(int k_max) const {
  Complex sum(0.0, 0.0);
  for (int k = k_max; k >= 1; --k) sum += term(k) + term(-k);
  return sum;
}

// Mean-value tail: zeta(1 - chi_k) = 2 * (odd-term Dirichlet series), whose
// oscillating part averages out over k, leaving sum_{|k| >= k_from} 2 g(chi_k).
double FluctuationSeries::tail_mean(int k_from) const {
  const int k_to = 16 * k_from;
  double sum = 0.0;
  double last = 0.0;
  for (int k = k_to; k >= k_from; --k) {
    const double pair = 2.0 * (kernel_(chi(k)) + kernel_(chi(-k))).real();
    if (k == k_to) last = pair;
    sum += pair;
  }
  // Beyond k_to the kernels decay at least like k^-4; extend with that rate.
  sum += last * static_cast<double>(k_to) / 3.0;
  return sum;
}

SeriesValue FluctuationSeries::truncated(int k_max, bool correct) const {
  const Complex s = partial_sum(k_max);
  SeriesValue out;
  out.value = s.real();
  out.imag_residual = s.imag();
  out.k_used = k_max;
  if (correct && zeta_weighted_ && k_max > 0) out.value += tail_mean(k_max + 1);
  return out;
}

SeriesValue FluctuationSeries::evaluate(const SeriesOptions& options) const {
  const bool correct = options.tail_correction;
  if (options.k_max > 0) {
    SeriesValue out = truncated(options.k_max, correct);
    const SeriesValue half = truncated(std::max(1, options.k_max / 2), correct);
    out.tail_estimate = std::abs(out.value - half.value);
    return out;
  }
  SeriesValue prev = truncated(8, correct);
  for (int k = 16;; k *= 2) {
    SeriesValue cur = truncated(k, correct);
    cur.tail_estimate = std::abs(cur.value - prev.value);
    if (cur.tail_estimate <= options.tol || 2 * k > options.k_cap) return cur;
    prev = cur;
  }
}

}  // namespace qsbits
