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

#include "qsbits/numbers.hpp"

#include <stdexcept>
#include <string>

namespace qsbits {

BigInt binom(long n, long k) {
  if (n < 0) throw std::invalid_argument("binom: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (long i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;  // exact: out is C(n-k+i, i) after this step
  }
  return out;
}

BernoulliTable::BernoulliTable(std::size_t max_index) {
  values_.reserve(max_index + 1);
  values_.emplace_back(1);
  // Standard recurrence sum_{k=0}^{m} C(m+1,k) B_k = 0 yields B_1 = -1/2;
  // the sign of B_1 is flipped once the table is complete.
  for (std::size_t m = 1; m <= max_index; ++m) {
    if (m > 1 && m % 2 == 1) {
      values_.emplace_back(0);
      continue;
    }
    Rational acc;
    for (std::size_t k = 0; k < m; ++k) {
      if (values_[k].is_zero()) continue;
      acc += Rational(binom(static_cast<long>(m + 1), static_cast<long>(k))) * values_[k];
    }
    values_.push_back(-acc / Rational(static_cast<std::int64_t>(m + 1)));
  }
  if (max_index >= 1) values_[1] = Rational(1, 2);
}

const Rational& BernoulliTable::operator[](std::size_t j) const {
  if (j >= values_.size()) {
    throw std::out_of_range("BernoulliTable: index " + std::to_string(j) + " beyond table bound " +
                            std::to_string(max_index()));
  }
  return values_[j];
}

const Rational& bernoulli(std::size_t j, const BernoulliTable& table) { return table[j]; }

HarmonicPair harmonic(long n) {
  if (n < 0) throw std::invalid_argument("harmonic: negative n");
  HarmonicPair out{Rational(0), Rational(0)};
  for (long i = 1; i <= n; ++i) {
    out.h1 += Rational(1, i);
    out.h2 += Rational(BigInt(1), BigInt(i) * i);
  }
  return out;
}

Rational a_coeff(int j, int r, const BernoulliTable& table) {
  if (j < 1 || r < 0 || r > j - 1) {
    throw std::invalid_argument("a_coeff: need j >= 1 and 0 <= r <= j-1 (j=" + std::to_string(j) +
                                ", r=" + std::to_string(r) + ")");
  }
  if (r == 0) return Rational(1, j);
  if (r == 1) return Rational(1, 2);
  return table[static_cast<std::size_t>(r)] / Rational(r) * Rational(binom(j - 1, r - 1));
}

Rational power_sum(long n, int j, const BernoulliTable& table) {
  if (n < 0 || j < 1) throw std::invalid_argument("power_sum: need n >= 0 and j >= 1");
  Rational out;
  const Rational base(n);
  for (int r = 0; r <= j - 1; ++r) {
    out += a_coeff(j, r, table) * base.pow(static_cast<unsigned>(j - r));
  }
  return out;
}

}  // namespace qsbits
