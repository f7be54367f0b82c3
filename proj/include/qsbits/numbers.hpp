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

#include <cstddef>
#include <vector>

#include "qsbits/rational.hpp"

namespace qsbits {

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binom(long n, long k);

/// Bernoulli numbers B_0..B_N with B_1 = +1/2 (so that B_k = -k zeta(1-k)).
/// Built eagerly; read-only afterwards and safe to share across threads.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t max_index);

  [[nodiscard]] std::size_t max_index() const { return values_.size() - 1; }
  [[nodiscard]] const Rational& operator[](std::size_t j) const;

 private:
  std::vector<Rational> values_;
};

/// B_j from `table`; throws std::out_of_range past the table bound.
const Rational& bernoulli(std::size_t j, const BernoulliTable& table);

struct HarmonicPair {
  Rational h1;  // H_n
  Rational h2;  // H_n^(2)
};

HarmonicPair harmonic(long n);

/// Faulhaber coefficient: 1/j for r = 0, 1/2 for r = 1, B_r / r * C(j-1, r-1) for r >= 2.
Rational a_coeff(int j, int r, const BernoulliTable& table);

/// sum_{l=1}^{n} l^(j-1), evaluated through the Faulhaber polynomial.
Rational power_sum(long n, int j, const BernoulliTable& table);

}  // namespace qsbits
