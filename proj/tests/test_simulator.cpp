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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "qsbits/exact_mu.hpp"
#include "qsbits/simulator.hpp"

using qsbits::BitKey;
using qsbits::Ordering;
using qsbits::Rational;

TEST_CASE("compare: the three-key example keys") {
  BitKey k1 = BitKey::from_bits("01001100");
  BitKey k2 = BitKey::from_bits("00110101");
  BitKey k3 = BitKey::from_bits("00101010");
  auto c = qsbits::compare(k1, k3);
  CHECK(c.ordering == Ordering::greater);
  CHECK(c.bits_compared == 2);
  c = qsbits::compare(k2, k3);
  CHECK(c.ordering == Ordering::greater);
  CHECK(c.bits_compared == 4);
  c = qsbits::compare(k3, k2);
  CHECK(c.ordering == Ordering::less);
  CHECK(c.bits_compared == 4);
}

TEST_CASE("compare: symmetry and agreement with bit-by-bit scan") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    BitKey a(9, t, 1);
    BitKey b(9, t, 2);
    const auto ab = qsbits::compare(a, b);
    const auto ba = qsbits::compare(b, a);
    CHECK(ab.bits_compared == ba.bits_compared);
    CHECK(ab.ordering != ba.ordering);
    std::size_t i = 1;
    while (a.bit(i) == b.bit(i)) ++i;
    CHECK(i == ab.bits_compared);
    CHECK((ab.ordering == Ordering::greater) == a.bit(i));
  }
}

TEST_CASE("prefix keys continue beyond their fixed bits") {
  BitKey a = BitKey::from_bits("1011");
  BitKey b = BitKey::from_bits("1011", 0, 7);
  CHECK(a.bit(1));
  CHECK_FALSE(a.bit(2));
  CHECK(a.bit(4));
  const auto c = qsbits::compare(a, b);
  CHECK(c.bits_compared > 4);
  CHECK_THROWS(BitKey::from_bits("10x"));
  CHECK_THROWS(a.bit(0));
}

TEST_CASE("bits are fixed once generated") {
  BitKey a(3, 4, 5);
  std::vector<bool> first;
  for (std::size_t i = 1; i <= 70; ++i) first.push_back(a.bit(i));
  (void)a.bit(700);
  CHECK(a.materialized_bits() >= 700);
  for (std::size_t i = 1; i <= 70; ++i) CHECK(a.bit(i) == first[i - 1]);
  BitKey again(3, 4, 5);
  for (std::size_t i = 1; i <= 70; ++i) CHECK(again.bit(i) == first[i - 1]);
}

TEST_CASE("identical streams hit the depth cap") {
  BitKey a(1, 2, 3);
  BitKey b(1, 2, 3);
  CHECK_THROWS_AS(qsbits::compare(a, b), qsbits::DepthCapError);
}

TEST_CASE("quickselect: deterministic three-key scenario") {
  std::vector<BitKey> keys{BitKey::from_bits("01001100"), BitKey::from_bits("00110101"),
                           BitKey::from_bits("00101010")};
  std::vector<qsbits::ComparisonRecord> log;
  const auto r = qsbits::quickselect(keys, 1, [](std::size_t size, std::size_t) { return size - 1; }, &log);
  CHECK(r.bit_cost == 6);
  CHECK(r.key_cost == 2);
  CHECK(r.selected == 2);
  REQUIRE(log.size() == 2);
  CHECK(log[0].bits + log[1].bits == 6);
}

TEST_CASE("quickselect: small cases and errors") {
  std::vector<BitKey> one{BitKey(0, 0, 1)};
  const auto r1 = qsbits::quickselect(one, 1, qsbits::random_pivot(0, 0));
  CHECK(r1.bit_cost == 0);
  CHECK(r1.key_cost == 0);
  std::vector<BitKey> two{BitKey(0, 0, 1), BitKey(0, 0, 2)};
  CHECK(qsbits::quickselect(two, 1, qsbits::random_pivot(0, 0)).key_cost == 1);
  CHECK_THROWS(qsbits::quickselect(two, 0, qsbits::random_pivot(0, 0)));
  CHECK_THROWS(qsbits::quickselect(two, 3, qsbits::random_pivot(0, 0)));
}

TEST_CASE("quickselect: correct key, cost bookkeeping, rank on the right side") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(t % 13);
    for (int m = 1; m <= n; ++m) {
      std::vector<BitKey> keys;
      for (int i = 0; i < n; ++i) keys.emplace_back(77, t, static_cast<std::uint64_t>(i + 1));
      std::vector<qsbits::ComparisonRecord> log;
      const auto r = qsbits::quickselect(keys, m, qsbits::random_pivot(77, t * 100 + m), &log);
      std::size_t below = 0;
      for (int i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(i) == r.selected) continue;
        if (qsbits::compare(keys[i], keys[r.selected]).ordering == Ordering::less) ++below;
      }
      CHECK(below + 1 == static_cast<std::size_t>(m));
      std::uint64_t bits = 0;
      for (const auto& rec : log) bits += rec.bits;
      CHECK(bits == r.bit_cost);
      CHECK(log.size() == r.key_cost);
    }
  }
}

TEST_CASE("monte carlo: verification mode, determinism across workers") {
  qsbits::MonteCarloOptions opts;
  opts.workers = 1;
  opts.verify = true;
  const auto a = qsbits::monte_carlo(3, 9, 3000, 42, opts);
  opts.workers = 7;
  opts.verify = false;
  const auto b = qsbits::monte_carlo(3, 9, 3000, 42, opts);
  CHECK(a.bit_sum == b.bit_sum);
  CHECK(a.bit_sum_sq == b.bit_sum_sq);
  CHECK(a.key_sum == b.key_sum);
  CHECK(a.key_sum_sq == b.key_sum_sq);
  CHECK(a.to_json() == b.to_json());
  const auto c = qsbits::monte_carlo(3, 9, 3000, 43, opts);
  CHECK(c.bit_sum != a.bit_sum);
  CHECK_THROWS(qsbits::monte_carlo(0, 5, 10, 0));
  CHECK_THROWS(qsbits::monte_carlo(1, 5, 0, 0));
}

TEST_CASE("monte carlo: statistics and JSON schema") {
  const auto s = qsbits::monte_carlo(4, 8, 20000, 1);
  CHECK(s.trials == 20000);
  CHECK(s.bit_stderr() > 0.0);
  const double exact = qsbits::mu_general_exact(4, 8).value.to_double();
  CHECK(std::abs(s.bit_mean() - exact) <= 4.0 * s.bit_stderr());
  const double keys = qsbits::expected_key_comparisons(4, 8).to_double();
  CHECK(std::abs(s.key_mean() - keys) <= 4.0 * s.key_stderr());
  const auto j = nlohmann::json::parse(s.to_json());
  const std::vector<std::string> expected = {"m",        "n",          "trials",   "seed",
                                             "bit_mean", "bit_stderr", "key_mean", "key_stderr"};
  std::vector<std::string> keys_seen;
  for (auto it = j.begin(); it != j.end(); ++it) keys_seen.push_back(it.key());
  std::sort(keys_seen.begin(), keys_seen.end());
  auto sorted = expected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(keys_seen == sorted);
  CHECK(j["trials"].get<std::uint64_t>() == 20000);
  qsbits::SelectStats empty;
  CHECK_THROWS((void)empty.bit_mean());
}

TEST_CASE("n = 2 costs: one key comparison, two bits on average") {
  const auto s = qsbits::monte_carlo(1, 2, 50000, 3);
  CHECK(s.key_mean() == 1.0);
  CHECK(s.key_stderr() == 0.0);
  CHECK(std::abs(s.bit_mean() - 2.0) <= 4.0 * s.bit_stderr());
}

TEST_CASE("expected key comparisons") {
  CHECK(qsbits::expected_key_comparisons(1, 1) == Rational(0));
  CHECK(qsbits::expected_key_comparisons(1, 2) == Rational(1));
  CHECK(qsbits::expected_key_comparisons(1, 3) == Rational(7, 3));
  // equals the sum of the pair comparison probabilities
  for (int n = 2; n <= 10; ++n) {
    for (int m = 1; m <= n; ++m) {
      Rational s(0);
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) s += qsbits::pair_probability(i, j, m);
      }
      CHECK(s == qsbits::expected_key_comparisons(m, n));
    }
  }
}

TEST_CASE("pair comparison probabilities") {
  CHECK(qsbits::pair_probability(2, 3, 1) == Rational(2, 3));
  CHECK(qsbits::pair_probability(1, 3, 2) == Rational(2, 3));
  CHECK(qsbits::pair_probability(1, 2, 3) == Rational(2, 3));
  CHECK(qsbits::pair_probability(2, 3, 2) == Rational(1));
  CHECK_THROWS(qsbits::pair_probability(3, 2, 1));
  const auto rows = qsbits::pair_frequency_check(2, 5, 40000, 11);
  CHECK(rows.size() == 10);
  for (const auto& r : rows) {
    if (r.std_error == 0.0) {
      CHECK(r.empirical == r.theoretical);
    } else {
      CHECK(std::abs(r.empirical - r.theoretical) <= 5.0 * r.std_error);
    }
  }
  CHECK_THROWS(qsbits::pair_frequency_check(2, 13, 20000, 0));
  CHECK_THROWS(qsbits::pair_frequency_check(2, 5, 100, 0));
}
