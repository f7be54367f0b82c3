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
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsbits/rational.hpp"

namespace qsbits {

/// Thrown when two keys agree on every bit up to the depth cap.
class DepthCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counter-based 64-bit hash of (seed, trial, stream, index); the basis of
/// every random draw in the simulator.
std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index);

/// A uniform (0,1) key as a lazily materialised stream of fair bits.
/// Bit 1 is the most significant bit after the binary point.
class BitKey {
 public:
  static constexpr std::size_t kDepthCap = 4096;

  BitKey(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);
  /// Fixed leading bits (a string of '0'/'1'), random continuation afterwards.
  static BitKey from_bits(std::string_view prefix, std::uint64_t seed = 0, std::uint64_t stream = 0);

  /// Bits 64w+1 .. 64w+64, most significant first.
  std::uint64_t word(std::size_t w);
  /// Bit i (1-based).
  bool bit(std::size_t i);
  [[nodiscard]] std::size_t materialized_bits() const { return 64 * words_.size(); }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t stream_;
  std::vector<std::uint64_t> prefix_;  // fixed bits, left-aligned per word
  std::vector<std::uint64_t> prefix_mask_;
  std::vector<std::uint64_t> words_;
};

enum class Ordering { less, greater };

struct CompareOutcome {
  Ordering ordering;
  std::size_t bits_compared;  // index of the first differing bit
};

/// Compares a and b bit by bit; throws DepthCapError after kDepthCap equal bits.
CompareOutcome compare(BitKey& a, BitKey& b);

struct SelectResult {
  std::size_t selected = 0;  // index into the input key vector
  std::uint64_t bit_cost = 0;
  std::uint64_t key_cost = 0;
};

/// One logged key comparison, by input index, with its bit cost.
struct ComparisonRecord {
  std::size_t a;
  std::size_t b;
  std::size_t bits;
};

/// Returns a position in [0, size) for the pivot of the `round`-th partitioning step.
using PivotChooser = std::function<std::size_t(std::size_t size, std::size_t round)>;

/// Pivot drawn uniformly from the (seed, trial) pivot substream.
PivotChooser random_pivot(std::uint64_t seed, std::uint64_t trial);

/// Finds the rank-m key (1-based). Each partition compares every other key of
/// the subfile with the pivot once; if the pivot has rank k < m the search
/// continues right of it for rank m - k.
SelectResult quickselect(std::vector<BitKey>& keys, int m, const PivotChooser& choose_pivot,
                         std::vector<ComparisonRecord>* log = nullptr);

struct SelectStats {
  int m = 1;
  int n = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t bit_sum = 0;
  std::uint64_t bit_sum_sq = 0;
  std::uint64_t key_sum = 0;
  std::uint64_t key_sum_sq = 0;
  /// pair_counts[(i-1)*n + (j-1)]: trials in which ranks i < j were compared.
  std::vector<std::uint64_t> pair_counts;

  void merge(const SelectStats& other);
  [[nodiscard]] double bit_mean() const;
  [[nodiscard]] double bit_stderr() const;
  [[nodiscard]] double key_mean() const;
  [[nodiscard]] double key_stderr() const;
  /// {m, n, trials, seed, bit_mean, bit_stderr, key_mean, key_stderr}
  [[nodiscard]] std::string to_json() const;
};

struct MonteCarloOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  bool record_pairs = false;
  /// Check every trial's answer against a full sort (slow; for tests).
  bool verify = false;
};

/// Identical results for identical (m, n, trials, seed), whatever the worker count.
SelectStats monte_carlo(int m, int n, std::uint64_t trials, std::uint64_t seed, const MonteCarloOptions& options = {});

/// Expected key comparisons 2[n+3+(n+1)H_n-(m+2)H_m-(n+3-m)H_{n+1-m}].
Rational expected_key_comparisons(int m, int n);

/// Probability that ranks i < j are compared while selecting rank m.
Rational pair_probability(int i, int j, int m);

struct PairFrequency {
  int i;
  int j;
  double empirical;
  double theoretical;
  double std_error;  // binomial standard error at the theoretical probability
};

std::vector<PairFrequency> pair_frequency_check(int m, int n, std::uint64_t trials, std::uint64_t seed,
                                                unsigned workers = 0);

}  // namespace qsbits
