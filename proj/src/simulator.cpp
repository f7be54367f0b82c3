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

#include "qsbits/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <memory>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "qsbits/numbers.hpp"

namespace qsbits {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kPivotStream = 0;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, bound) by rejection on a counter-based stream.
std::size_t uniform_below(std::uint64_t seed, std::uint64_t trial, std::uint64_t& counter, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % b;
  for (;;) {
    const std::uint64_t x = stream_word(seed, trial, kPivotStream, counter++);
    if (x < limit) return static_cast<std::size_t>(x % b);
  }
}

unsigned resolve_workers(unsigned workers, std::uint64_t trials) {
  unsigned w = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(1, trials)));
}

}  // namespace

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t x = mix64(seed + kGolden);
  x = mix64(x ^ (trial + 1) * kGolden);
  x = mix64(x ^ (stream + 1) * kGolden * 3);
  return mix64(x ^ (index + 1) * kGolden * 5);
}

BitKey::BitKey(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : seed_(seed), trial_(trial), stream_(stream) {}

BitKey BitKey::from_bits(std::string_view prefix, std::uint64_t seed, std::uint64_t stream) {
  if (prefix.size() > kDepthCap) throw std::invalid_argument("BitKey::from_bits: prefix longer than depth cap");
  BitKey key(seed, ~std::uint64_t{0}, stream);
  const std::size_t words = (prefix.size() + 63) / 64;
  key.prefix_.assign(words, 0);
  key.prefix_mask_.assign(words, 0);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] != '0' && prefix[i] != '1') throw std::invalid_argument("BitKey::from_bits: expected '0' or '1'");
    const std::uint64_t mask = std::uint64_t{1} << (63 - i % 64);
    key.prefix_mask_[i / 64] |= mask;
    if (prefix[i] == '1') key.prefix_[i / 64] |= mask;
  }
  return key;
}

std::uint64_t BitKey::word(std::size_t w) {
  while (words_.size() <= w) {
    const std::size_t idx = words_.size();
    std::uint64_t x = stream_word(seed_, trial_, stream_, idx);
    if (idx < prefix_.size()) x = (x & ~prefix_mask_[idx]) | prefix_[idx];
    words_.push_back(x);
  }
  return words_[w];
}

bool BitKey::bit(std::size_t i) {
  if (i == 0) throw std::invalid_argument("BitKey::bit: bits are 1-based");
  return ((word((i - 1) / 64) >> (63 - (i - 1) % 64)) & 1U) != 0;
}

CompareOutcome compare(BitKey& a, BitKey& b) {
  for (std::size_t w = 0; w < BitKey::kDepthCap / 64; ++w) {
    const std::uint64_t wa = a.word(w);
    const std::uint64_t diff = wa ^ b.word(w);
    if (diff != 0) {
      const auto lead = static_cast<std::size_t>(std::countl_zero(diff));
      const bool a_one = ((wa >> (63 - lead)) & 1U) != 0;
      return {a_one ? Ordering::greater : Ordering::less, 64 * w + lead + 1};
    }
  }
  throw DepthCapError("compare: keys agree on all 4096 bits (substream collision?)");
}

PivotChooser random_pivot(std::uint64_t seed, std::uint64_t trial) {
  auto counter = std::make_shared<std::uint64_t>(0);
  return [seed, trial, counter](std::size_t size, std::size_t) { return uniform_below(seed, trial, *counter, size); };
}

SelectResult quickselect(std::vector<BitKey>& keys, int m, const PivotChooser& choose_pivot,
                         std::vector<ComparisonRecord>* log) {
  if (m < 1 || static_cast<std::size_t>(m) > keys.size()) throw std::invalid_argument("quickselect: rank out of range");
  std::vector<std::size_t> file(keys.size());
  std::iota(file.begin(), file.end(), 0);
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
  SelectResult out;
  std::size_t rank = static_cast<std::size_t>(m);
  for (std::size_t round = 0;; ++round) {
    if (file.size() == 1) {
      out.selected = file[0];
      return out;
    }
    const std::size_t p = choose_pivot(file.size(), round);
    if (p >= file.size()) throw std::out_of_range("quickselect: pivot position out of range");
    const std::size_t pivot = file[p];
    lower.clear();
    upper.clear();
    for (std::size_t idx : file) {
      if (idx == pivot) continue;
      const CompareOutcome c = compare(keys[idx], keys[pivot]);
      out.bit_cost += c.bits_compared;
      ++out.key_cost;
      if (log != nullptr) log->push_back({idx, pivot, c.bits_compared});
      (c.ordering == Ordering::less ? lower : upper).push_back(idx);
    }
    const std::size_t k = lower.size() + 1;
    if (rank == k) {
      out.selected = pivot;
      return out;
    }
    if (rank < k) {
      file.swap(lower);
    } else {
      file.swap(upper);
      rank -= k;
    }
  }
}

void SelectStats::merge(const SelectStats& other) {
  trials += other.trials;
  bit_sum += other.bit_sum;
  bit_sum_sq += other.bit_sum_sq;
  key_sum += other.key_sum;
  key_sum_sq += other.key_sum_sq;
  if (pair_counts.size() < other.pair_counts.size()) pair_counts.resize(other.pair_counts.size(), 0);
  for (std::size_t i = 0; i < other.pair_counts.size(); ++i) pair_counts[i] += other.pair_counts[i];
}

namespace {

double mean_of(std::uint64_t sum, std::uint64_t trials) {
  if (trials == 0) throw std::logic_error("SelectStats: no trials");
  return static_cast<double>(sum) / static_cast<double>(trials);
}

double stderr_of(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t trials) {
  if (trials < 2) throw std::logic_error("SelectStats: standard error needs two trials");
  const double t = static_cast<double>(trials);
  const double mean = static_cast<double>(sum) / t;
  const double var = std::max(0.0, (static_cast<double>(sum_sq) - t * mean * mean) / (t - 1.0));
  return std::sqrt(var / t);
}

}  // namespace

double SelectStats::bit_mean() const { return mean_of(bit_sum, trials); }
double SelectStats::bit_stderr() const { return stderr_of(bit_sum, bit_sum_sq, trials); }
double SelectStats::key_mean() const { return mean_of(key_sum, trials); }
double SelectStats::key_stderr() const { return stderr_of(key_sum, key_sum_sq, trials); }

std::string SelectStats::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["bit_mean"] = bit_mean();
  j["bit_stderr"] = trials > 1 ? bit_stderr() : 0.0;
  j["key_mean"] = key_mean();
  j["key_stderr"] = trials > 1 ? key_stderr() : 0.0;
  return j.dump(2) + "\n";
}

SelectStats monte_carlo(int m, int n, std::uint64_t trials, std::uint64_t seed, const MonteCarloOptions& options) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument("monte_carlo: need 1 <= m <= n");
  if (trials < 1) throw std::invalid_argument("monte_carlo: need at least one trial");
  const auto un = static_cast<std::size_t>(n);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    SelectStats s;
    s.m = m;
    s.n = n;
    s.seed = seed;
    if (options.record_pairs) s.pair_counts.assign(un * un, 0);
    std::vector<BitKey> keys;
    std::vector<ComparisonRecord> log;
    std::vector<std::size_t> rank_of(un);
    std::vector<std::size_t> order(un);
    for (std::uint64_t t = begin; t < end; ++t) {
      keys.clear();
      for (std::size_t i = 0; i < un; ++i) keys.emplace_back(seed, t, i + 1);
      log.clear();
      const SelectResult r = quickselect(keys, m, random_pivot(seed, t), options.record_pairs ? &log : nullptr);
      s.trials += 1;
      s.bit_sum += r.bit_cost;
      s.bit_sum_sq += r.bit_cost * r.bit_cost;
      s.key_sum += r.key_cost;
      s.key_sum_sq += r.key_cost * r.key_cost;
      if (options.record_pairs || options.verify) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
          return compare(keys[x], keys[y]).ordering == Ordering::less;
        });
        for (std::size_t pos = 0; pos < un; ++pos) rank_of[order[pos]] = pos;
        if (options.verify && rank_of[r.selected] + 1 != static_cast<std::size_t>(m)) {
          throw std::logic_error("monte_carlo: quickselect returned the wrong key");
        }
        for (const auto& rec : log) {
          const std::size_t lo = std::min(rank_of[rec.a], rank_of[rec.b]);
          const std::size_t hi = std::max(rank_of[rec.a], rank_of[rec.b]);
          s.pair_counts[lo * un + hi] += 1;
        }
      }
    }
    return s;
  };

  const unsigned workers = resolve_workers(options.workers, trials);
  std::vector<SelectStats> parts(workers);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        parts[w] = run_range(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SelectStats total;
  total.m = m;
  total.n = n;
  total.seed = seed;
  for (const auto& p : parts) total.merge(p);
  return total;
}

Rational expected_key_comparisons(int m, int n) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument("expected_key_comparisons: need 1 <= m <= n");
  const Rational h_n = harmonic(n).h1;
  const Rational h_m = harmonic(m).h1;
  const Rational h_r = harmonic(n + 1 - m).h1;
  return Rational(2) * (Rational(n + 3) + Rational(n + 1) * h_n - Rational(m + 2) * h_m - Rational(n + 3 - m) * h_r);
}

Rational pair_probability(int i, int j, int m) {
  if (i >= j || i < 1) throw std::invalid_argument("pair_probability: need 1 <= i < j");
  if (m <= i) return Rational(2, j - m + 1);
  if (m < j) return Rational(2, j - i + 1);
  return Rational(2, m - i + 1);
}

std::vector<PairFrequency> pair_frequency_check(int m, int n, std::uint64_t trials, std::uint64_t seed,
                                                unsigned workers) {
  if (n < 2 || n > 12) throw std::invalid_argument("pair_frequency_check: need 2 <= n <= 12");
  if (trials < 10000) throw std::invalid_argument("pair_frequency_check: need at least 1e4 trials");
  MonteCarloOptions opts;
  opts.workers = workers;
  opts.record_pairs = true;
  const SelectStats s = monte_carlo(m, n, trials, seed, opts);
  std::vector<PairFrequency> out;
  const double t = static_cast<double>(trials);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double p = pair_probability(i, j, m).to_double();
      const auto count = s.pair_counts[static_cast<std::size_t>((i - 1) * n + (j - 1))];
      out.push_back({i, j, static_cast<double>(count) / t, p, std::sqrt(p * (1.0 - p) / t)});
    }
  }
  return out;
}

}  // namespace qsbits
