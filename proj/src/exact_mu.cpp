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

#include "qsbits/exact_mu.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"

namespace qsbits {

namespace {

// 1 / (1 - 2^-j) = 2^j / (2^j - 1)
Rational inv_one_minus_pow2(int j) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned>(j));
  return Rational(p, p - 1);
}

Rational alternating(int j) { return Rational(j % 2 == 0 ? 1 : -1); }

void require_n(int n, int min_n, const char* what) {
  if (n < min_n) {
    throw std::invalid_argument(std::string(what) + ": need n >= " + std::to_string(min_n) +
                                " (got " + std::to_string(n) + ")");
  }
}

std::size_t bernoulli_bound(int n) { return static_cast<std::size_t>(std::max(n, 2)); }

}  // namespace

const char* to_string(MuKind kind) {
  switch (kind) {
    case MuKind::smallest:
      return "smallest";
    case MuKind::average:
      return "average";
    case MuKind::general:
      return "general";
  }
  return "general";
}

Rational t_direct(int n, const BernoulliTable& table) {
  require_n(n, 2, "t_direct");
  Rational out;
  for (int j = 2; j <= n - 1; j += 2) {  // odd-index Bernoulli numbers beyond B_1 vanish
    const Rational bracket = Rational(BigInt(n - j + 1) - binom(n, j));
    out += table[static_cast<std::size_t>(j)] * bracket / Rational(static_cast<std::int64_t>(j) * (j - 1)) *
           inv_one_minus_pow2(j);
  }
  return out;
}

Rational t_direct(int n) { return t_direct(n, BernoulliTable(bernoulli_bound(n))); }

MuValue mu1_exact(int n, const BernoulliTable& table) {
  require_n(n, 1, "mu1_exact");
  MuValue out{Rational(0), 1, n, MuKind::smallest};
  if (n == 1) return out;
  const HarmonicPair h = harmonic(n);
  out.value = Rational(2 * n) * (h.h1 - Rational(1)) + Rational(2) * t_direct(n, table);
  return out;
}

MuValue mu1_exact(int n) { return mu1_exact(n, BernoulliTable(bernoulli_bound(n))); }

Rational f1_sum(int n) {
  require_n(n, 2, "f1_sum");
  Rational out;
  for (int j = 3; j <= n; ++j) {
    out += alternating(j) * Rational(binom(n, j)) / Rational(static_cast<std::int64_t>(j - 1) * (j - 2));
  }
  return out;
}

Rational f3_sum(int n) {
  require_n(n, 2, "f3_sum");
  Rational out;
  for (int j = 2; j <= n - 1; ++j) {
    out += alternating(j) * Rational(binom(n - 1, j)) / Rational(j - 1);
  }
  return out;
}

FTerms f_terms(int n, const BernoulliTable& table) {
  require_n(n, 2, "f_terms");
  FTerms out;
  out.f1 = f1_sum(n);
  out.f2 = t_direct(n, table);
  out.f3 = f3_sum(n);
  for (int j = 4; j <= n - 1; j += 2) {  // j = 3 carries B_3 = 0
    const Rational bracket =
        Rational(BigInt(n - 1) - binom(n - 1, j - 1), BigInt(j - 2)) - Rational(1);
    out.f4 += table[static_cast<std::size_t>(j)] / Rational(static_cast<std::int64_t>(j) * (j - 1)) *
              inv_one_minus_pow2(j) * bracket;
  }
  for (int j = 3; j <= n; ++j) {
    out.f5 += alternating(j) * Rational(binom(n, j)) /
              Rational(static_cast<std::int64_t>(j) * (j - 1) * (j - 2)) * inv_one_minus_pow2(j - 1);
  }
  return out;
}

FTerms f_terms(int n) { return f_terms(n, BernoulliTable(bernoulli_bound(n))); }

MuValue mu_avg_exact(int n, const BernoulliTable& table) {
  require_n(n, 1, "mu_avg_exact");
  MuValue out{Rational(0), 0, n, MuKind::average};
  if (n == 1) return out;
  const FTerms f = f_terms(n, table);
  const Rational inv_n(1, n);
  out.value = Rational(2 * (n - 1)) - Rational(8) * inv_n * f.f1 + Rational(4) * inv_n * f.f2 +
              Rational(4, 9) * f.f3 - Rational(4) * f.f4 + Rational(8) * inv_n * f.f5;
  return out;
}

MuValue mu_avg_exact(int n) { return mu_avg_exact(n, BernoulliTable(bernoulli_bound(n))); }

// ---------------------------------------------------------------------------

Rational c4_coeff(int f, int h, int j) {
  if (f < 0 || h < 0 || j < 1 || j > f + h + 1) return Rational(0);
  Rational sum;
  const int lo = std::max(0, j - 1 - h);
  const int hi = std::min(j - 1, f);
  for (int jp = lo; jp <= hi; ++jp) {
    sum += Rational(binom(f + 1, jp) * binom(h + 1, j - 1 - jp)) *
           (Rational(1) - Rational::pow2_neg(f + 1 - jp)) * Rational::pow2_neg(jp);
  }
  const Rational sign((f + h - j + 1) % 2 == 0 ? 1 : -1);
  return sign * Rational::pow2_neg(h - j + 2) * sum;
}

const Rational& CascadeMemo::c4(int f, int h, int j) {
  const auto key = std::make_tuple(f, h, j);
  auto it = c4_.find(key);
  if (it == c4_.end()) it = c4_.emplace(key, c4_coeff(f, h, j)).first;
  return it->second;
}

const Rational& CascadeMemo::grouped(int f, int h, int a) {
  const auto key = std::make_tuple(f, h, a);
  auto it = grouped_.find(key);
  if (it != grouped_.end()) return it->second;
  Rational sum;
  const int top = f + h + 1;
  if (a >= 1 && a <= top) {
    for (int j = std::max(1, f + h + 2 - a); j <= top; ++j) {
      const int r = a + j - (f + h + 2);
      sum += c4(f, h, j) * a_coeff(j, r, *table_);
    }
  }
  return grouped_.emplace(key, std::move(sum)).first->second;
}

CascadeContext::CascadeContext(int m, int n, CascadeCase which, CascadeMemo& memo, CascadeOptions options)
    : m_(m), n_(n), case_(which), options_(options), memo_(&memo) {
  if (n < 1 || m < 1 || m > n) {
    throw std::invalid_argument("CascadeContext: need 1 <= m <= n (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (n < 2) return;

  // Integer arithmetic throughout: weights 2/d are scaled by lcm(1..n).
  BigInt lcm = 1;
  for (int d = 2; d <= n; ++d) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(d));

  std::vector<std::vector<BigInt>> pascal(static_cast<std::size_t>(n + 1));
  for (int a = 0; a <= n; ++a) {
    pascal[a].resize(static_cast<std::size_t>(a + 1));
    pascal[a][0] = pascal[a][a] = 1;
    for (int b = 1; b < a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + pascal[a - 1][b];
  }
  std::vector<BigInt> fact(static_cast<std::size_t>(n + 1));
  fact[0] = 1;
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;

  std::vector<std::vector<BigInt>> scaled_c1(static_cast<std::size_t>(n + 1),
                                             std::vector<BigInt>(static_cast<std::size_t>(n + 1)));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!in_case(i, j)) continue;
      const int d = which == CascadeCase::P1 ? j - m + 1 : which == CascadeCase::P2 ? j - i + 1 : m - i + 1;
      const BigInt multinomial = fact[n] / (fact[i - 1] * fact[j - i - 1] * fact[n - j]);
      scaled_c1[i][j] = 2 * (lcm / d) * multinomial;
    }
  }

  c2_.assign(static_cast<std::size_t>(n - 1), {});
  for (int f = 0; f <= n - 2; ++f) {
    c2_[f].resize(static_cast<std::size_t>(n - 1 - f));
    for (int h = 0; h <= n - 2 - f; ++h) {
      BigInt acc = 0;
      for (int i = 1; i <= f + 1; ++i) {
        for (int j = f + 2; j <= std::min(f + h + 2, n); ++j) {
          const BigInt& w = scaled_c1[i][j];
          if (w == 0) continue;
          BigInt term = w * pascal[j - i - 1][f - i + 1] * pascal[n - j][h - j + f + 2];
          if ((h - i - j + 1) % 2 != 0) term = -term;
          acc += term;
        }
      }
      c2_[f][h] = Rational(acc, lcm);
    }
  }
}

bool CascadeContext::in_case(int i, int j) const {
  switch (case_) {
    case CascadeCase::P1:
      return m_ <= i && i < j && j <= n_;
    case CascadeCase::P2:
      return 1 <= i && i < m_ && m_ < j && j <= n_;
    case CascadeCase::P3:
      return 1 <= i && i < j && j <= m_;
  }
  return false;
}

Rational CascadeContext::c1(int i, int j) const {
  if (i < 1 || j > n_ || i >= j || !in_case(i, j)) return Rational(0);
  const int d = case_ == CascadeCase::P1 ? j - m_ + 1 : case_ == CascadeCase::P2 ? j - i + 1 : m_ - i + 1;
  BigInt multinomial = 1;
  for (int k = 2; k <= n_; ++k) multinomial *= k;
  BigInt den = 1;
  for (int k = 2; k <= i - 1; ++k) den *= k;
  for (int k = 2; k <= j - i - 1; ++k) den *= k;
  for (int k = 2; k <= n_ - j; ++k) den *= k;
  return Rational(2 * (multinomial / den), BigInt(d));
}

const Rational& CascadeContext::c2(int f, int h) const {
  static const Rational zero(0);
  if (f < 0 || h < 0 || f + h > n_ - 2) return zero;
  return c2_[f][h];
}

Rational CascadeContext::c3(int f, int h) const {
  const Rational& base = c2(f, h);
  if (base.is_zero()) return base;
  const std::int64_t divisor = options_.corrupt_c3_divisor
                                   ? static_cast<std::int64_t>(n_ + 1) * (f + 1)
                                   : static_cast<std::int64_t>(f + 1) * (h + 1);
  return base / Rational(divisor);
}

Rational CascadeContext::c7(int a) const {
  Rational sum;
  for (int f = 0; f <= n_ - 2; ++f) {
    for (int h = std::max(0, a - f - 1); h <= n_ - f - 2; ++h) {
      if (c2(f, h).is_zero()) continue;
      const Rational& k = memo_->grouped(f, h, a);
      if (k.is_zero()) continue;
      sum += c3(f, h) * k;
    }
  }
  return sum;
}

Rational CascadeContext::mu() const {
  Rational out;
  for (int a = 1; a <= n_ - 1; ++a) {
    const Rational w = inv_one_minus_pow2(a);
    out += c7(a) * w * w;
  }
  return out;
}

MuValue mu_general_exact(int m, int n, CascadeMemo& memo, const CascadeOptions& options) {
  if (n < 1 || m < 1 || m > n) {
    throw std::invalid_argument("mu_general_exact: need 1 <= m <= n (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (memo.bernoulli().max_index() + 2 < static_cast<std::size_t>(n)) {
    throw std::invalid_argument("mu_general_exact: Bernoulli table too small for n=" + std::to_string(n));
  }
  MuValue out{Rational(0), m, n, MuKind::general};
  for (CascadeCase c : {CascadeCase::P1, CascadeCase::P2, CascadeCase::P3}) {
    if (c == CascadeCase::P2 && (m == 1 || m == n)) continue;  // no i < m < j pairs
    if (c == CascadeCase::P3 && m == 1) continue;
    out.value += CascadeContext(m, n, c, memo, options).mu();
  }
  return out;
}

MuValue mu_general_exact(int m, int n, const CascadeOptions& options) {
  const BernoulliTable table(bernoulli_bound(n));
  CascadeMemo memo(table);
  return mu_general_exact(m, n, memo, options);
}

const MuValue& MuTable::at(int m, int n) const {
  // rows are (n, m) ordered with n cells in row n.
  if (n < 1 || m < 1 || m > n || n > n_max()) throw std::out_of_range("MuTable::at: cell outside table");
  const auto index = static_cast<std::size_t>((n - 1) * n / 2 + (m - 1));
  return rows.at(index).mu;
}

int MuTable::n_max() const { return rows.empty() ? 0 : rows.back().n; }

MuTable mu_table(int n_max, unsigned workers, const CascadeOptions& options) {
  if (n_max < 1) throw std::invalid_argument("mu_table: need n_max >= 1");
  std::vector<std::pair<int, int>> cells;
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; m <= n; ++m) cells.emplace_back(n, m);
  }
  std::vector<MuValue> results(cells.size());
  const BernoulliTable table(bernoulli_bound(n_max));

  // Expensive cells (large n, central m) first so workers finish together.
  std::vector<std::size_t> order(cells.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::reverse(order.begin(), order.end());

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    CascadeMemo memo(table);
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const auto [n, m] = cells[order[k]];
      results[order[k]] = mu_general_exact(m, n, memo, options);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();

  MuTable out;
  out.rows.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    out.rows.push_back({cells[k].first, cells[k].second, std::move(results[k])});
  }
  return out;
}

std::string to_csv(const MuTable& table, int digits) {
  std::string out = "n,m,mu_rational,mu_decimal\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n) + "," + std::to_string(row.m) + "," + row.mu.value.to_string() + "," +
           row.mu.value.to_decimal(digits) + "\n";
  }
  return out;
}

std::string to_json(const MuTable& table, int digits) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    arr.push_back({{"n", row.n},
                   {"m", row.m},
                   {"mu_rational", row.mu.value.to_string()},
                   {"mu_decimal", row.mu.value.to_decimal(digits)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace qsbits
