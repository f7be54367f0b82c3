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

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qsbits/numbers.hpp"
#include "qsbits/rational.hpp"

namespace qsbits {

enum class MuKind { smallest, average, general };

const char* to_string(MuKind kind);

/// Expected bit comparisons of Quickselect for rank m among n uniform keys.
struct MuValue {
  Rational value;
  int m = 1;
  int n = 1;
  MuKind kind = MuKind::general;
};

/// Bernoulli sum t_n with mu(1,n) = 2n(H_n - 1) + 2 t_n.
Rational t_direct(int n, const BernoulliTable& table);
Rational t_direct(int n);

/// Exact mu(1,n) from the Bernoulli-number closed form.
MuValue mu1_exact(int n, const BernoulliTable& table);
MuValue mu1_exact(int n);

/// The five sums F_1(n)..F_5(n) whose combination gives the rank-averaged cost.
struct FTerms {
  Rational f1;
  Rational f2;
  Rational f3;
  Rational f4;
  Rational f5;
};

FTerms f_terms(int n, const BernoulliTable& table);
FTerms f_terms(int n);

/// Only F_1 and F_3 (no Bernoulli numbers involved); cheap for large n.
Rational f1_sum(int n);
Rational f3_sum(int n);

/// Exact rank-averaged cost (1/n) sum_m mu(m,n).
MuValue mu_avg_exact(int n, const BernoulliTable& table);
MuValue mu_avg_exact(int n);

// ---------------------------------------------------------------------------
// General rank: finite-summation cascade.
//
// mu(m,n) = mu_1 + mu_2 + mu_3, one term per comparison-probability regime.
// Each mu_q expands P_q(s,t) = sum C2(f,h) s^f t^h, integrates every monomial
// over the dyadic rectangles of the bit-index decomposition (C3), rewrites the
// rectangle integrals as polynomials in the interval index l (C4), replaces
// the power sums over l by Faulhaber polynomials (C5, C6) and finally sums the
// geometric series in the bit depth, grouped by the exponent a (C7):
//   mu_q = sum_{a=1}^{n-1} C7(a) (1 - 2^-a)^-2.

enum class CascadeCase { P1, P2, P3 };

struct CascadeOptions {
  /// Mutation hook: use (n+1)(f+1) as the C3 divisor instead of (f+1)(h+1).
  /// Exists only so the validation suite can prove it detects a wrong cascade.
  bool corrupt_c3_divisor = false;
};

/// dyadic-difference expansion coefficient: coefficient of l^(j-1) in
/// [l^(h+1) - (l-1/2)^(h+1)] [(l-1/2)^(f+1) - (l-1)^(f+1)].
Rational c4_coeff(int f, int h, int j);

/// Memo for the (m,n)-independent parts of the cascade: C4 and the grouped
/// weights K(f,h,a) = sum_j C4(f,h,j) a_{j, a+j-(f+h+2)}. One per worker.
class CascadeMemo {
 public:
  explicit CascadeMemo(const BernoulliTable& table) : table_(&table) {}

  const Rational& c4(int f, int h, int j);
  const Rational& grouped(int f, int h, int a);
  [[nodiscard]] const BernoulliTable& bernoulli() const { return *table_; }

 private:
  const BernoulliTable* table_;
  std::map<std::tuple<int, int, int>, Rational> c4_;
  std::map<std::tuple<int, int, int>, Rational> grouped_;
};

class CascadeContext {
 public:
  CascadeContext(int m, int n, CascadeCase which, CascadeMemo& memo, CascadeOptions options = {});

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] CascadeCase which() const { return case_; }

  /// Comparison-probability-weighted multinomial coefficient; zero off the case's index set.
  [[nodiscard]] Rational c1(int i, int j) const;
  /// Coefficient of s^f t^h in P_q(s,t,m,n); zero outside 0 <= f, h, f+h <= n-2.
  [[nodiscard]] const Rational& c2(int f, int h) const;
  [[nodiscard]] Rational c3(int f, int h) const;
  [[nodiscard]] Rational c7(int a) const;
  /// mu_q(m,n).
  [[nodiscard]] Rational mu() const;

 private:
  [[nodiscard]] bool in_case(int i, int j) const;

  int m_;
  int n_;
  CascadeCase case_;
  CascadeOptions options_;
  CascadeMemo* memo_;
  std::vector<std::vector<Rational>> c2_;
};

MuValue mu_general_exact(int m, int n, CascadeMemo& memo, const CascadeOptions& options = {});
MuValue mu_general_exact(int m, int n, const CascadeOptions& options = {});

struct MuTableRow {
  int n;
  int m;
  MuValue mu;
};

struct MuTable {
  std::vector<MuTableRow> rows;  // sorted by (n, m)

  [[nodiscard]] const MuValue& at(int m, int n) const;
  [[nodiscard]] int n_max() const;
};

/// Every cell 1 <= m <= n <= n_max. `workers` = 0 picks hardware concurrency.
MuTable mu_table(int n_max, unsigned workers = 0, const CascadeOptions& options = {});

/// CSV with header "n,m,mu_rational,mu_decimal", newline-terminated.
std::string to_csv(const MuTable& table, int digits = 12);
/// JSON array of {n, m, mu_rational, mu_decimal} objects, newline-terminated.
std::string to_json(const MuTable& table, int digits = 12);

}  // namespace qsbits
