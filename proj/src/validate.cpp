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

#include "qsbits/validate.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "qsbits/asymptotics.hpp"
#include "qsbits/exact_mu.hpp"
#include "qsbits/simulator.hpp"

namespace qsbits {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

CheckResult timed(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = name;
  try {
    const Outcome o = body();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Outcome check_slopes() {
  const double c = slope_c();
  const double avg = slope_avg();
  const bool ok = std::abs(c - 5.27938) <= 5e-5 && std::abs(avg - 8.20731) <= 5e-5;
  return {ok, "c=" + fmt(c) + " avg=" + fmt(avg)};
}

Outcome check_lemma_t(int n_max) {
  double worst = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const double exact = t_direct(n).to_double();
    worst = std::max(worst, std::abs(lemma_t(n) - exact) / std::max(1.0, std::abs(exact)));
  }
  return {worst <= 1e-9, "max relative error " + fmt(worst) + " for n<=" + std::to_string(n_max)};
}

Outcome check_smallest(int n_max, const CascadeOptions& opts) {
  const BernoulliTable table(static_cast<std::size_t>(n_max + 2));
  CascadeMemo memo(table);
  for (int n = 2; n <= n_max; ++n) {
    if (mu_general_exact(1, n, memo, opts).value != mu1_exact(n, table).value) {
      return {false, "mismatch at n=" + std::to_string(n)};
    }
  }
  return {true, "mu(1,n) cascade equals closed form for n<=" + std::to_string(n_max)};
}

Outcome check_average(int n_max, const CascadeOptions& opts) {
  const BernoulliTable table(static_cast<std::size_t>(n_max + 2));
  CascadeMemo memo(table);
  for (int n = 2; n <= n_max; ++n) {
    Rational sum(0);
    for (int m = 1; m <= n; ++m) sum += mu_general_exact(m, n, memo, opts).value;
    if (sum / Rational(n) != mu_avg_exact(n, table).value) return {false, "mismatch at n=" + std::to_string(n)};
  }
  return {true, "rank average equals closed form for n<=" + std::to_string(n_max)};
}

Outcome check_symmetry(int n_max, const CascadeOptions& opts) {
  const BernoulliTable table(static_cast<std::size_t>(n_max + 2));
  CascadeMemo memo(table);
  for (int n = 2; n <= n_max; ++n) {
    for (int m = 1; 2 * m <= n; ++m) {
      if (mu_general_exact(m, n, memo, opts).value != mu_general_exact(n + 1 - m, n, memo, opts).value) {
        return {false, "asymmetric at m=" + std::to_string(m) + " n=" + std::to_string(n)};
      }
    }
  }
  return {true, "mu(m,n)=mu(n+1-m,n) for n<=" + std::to_string(n_max)};
}

Outcome check_f_closed(int n_max) {
  for (int n = 3; n <= n_max; ++n) {
    const HarmonicPair h1 = harmonic(n - 1);
    const HarmonicPair h2 = harmonic(n - 2);
    const Rational rn(n);
    const Rational f1 = Rational(-1, 2) * rn * Rational(n - 1) * h2.h1 + Rational(5, 4) * rn * Rational(n - 1) -
                        rn * h1.h1 - Rational(1, 2);
    const Rational f3 = rn * h2.h1 - rn - h2.h1 + Rational(2);
    if (f1_sum(n) != f1 || f3_sum(n) != f3) return {false, "mismatch at n=" + std::to_string(n)};
  }
  return {true, "F1, F3 closed forms exact for 3<=n<=" + std::to_string(n_max)};
}

Outcome check_example() {
  std::vector<BitKey> keys{BitKey::from_bits("01001100"), BitKey::from_bits("00110101"),
                           BitKey::from_bits("00101010")};
  const SelectResult r = quickselect(keys, 1, [](std::size_t size, std::size_t) { return size - 1; });
  const bool ok = r.bit_cost == 6 && r.key_cost == 2 && r.selected == 2;
  return {ok, "bits=" + std::to_string(r.bit_cost) + " keys=" + std::to_string(r.key_cost)};
}

double z_score(double observed, double expected, double se) {
  if (se == 0.0) return observed == expected ? 0.0 : INFINITY;
  return std::abs(observed - expected) / se;
}

Outcome check_monte_carlo(std::uint64_t trials, std::uint64_t seed, const CascadeOptions& opts) {
  double worst = 0.0;
  for (auto [m, n] : {std::pair{1, 2}, std::pair{1, 8}, std::pair{4, 8}}) {
    const SelectStats s = monte_carlo(m, n, trials, seed);
    worst = std::max(worst, z_score(s.bit_mean(), mu_general_exact(m, n, opts).value.to_double(), s.bit_stderr()));
    worst = std::max(worst, z_score(s.key_mean(), expected_key_comparisons(m, n).to_double(), s.key_stderr()));
  }
  return {worst <= 4.0, "max |z| " + fmt(worst) + " over " + std::to_string(trials) + " trials"};
}

Outcome check_pairs(std::uint64_t trials, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& p : pair_frequency_check(2, 5, trials, seed)) {
    worst = std::max(worst, z_score(p.empirical, p.theoretical, p.std_error));
  }
  return {worst <= 5.0, "max |z| " + fmt(worst)};
}

Outcome check_amplitude() {
  std::vector<long> grid;
  for (double x = 2.0; x <= 1e4; x *= 1.05) grid.push_back(std::lround(x));
  grid.push_back(10000);
  const double amp = fluct_amplitude(sigma_tt_series, grid);
  return {amp < 0.00110, "max |sigma_tt| " + fmt(amp)};
}

Outcome check_remainder() {
  double prev1 = 0.0;
  double prev_avg = 0.0;
  double growth = 0.0;
  for (long n = 1024; n <= 16384; n *= 2) {
    const double r1 = std::abs(mu1_stable(n) - mu1_asymptotic(n).value);
    const double ravg = std::abs(mu_avg_stable(n) - mu_avg_asymptotic(n).value);
    if (n > 1024) growth = std::max({growth, r1 - prev1, ravg - prev_avg});
    prev1 = r1;
    prev_avg = ravg;
  }
  return {growth <= 0.05, "largest increase per doubling " + fmt(growth)};
}

}  // namespace

bool ValidationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  os << (passed() ? "all checks passed" : "validation FAILED") << "\n";
  return os.str();
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["level"] = level == ValidationLevel::quick ? "quick" : "full";
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    e["seconds"] = c.seconds;
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

ValidationReport run_validation(const ValidationOptions& options) {
  const bool full = options.level == ValidationLevel::full;
  CascadeOptions cascade;
  cascade.corrupt_c3_divisor = options.corrupt_c3;
  const int exact_n = full ? 12 : 8;
  const std::uint64_t trials = full ? 100000 : 20000;

  ValidationReport report;
  report.level = options.level;
  auto add = [&](const std::string& name, const std::function<Outcome()>& body) {
    report.checks.push_back(timed(name, body));
  };
  add("slopes", check_slopes);
  add("lemma_t_vs_bernoulli_sum", [&] { return check_lemma_t(full ? 60 : 30); });
  add("cascade_smallest_rank", [&] { return check_smallest(exact_n, cascade); });
  add("cascade_rank_average", [&] { return check_average(exact_n, cascade); });
  add("cascade_symmetry", [&] { return check_symmetry(full ? 15 : 10, cascade); });
  add("f1_f3_closed_forms", [&] { return check_f_closed(full ? 200 : 60); });
  add("three_key_example", check_example);
  add("monte_carlo_means", [&] { return check_monte_carlo(trials, options.seed, cascade); });
  if (full) {
    add("pair_frequencies", [&] { return check_pairs(100000, options.seed); });
    add("fluctuation_amplitude", check_amplitude);
    add("asymptotic_remainder", check_remainder);
  }
  return report;
}

}  // namespace qsbits
