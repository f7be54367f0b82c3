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

#include "qsbits/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qsbits/asymptotics.hpp"
#include "qsbits/exact_mu.hpp"
#include "qsbits/simulator.hpp"
#include "qsbits/validate.hpp"

namespace qsbits {

namespace {

constexpr int kTableWarnAbove = 25;

std::string significant(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string format_value(const Rational& r, int digits) {
  if (r.denominator() == 1) return r.to_string();
  return r.to_string() + " ≈ " + r.to_decimal(digits);
}

struct Settings {
  int digits = 12;
  std::uint64_t seed = 0;
  unsigned workers = 0;

  // exact / simulate
  int m = 0;
  int n = 0;
  bool smallest = false;
  bool average = false;

  // table
  int max_n = 20;
  std::string format = "csv";
  std::string output;

  // asympt
  std::string constant;
  long asympt_n = 0;
  int k_max = 0;

  // simulate
  std::uint64_t trials = 100000;

  // validate
  std::string level = "quick";
  bool corrupt_c3 = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int run_exact(const Settings& s, std::ostream& out) {
  const int chosen = (s.smallest ? 1 : 0) + (s.average ? 1 : 0) + (s.m != 0 ? 1 : 0);
  if (chosen != 1) throw UsageError("exact: give exactly one of -m, --smallest, --average");
  if (s.n < 1) throw UsageError("exact: -n must be at least 1");
  MuValue v;
  if (s.smallest) {
    v = mu1_exact(s.n);
  } else if (s.average) {
    v = mu_avg_exact(s.n);
  } else {
    if (s.m < 1 || s.m > s.n) throw UsageError("exact: need 1 <= m <= n");
    v = mu_general_exact(s.m, s.n);
  }
  out << format_value(v.value, s.digits) << "\n";
  return kExitOk;
}

int run_table(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.max_n < 1) throw UsageError("table: --max-n must be at least 1");
  if (s.max_n > kTableWarnAbove) {
    err << "warning: --max-n " << s.max_n << " above " << kTableWarnAbove << " may take a long time\n";
  }
  const MuTable table = mu_table(s.max_n, s.workers);
  const std::string text = s.format == "json" ? to_json(table, s.digits) : to_csv(table, s.digits);
  if (s.output.empty()) {
    out << text;
  } else {
    std::ofstream file(s.output, std::ios::binary);
    if (!file) throw UsageError("table: cannot open " + s.output);
    file << text;
  }
  return kExitOk;
}

int run_asympt(const Settings& s, std::ostream& out) {
  SeriesOptions opts;
  opts.k_max = s.k_max;
  const AsymptoticConstants k = s.k_max == 0 ? asymptotic_constants() : asymptotic_constants(opts);
  const bool is_c = s.constant == "c";
  const double value = is_c ? 2.0 * k.a : 4.0 * (1.0 + kLn2 - k.a_tilde);
  out << (is_c ? "c" : "avg") << " = " << significant(value, 10) << " (k_max = " << k.k_used << ")\n";
  if (s.asympt_n != 0) {
    if (s.asympt_n < 2) throw UsageError("asympt: -n must be at least 2");
    const long n = s.asympt_n;
    const AsymptoticEstimate est = is_c ? mu1_asymptotic(n) : mu_avg_asymptotic(n);
    const double stable = is_c ? mu1_stable(n) : mu_avg_stable(n);
    out << "n = " << n << "\n";
    out << "expansion = " << significant(est.value, s.digits) << "\n";
    out << "stable = " << significant(stable, s.digits) << "\n";
    out << "|stable - expansion| = " << significant(std::abs(stable - est.value), 6) << "\n";
  }
  return kExitOk;
}

int run_simulate(const Settings& s, std::ostream& out) {
  if (s.n < 1 || s.m < 1 || s.m > s.n) throw UsageError("simulate: need 1 <= m <= n");
  if (s.trials < 2) throw UsageError("simulate: need at least 2 trials");
  MonteCarloOptions opts;
  opts.workers = s.workers;
  const SelectStats stats = monte_carlo(s.m, s.n, s.trials, s.seed, opts);
  if (s.format == "json") {
    out << stats.to_json();
  } else {
    out << "bit comparisons: " << significant(stats.bit_mean(), s.digits) << " ± "
        << significant(stats.bit_stderr(), 4) << "\n";
    out << "key comparisons: " << significant(stats.key_mean(), s.digits) << " ± "
        << significant(stats.key_stderr(), 4) << "\n";
  }
  return kExitOk;
}

int run_validate_cmd(const Settings& s, std::ostream& out) {
  ValidationOptions opts;
  opts.level = s.level == "full" ? ValidationLevel::full : ValidationLevel::quick;
  opts.seed = s.seed;
  opts.corrupt_c3 = s.corrupt_c3;
  const ValidationReport report = run_validation(opts);
  out << (s.format == "json" ? report.to_json() : report.to_text());
  return report.passed() ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Expected bit comparisons of Quickselect: exact, asymptotic and simulated", "qsbits"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--digits", s.digits, "Decimal digits in printed values")->check(CLI::Range(1, 200));
  app.add_option("--seed", s.seed, "Seed for the random substreams");
  app.add_option("--workers", s.workers, "Worker threads (0 = all cores)");

  auto* exact = app.add_subcommand("exact", "Exact rational mu(m,n)");
  exact->add_option("-m", s.m, "Rank of the sought key");
  exact->add_option("-n", s.n, "Number of keys")->required();
  exact->add_flag("--smallest", s.smallest, "Rank 1 via the Bernoulli-number formula");
  exact->add_flag("--average", s.average, "Average over all ranks");

  auto* table = app.add_subcommand("table", "Grid of mu(m,n) for 1 <= m <= n <= max-n");
  table->add_option("--max-n", s.max_n, "Largest n");
  table->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("-o,--output", s.output, "Write to a file instead of stdout");

  auto* asympt = app.add_subcommand("asympt", "Asymptotic slope constants and expansions");
  asympt->add_option("--constant", s.constant, "Which constant")->required()->check(CLI::IsMember({"c", "avg"}));
  asympt->add_option("-n", s.asympt_n, "Also evaluate the expansion at n");
  asympt->add_option("--k-max", s.k_max, "Fluctuation truncation (0 = adaptive)")->check(CLI::NonNegativeNumber);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of bit and key comparisons");
  simulate->add_option("-m", s.m, "Rank")->required();
  simulate->add_option("-n", s.n, "Number of keys")->required();
  simulate->add_option("--trials", s.trials, "Number of trials");
  simulate->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "Cross-validation suite");
  validate->add_option("--level", s.level, "Suite size")->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  validate->add_flag("--corrupt-c3", s.corrupt_c3, "Test hook: use a wrong cascade divisor")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // --format defaults differ per subcommand; "csv" is only meaningful for table.
  if ((simulate->parsed() || validate->parsed()) && s.format == "csv") s.format = "text";

  try {
    if (exact->parsed()) return run_exact(s, out);
    if (table->parsed()) return run_table(s, out, err);
    if (asympt->parsed()) return run_asympt(s, out);
    if (simulate->parsed()) return run_simulate(s, out);
    return run_validate_cmd(s, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qsbits
