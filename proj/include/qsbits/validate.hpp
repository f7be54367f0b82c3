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

#include <cstdint>
#include <string>
#include <vector>

namespace qsbits {

enum class ValidationLevel { quick, full };

struct ValidationOptions {
  ValidationLevel level = ValidationLevel::quick;
  std::uint64_t seed = 0;
  /// Run the cascade with the wrong C3 divisor; the suite must then fail.
  bool corrupt_c3 = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationReport {
  ValidationLevel level = ValidationLevel::quick;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const;
  /// One "PASS name: detail" / "FAIL name: detail" line per check.
  [[nodiscard]] std::string to_text() const;
  /// {"level", "passed", "checks": [{"name", "passed", "detail", "seconds"}]}
  [[nodiscard]] std::string to_json() const;
};

ValidationReport run_validation(const ValidationOptions& options);

}  // namespace qsbits
