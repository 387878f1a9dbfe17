// Copyright 2026 The rydhol Authors
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
#include <iosfwd>
#include <string>
#include <vector>

#include "rydhol/scenario.hpp"

/// The acceptance suite: ten criteria, one pass/fail line each.
namespace rydhol::expcli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
};

struct AcceptanceOptions {
  int workers = 0;
  /// Criterion ids to run; empty runs all.
  std::vector<int> only;
};

/// Seed of the randomized holonomy sweep.
inline constexpr std::uint64_t kHolonomySeed = 20240917;

/// Runs the selected criteria and writes one line per criterion to `out`
/// as each finishes.
AcceptanceReport validate(const AcceptanceOptions& options, std::ostream& out);

std::string format_line(const CriterionResult& r);

// Row-level checks, usable on any sweep with the matching grid.

/// Criterion 3 over CNOT rows with eta in {0, 4} and the epsilon grid.
CriterionResult check_cnot_global_error(const std::vector<SweepRow>& rows);
/// Criterion 4 over CZ rows with eta in {0, 4}.
CriterionResult check_cz_global_error(const std::vector<SweepRow>& rows);
/// Criterion 5 over CCNOT rows with eta in {0, 2, 4, 6}.
CriterionResult check_ccnot_global_error(const std::vector<SweepRow>& rows);
/// Criterion 6 from the CNOT and CCNOT epsilon sweeps.
CriterionResult check_cross_gate(const std::vector<SweepRow>& cnot, const std::vector<SweepRow>& ccnot);
/// Criterion 7 over CNOT rows at epsilon = 0, eta in {0, 4},
/// kappa in {0, 0.5, 1, 2}.
CriterionResult check_dissipative_ordering(const std::vector<SweepRow>& rows);

}  // namespace rydhol::expcli
