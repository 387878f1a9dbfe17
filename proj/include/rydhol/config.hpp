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

#include <string>
#include <vector>

#include "rydhol/scenario.hpp"

// Flat `key = value` scenario files.
//
//   # comment
//   name = fig3a
//   gate = cnot                      # cnot | cz | ccnot, then gate.* overrides
//   gate.theta = 1.5707963267948966
//   gate.controls = 1
//   system.detuning_ratio = 100
//   noise.kappa_z = 0
//   calibration.omega_max = 1000
//   sweep.model = effective
//   sweep.eta = 0, 4
//   sweep.epsilon = -0.2:0.2:0.02    # lo:hi:step, inclusive
//   integrator.points_per_period = 0
//   output.plot = lines
namespace rydhol::expcli {

class ConfigError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

/// lo, lo + step, ..., hi with each value rounded to 12 significant digits.
std::vector<double> expand_range(double lo, double hi, double step);

/// Unknown keys and malformed values raise ConfigError with the line number.
Scenario parse_config(const std::string& text);
/// Every field, lists written out in full with %.17g, so parse_config
/// reproduces the scenario exactly.
std::string emit_config(const Scenario& s);

Scenario load_config(const std::string& path);
void save_config(const Scenario& s, const std::string& path);

}  // namespace rydhol::expcli
