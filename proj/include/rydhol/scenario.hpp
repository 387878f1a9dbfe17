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

#include "rydhol/evolve.hpp"
#include "rydhol/gate.hpp"
#include "rydhol/model.hpp"
#include "rydhol/pulse.hpp"

/// Named parameter sweeps and their execution.
namespace rydhol::expcli {

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid axes. Rows are ordered lexicographically over
/// (model, eta, u12, kappa, alpha, epsilon), epsilon varying fastest.
/// Rates and interactions are in units of kappa_z.
struct Sweep {
  std::vector<model::ModelKind> model{model::ModelKind::effective};
  std::vector<double> eta{0.0};
  /// Control-control interaction. Three-atom systems only; two-atom and
  /// chain systems take a single 0 here and derive their interactions.
  std::vector<double> u12{0.0};
  /// Rydberg decay rate kappa / kappa_z.
  std::vector<double> kappa{0.0};
  std::vector<double> alpha{0.0};
  std::vector<double> epsilon{0.0};

  std::size_t size() const;
  bool operator==(const Sweep&) const = default;
};

struct Calibration {
  /// Peak drive amplitude in units of kappa_z; sets tau per eta and the
  /// detuning of full and rotating models. Zero means unset.
  double omega_max = 0.0;
  /// Fixed loop duration for every eta, overriding omega_max for the
  /// schedule. Zero means unset.
  double tau = 0.0;

  bool operator==(const Calibration&) const = default;
};

enum class PlotKind { none, lines, heatmap };

std::string to_string(PlotKind kind);
PlotKind parse_plot_kind(const std::string& text);

struct Scenario {
  std::string name = "custom";
  pulse::GateSpec gate = pulse::GateSpec::cnot();
  /// Delta / Omega_max for full and rotating models.
  double detuning_ratio = 100.0;
  /// Dephasing rate; 1 switches dephasing on, 0 off.
  double kappa_z = 0.0;
  Calibration calibration;
  Sweep sweep;
  /// Points per fastest period; 0 picks the per-model default.
  int points_per_period = 0;
  PlotKind plot = PlotKind::lines;

  int atoms() const { return gate.n_controls + 1; }
  /// CNOT, CZ, CCNOT or custom.
  std::string gate_name() const;
  bool dissipative() const;
  /// Throws ScenarioError describing the first violated invariant.
  void validate() const;

  bool operator==(const Scenario& other) const;
};

/// Integration density per model kind when the scenario leaves it at 0.
inline constexpr int kEffectivePointsPerPeriod = 200;
inline constexpr int kFullPointsPerPeriod = 640;

struct GridPoint {
  model::ModelKind model = model::ModelKind::effective;
  double eta = 0.0;
  double u12 = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
};

/// Grid points in row order.
std::vector<GridPoint> grid(const Sweep& sweep);

struct SweepRow {
  GridPoint point;
  double tau = 0.0;
  /// Interaction actually simulated between the first control and its
  /// neighbour (U12 for two atoms equals the detuning).
  double u12_used = 0.0;
  double fidelity = 0.0;
  double min_state_fidelity = 0.0;
  /// Largest trace drift over the benchmark states; for closed runs the
  /// unitarity defect of the propagator.
  double trace_drift = 0.0;
  double hermiticity_drift = 0.0;
  double min_eigenvalue = 0.0;
  long steps = 0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  Scenario scenario;
  std::vector<SweepRow> rows;
  std::string version;
  std::string timestamp;  // ISO 8601 UTC
  double seconds = 0.0;
};

/// Runtime knobs that do not change the numbers.
struct RunOptions {
  /// 0 uses the hardware concurrency.
  int workers = 0;
};

/// Inputs for one grid point, resolved from the scenario.
struct PointSetup {
  pulse::PulseSchedule schedule;
  model::SystemSpec system;
  model::NoiseSpec noise;
  evolve::StepPolicy policy;
  double u12_used = 0.0;
};

PointSetup resolve(const Scenario& s, const GridPoint& p);

/// Runs one grid point. Physicality failures are recorded in the row.
SweepRow run_point(const Scenario& s, const GridPoint& p);

SweepRow run_point(const Scenario& s, const GridPoint& p, const evolve::StepPolicy& policy);

SweepResult run_scenario(const Scenario& s, const RunOptions& options = {});

const std::vector<std::string>& builtin_names();
/// One-line description of a builtin scenario.
std::string builtin_summary(const std::string& name);
Scenario builtin(const std::string& name);

std::string library_version();

}  // namespace rydhol::expcli
