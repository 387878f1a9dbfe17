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
#include "rydhol/model.hpp"
#include "rydhol/pulse.hpp"
#include "rydhol/qlin.hpp"

/// Ideal gates, benchmark states and the average state fidelity.
namespace rydhol::gate {

class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BenchmarkKind {
  /// Six single-atom states per atom for two atoms, four per atom otherwise.
  standard,
  /// Four single-atom states per atom for every atom count.
  four_per_atom,
};

struct BenchmarkSet {
  std::vector<qlin::Ket> states;
  std::string description;
};

struct Calibration {
  double tau = 0.0;
  double eta = 0.0;
  double omega_max = 0.0;
};

struct FidelityReport {
  std::vector<double> per_state;
  double average = 0.0;
  pulse::GateSpec gate;
  model::ModelKind model_kind = model::ModelKind::effective;
  model::DriveErrors errors;
  model::NoiseSpec noise;
  Calibration calibration;

  double min_state() const;
};

/// exp(i gamma/2) exp(-i gamma/2 n.sigma) on the ordered pair (|0>, |1>),
/// n = (sin theta cos phi, sin theta sin phi, cos theta).
qlin::Operator ideal_rotation(const pulse::GateSpec& gate);

/// Identity everywhere except the fully triggered pair e..e0, e..e1.
qlin::Operator ideal_controlled_gate(const pulse::GateSpec& gate, int n_atoms);
qlin::Operator ideal_controlled_gate(const pulse::GateSpec& gate, int n_atoms, const qlin::Basis& full_basis);

/// Cartesian product of per-atom state lists, first atom outermost.
BenchmarkSet benchmark_states(int n_atoms, BenchmarkKind kind = BenchmarkKind::standard);

/// Per-state Re<psi|U^+ rho U|psi>, averaged. The imaginary residue of each
/// overlap must stay below 1e-10.
FidelityReport average_fidelity(const std::vector<qlin::DensityMatrix>& final_states, const qlin::Operator& ideal,
                                 const BenchmarkSet& set);
/// Pure-state variant: |<U psi|psi_final>|^2.
FidelityReport average_fidelity(const std::vector<qlin::Ket>& final_states, const qlin::Operator& ideal,
                                const BenchmarkSet& set);
/// Closed-system variant from the simulated propagator.
FidelityReport average_fidelity(const qlin::Operator& simulated, const qlin::Operator& ideal, const BenchmarkSet& set);

struct HolonomyCheck {
  qlin::Operator block;  // composed propagator on the computational pair
  double deviation = 0.0;
};

/// Step policy used for holonomy reconstruction.
evolve::StepPolicy holonomy_policy();

/// Composes both loop segments of the error-free effective model and compares
/// the computational block with ideal_rotation.
HolonomyCheck holonomy_check(const pulse::PulseSchedule& schedule, int n_atoms,
                             const evolve::StepPolicy& policy = holonomy_policy());

}  // namespace rydhol::gate
