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

#include <limits>
#include <stdexcept>
#include <vector>

#include "rydhol/model.hpp"
#include "rydhol/qlin.hpp"

/// Time propagation of kets, propagators and density matrices.
namespace rydhol::evolve {

/// An integration left the physical manifold (norm, unitarity, trace or
/// positivity drift beyond the hard limits).
class EvolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepPolicy {
  double dt_max = std::numeric_limits<double>::infinity();
  /// Steps per 2 pi / max_frequency.
  int points_per_period = 40;
  /// Local error target of the adaptive integrator.
  double tolerance = 1e-9;
  bool monitors_on = true;
  /// Embedded Dormand-Prince 5(4) instead of fixed-step RK4.
  bool adaptive = false;

  void validate() const;
};

/// Fixed RK4 step: min(dt_max, 2 pi / (points_per_period * max_frequency)).
double step_size(const model::HamiltonianFn& h, const StepPolicy& policy);

struct KetEvolution {
  qlin::Ket final_state;
  long steps = 0;
  double max_norm_drift = 0.0;
};

struct DensityEvolution {
  qlin::DensityMatrix final_state;
  long steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue_seen = 0.0;
};

struct PropagatorEvolution {
  qlin::Operator propagator;
  long steps = 0;
  double unitarity_drift = 0.0;
};

inline constexpr double kNormDriftLimit = 1e-6;
inline constexpr double kUnitarityLimit = 1e-8;
inline constexpr double kTraceDriftLimit = 1e-6;
inline constexpr double kTraceRenormLimit = 1e-8;
inline constexpr double kNegativityLimit = -1e-6;

/// i d|psi>/dt = H(t)|psi>. The state is renormalized once at the end; a norm
/// drift above 1e-6 means the step policy is too coarse and throws.
KetEvolution propagate_ket(const model::HamiltonianFn& h, const qlin::Ket& psi0, double t0, double t1,
                           const StepPolicy& policy = {});

/// U(t1, t0), integrated column by column. Throws when ||U^+U - I|| > 1e-8.
PropagatorEvolution propagate_unitary(const model::HamiltonianFn& h, double t0, double t1,
                                      const StepPolicy& policy = {});
qlin::Operator propagator(const model::HamiltonianFn& h, double t0, double t1, const StepPolicy& policy = {});

/// d rho/dt = -i[H, rho] + sum_k g_k (2 o rho o^+ - o^+ o rho - rho o^+ o).
///
/// The Hermitian part is restored after every step; positivity is checked
/// every 100 steps and at the end when monitors are on.
DensityEvolution lindblad_evolve(const model::HamiltonianFn& h, const std::vector<model::LindbladChannel>& channels,
                                 const qlin::DensityMatrix& rho0, double t0, double t1,
                                 const StepPolicy& policy = {});

}  // namespace rydhol::evolve
