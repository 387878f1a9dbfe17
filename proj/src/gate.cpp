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

#include "rydhol/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rydhol::gate {

using qlin::Complex;
using qlin::kI;
using qlin::Ket;
using qlin::Matrix;
using qlin::Operator;
using qlin::Vector;

namespace {

constexpr double kImagResidue = 1e-10;
constexpr double kBoundSlack = 1e-9;

std::vector<Vector> single_atom_states(int count) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Vector> all;
  auto pair = [](Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return v;
  };
  all.push_back(pair(1.0, 0.0));
  all.push_back(pair(0.0, 1.0));
  all.push_back(pair(s, s));
  all.push_back(pair(s, -s));
  all.push_back(pair(s, kI * s));
  all.push_back(pair(s, -kI * s));
  all.resize(static_cast<std::size_t>(count));
  return all;
}

Ket target_ket(const Vector& v) {
  Vector t = Vector::Zero(3);
  t.head(2) = v;
  return Ket(std::move(t), model::target_basis());
}

void check_counts(std::size_t finals, const BenchmarkSet& set, const Operator& ideal) {
  if (finals != set.states.size()) throw GateError("one final state per benchmark state is required");
  for (const auto& k : set.states) {
    if (k.dim() != ideal.dim()) throw GateError("benchmark state and ideal gate dimensions differ");
  }
}

FidelityReport summarize(std::vector<double> per_state) {
  FidelityReport r;
  for (double f : per_state) {
    if (!(f >= -kBoundSlack && f <= 1.0 + kBoundSlack)) {
      throw GateError("state fidelity " + std::to_string(f) + " outside [0, 1]");
    }
  }
  r.average = per_state.empty() ? 0.0 : std::accumulate(per_state.begin(), per_state.end(), 0.0) /
                                            static_cast<double>(per_state.size());
  r.per_state = std::move(per_state);
  return r;
}

}  // namespace

double FidelityReport::min_state() const {
  return per_state.empty() ? 0.0 : *std::min_element(per_state.begin(), per_state.end());
}

Operator ideal_rotation(const pulse::GateSpec& gate) {
  const double nx = std::sin(gate.theta) * std::cos(gate.phi);
  const double ny = std::sin(gate.theta) * std::sin(gate.phi);
  const double nz = std::cos(gate.theta);
  Matrix n_sigma(2, 2);
  n_sigma << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
  const double half = gate.gamma / 2;
  Matrix rot = std::exp(kI * half) * (std::cos(half) * Matrix::Identity(2, 2) - kI * std::sin(half) * n_sigma);
  return Operator(std::move(rot), {"0", "1"});
}

Operator ideal_controlled_gate(const pulse::GateSpec& gate, int n_atoms) {
  return ideal_controlled_gate(gate, n_atoms, model::system_basis(n_atoms));
}

Operator ideal_controlled_gate(const pulse::GateSpec& gate, int n_atoms, const qlin::Basis& full_basis) {
  const auto labels = model::four_level_labels(n_atoms);
  const std::vector<std::string> pair{labels[0], labels[1]};
  return qlin::embed(ideal_rotation(gate), pair, full_basis);
}

BenchmarkSet benchmark_states(int n_atoms, BenchmarkKind kind) {
  if (n_atoms < 2) throw GateError("benchmark sets need at least two atoms");
  const int per_atom = (kind == BenchmarkKind::standard && n_atoms == 2) ? 6 : 4;
  const auto singles = single_atom_states(per_atom);

  std::vector<Ket> states{Ket(Vector::Ones(1), {""})};
  for (int atom = 0; atom < n_atoms; ++atom) {
    const bool is_target = atom == n_atoms - 1;
    std::vector<Ket> next;
    next.reserve(states.size() * singles.size());
    for (const auto& prefix : states) {
      for (const auto& s : singles) {
        next.push_back(qlin::kron(prefix, is_target ? target_ket(s) : Ket(s, model::control_basis())));
      }
    }
    states = std::move(next);
  }
  const std::size_t total = states.size();
  return {std::move(states), std::to_string(total) + " product states, " + std::to_string(per_atom) + " per atom"};
}

FidelityReport average_fidelity(const std::vector<qlin::DensityMatrix>& final_states, const Operator& ideal,
                                const BenchmarkSet& set) {
  check_counts(final_states.size(), set, ideal);
  std::vector<double> per_state;
  per_state.reserve(set.states.size());
  for (std::size_t n = 0; n < set.states.size(); ++n) {
    const Vector target = ideal.entries() * set.states[n].amplitudes();
    const Complex f = target.dot(final_states[n].entries() * target);
    if (std::abs(f.imag()) > kImagResidue) {
      throw GateError("fidelity overlap has imaginary residue " + std::to_string(f.imag()));
    }
    per_state.push_back(f.real());
  }
  return summarize(std::move(per_state));
}

FidelityReport average_fidelity(const std::vector<Ket>& final_states, const Operator& ideal, const BenchmarkSet& set) {
  check_counts(final_states.size(), set, ideal);
  std::vector<double> per_state;
  per_state.reserve(set.states.size());
  for (std::size_t n = 0; n < set.states.size(); ++n) {
    const Vector target = ideal.entries() * set.states[n].amplitudes();
    per_state.push_back(std::norm(target.dot(final_states[n].amplitudes())));
  }
  return summarize(std::move(per_state));
}

FidelityReport average_fidelity(const Operator& simulated, const Operator& ideal, const BenchmarkSet& set) {
  if (simulated.dim() != ideal.dim()) throw GateError("simulated and ideal gate dimensions differ");
  std::vector<Ket> finals;
  finals.reserve(set.states.size());
  for (const auto& k : set.states) finals.push_back(simulated.apply(k));
  return average_fidelity(finals, ideal, set);
}

evolve::StepPolicy holonomy_policy() {
  evolve::StepPolicy p;
  p.points_per_period = 200;
  return p;
}

HolonomyCheck holonomy_check(const pulse::PulseSchedule& schedule, int n_atoms, const evolve::StepPolicy& policy) {
  const model::HamiltonianFn h = model::h_eff_N(schedule, {}, n_atoms);
  const double half = schedule.plan().switch_time(schedule.loop());
  const Operator first = evolve::propagator(h, 0.0, half, policy);
  const Operator second = evolve::propagator(h, half, schedule.tau(), policy);
  const Operator total = second * first;

  const auto labels = model::four_level_labels(n_atoms);
  Matrix block(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) block(i, j) = total(labels[i], labels[j]);
  const double deviation = qlin::max_abs(block - ideal_rotation(schedule.gate()).entries());
  return {Operator(std::move(block), {"0", "1"}), deviation};
}

}  // namespace rydhol::gate
