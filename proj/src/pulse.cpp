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

#include "rydhol/pulse.hpp"

#include <cmath>
#include <string>

namespace rydhol::pulse {

using qlin::Complex;
using qlin::kI;

namespace {

void require_in_loop(const LoopShape& loop, double t) {
  if (!(t >= 0.0 && t <= loop.tau)) {
    throw PulseError("time " + std::to_string(t) + " outside the loop [0, " + std::to_string(loop.tau) + "]");
  }
}

double envelope(const LoopShape& loop, double t) {
  const Rabi r = rabi_at(loop, t);
  return std::hypot(r.omega, r.omega0);
}

}  // namespace

LoopShape LoopShape::make(double tau, double eta) {
  if (!(tau > 0.0)) throw PulseError("loop duration must be positive");
  if (!(eta >= 0.0)) throw PulseError("eta must be non-negative");
  return {tau, eta};
}

UV uv_at(const LoopShape& loop, double t) {
  require_in_loop(loop, t);
  const double s = std::sin(kPi * t / loop.tau);
  const double u = (kPi / 2) * s * s;
  return {u, loop.eta * (1.0 - std::cos(u))};
}

UV uv_rate_at(const LoopShape& loop, double t) {
  const UV p = uv_at(loop, t);
  const double du = (kPi * kPi / (2 * loop.tau)) * std::sin(2 * kPi * t / loop.tau);
  return {du, loop.eta * std::sin(p.u) * du};
}

Rabi rabi_at(const LoopShape& loop, double t) {
  const UV p = uv_at(loop, t);
  const double du = uv_rate_at(loop, t).u;
  const double cu = std::cos(p.u);
  const double sv = std::sin(p.v);
  const double cv = std::cos(p.v);
  return {du * (loop.eta * cu * sv + cv), du * (loop.eta * cu * cv - sv)};
}

PulseSample drive_components(const Rabi& sample, const GateSpec& gate, const PhasePlan& plan,
                             int segment) {
  PulseSample out;
  out.omega = sample.omega;
  out.omega0 = sample.omega0;
  out.omega1 = sample.omega * std::sin(gate.theta / 2);
  out.omega2 = -sample.omega * std::cos(gate.theta / 2);
  out.phases = segment == 1 ? plan.segment1 : plan.segment2;
  out.segment = segment;
  return out;
}

PhasePlan phase_plan(const GateSpec& gate) {
  return {{-gate.phi, 0.0}, {gate.gamma - gate.phi, gate.gamma}};
}

const qlin::Basis& four_level_basis() {
  static const qlin::Basis basis{"x0", "x1", "xr", "yr"};
  return basis;
}

// State coupled to xr by drives with relative phase phi1 - phi2 = rel.
static qlin::Vector bright_amplitudes(double theta, double rel) {
  qlin::Vector v = qlin::Vector::Zero(4);
  v(0) = std::sin(theta / 2) * std::exp(kI * rel);
  v(1) = -std::cos(theta / 2);
  return v;
}

qlin::Ket bright_state(const GateSpec& gate) {
  return {bright_amplitudes(gate.theta, -gate.phi), four_level_basis()};
}

qlin::Ket dark_state_D1(const GateSpec& gate) {
  qlin::Vector v = qlin::Vector::Zero(4);
  v(0) = std::cos(gate.theta / 2);
  v(1) = std::sin(gate.theta / 2) * std::exp(kI * gate.phi);
  return {v, four_level_basis()};
}

qlin::Ket dark_path_D2(const LoopShape& loop, const GateSpec& gate, const PhasePlan& plan, double t) {
  const UV p = uv_at(loop, t);
  const double phi2 = t < loop.tau / 2 ? plan.segment1.phi2 : plan.segment2.phi2;
  // phi1 - phi2 is the same in both segments.
  const double rel = plan.segment1.phi1 - plan.segment1.phi2;
  qlin::Vector v = std::cos(p.u) * std::cos(p.v) * std::exp(kI * phi2) * bright_amplitudes(gate.theta, rel);
  v(2) = -kI * std::sin(p.u);
  v(3) = -std::cos(p.u) * std::sin(p.v);
  return {v, four_level_basis()};
}

double peak_envelope(const LoopShape& loop) {
  constexpr int kScan = 10000;
  const double h = loop.tau / kScan;
  int best = 0;
  double best_val = -1.0;
  for (int k = 0; k <= kScan; ++k) {
    const double val = envelope(loop, std::min(loop.tau, k * h));
    if (val > best_val) {
      best_val = val;
      best = k;
    }
  }
  // Golden-section refinement on the bracketing cells.
  double a = std::max(0.0, (best - 1) * h);
  double b = std::min(loop.tau, (best + 1) * h);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = envelope(loop, c);
  double fd = envelope(loop, d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * loop.tau; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = envelope(loop, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = envelope(loop, d);
    }
  }
  return std::max({best_val, fc, fd});
}

double tau_for_peak(double omega_max, double eta) {
  if (!(omega_max > 0.0)) throw PulseError("peak Rabi frequency must be positive");
  // The envelope scales as 1/tau at fixed eta.
  return peak_envelope(LoopShape::make(1.0, eta)) / omega_max;
}

PulseSchedule::PulseSchedule(LoopShape loop, GateSpec gate)
    : PulseSchedule(loop, gate, phase_plan(gate)) {}

PulseSchedule::PulseSchedule(LoopShape loop, GateSpec gate, PhasePlan plan)
    : loop_(LoopShape::make(loop.tau, loop.eta)), gate_(gate), plan_(plan), peak_(peak_envelope(loop_)) {}

PulseSample PulseSchedule::sample(double t) const {
  // Integrator stage times can overshoot the loop ends by rounding.
  const double slack = 1e-12 * loop_.tau;
  if (t < 0.0 && t >= -slack) t = 0.0;
  if (t > loop_.tau && t <= loop_.tau + slack) t = loop_.tau;
  return drive_components(rabi_at(loop_, t), gate_, plan_, segment_at(t));
}

}  // namespace rydhol::pulse
