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

#include <numbers>
#include <stdexcept>
#include <utility>

#include "rydhol/qlin.hpp"

/// Dark-path drive synthesis.
///
/// The loop parameters u(t), v(t) fix the second dark path; the Rabi
/// frequencies that keep the system on it are obtained by inverting the
/// Schroedinger equation. Angles are in radians, time in the caller's unit
/// (the scenario runner uses 1/kappa_z).
namespace rydhol::pulse {

inline constexpr double kPi = std::numbers::pi;

class PulseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Loop duration and dressing strength. eta = 0 is the plain
/// single-loop holonomic limit (no control-atom drive).
struct LoopShape {
  double tau = 1.0;
  double eta = 0.0;

  static LoopShape make(double tau, double eta);
};

/// Target rotation: axis (theta, phi) on the Bloch sphere, angle gamma.
struct GateSpec {
  double theta = 0.0;
  double phi = 0.0;
  double gamma = 0.0;
  int n_controls = 1;

  static GateSpec cnot() { return {kPi / 2, 0.0, kPi, 1}; }
  static GateSpec cz() { return {0.0, 0.0, kPi, 1}; }
  static GateSpec ccnot() { return {kPi / 2, 0.0, kPi, 2}; }
};

struct SegmentPhases {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Laser phases for the two halves of the loop; the switch happens at tau/2.
struct PhasePlan {
  SegmentPhases segment1;
  SegmentPhases segment2;

  double switch_time(const LoopShape& loop) const { return loop.tau / 2; }
};

struct PulseSample {
  double omega = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  SegmentPhases phases;
  int segment = 1;
};

struct UV {
  double u = 0.0;
  double v = 0.0;
};

struct Rabi {
  double omega = 0.0;
  double omega0 = 0.0;
};

UV uv_at(const LoopShape& loop, double t);
/// Time derivatives (du/dt, dv/dt).
UV uv_rate_at(const LoopShape& loop, double t);

/// Omega and Omega0 in the closed form with the cot(u) factor cancelled
/// analytically: Omega = du(eta cos u sin v + cos v),
/// Omega0 = du(eta cos u cos v - sin v).
Rabi rabi_at(const LoopShape& loop, double t);

PulseSample drive_components(const Rabi& sample, const GateSpec& gate, const PhasePlan& plan,
                             int segment);

/// Segment 1 uses (-phi, 0) and segment 2 (gamma - phi, gamma); phi1 - phi2
/// stays equal to -phi so both halves share the same bright state, and the
/// loop realizes the rotation about n = (sin theta cos phi, sin theta sin phi,
/// cos theta).
PhasePlan phase_plan(const GateSpec& gate);

/// Labels of the abstract four-level space: x0/x1 are the computational pair
/// with every control excited, xr the doubly excited state and yr the state
/// with the driven control in ground.
const qlin::Basis& four_level_basis();

/// Bright state in the four-level basis:
/// sin(theta/2) e^{-i phi}|x0> - cos(theta/2)|x1>.
qlin::Ket bright_state(const GateSpec& gate);
/// Time-independent dark state: cos(theta/2)|x0> + sin(theta/2) e^{i phi}|x1>.
qlin::Ket dark_state_D1(const GateSpec& gate);
/// Second dark path; the segment containing t selects phi2.
qlin::Ket dark_path_D2(const LoopShape& loop, const GateSpec& gate, const PhasePlan& plan, double t);

/// max over the loop of sqrt(Omega^2 + Omega0^2).
double peak_envelope(const LoopShape& loop);
/// Loop duration giving the requested peak envelope.
double tau_for_peak(double omega_max, double eta);

class PulseSchedule {
 public:
  PulseSchedule(LoopShape loop, GateSpec gate);
  PulseSchedule(LoopShape loop, GateSpec gate, PhasePlan plan);

  const LoopShape& loop() const { return loop_; }
  const GateSpec& gate() const { return gate_; }
  const PhasePlan& plan() const { return plan_; }
  double tau() const { return loop_.tau; }
  double peak() const { return peak_; }

  /// Segment 1 on [0, tau/2), segment 2 on [tau/2, tau].
  int segment_at(double t) const { return t < loop_.tau / 2 ? 1 : 2; }
  PulseSample sample(double t) const;

 private:
  LoopShape loop_;
  GateSpec gate_;
  PhasePlan plan_;
  double peak_;
};

}  // namespace rydhol::pulse
