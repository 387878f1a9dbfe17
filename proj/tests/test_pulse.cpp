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

#include <cmath>
#include <random>

#include "doctest.h"
#include "rydhol/model.hpp"
#include "rydhol/pulse.hpp"

using namespace rydhol;
using pulse::kPi;
using qlin::Complex;
using qlin::kI;

namespace {

// Loop parameters written out directly, independent of the library.
double u_ref(double t, double tau) { return kPi / 2 * std::pow(std::sin(kPi * t / tau), 2); }
double v_ref(double t, double tau, double eta) { return eta * (1 - std::cos(u_ref(t, tau))); }

// Rabi frequencies from the cotangent form, derivatives by central
// differences.
pulse::Rabi rabi_literal(double t, double tau, double eta) {
  const double h = 1e-8 * tau;
  const double du = (u_ref(t + h, tau) - u_ref(t - h, tau)) / (2 * h);
  const double dv = (v_ref(t + h, tau, eta) - v_ref(t - h, tau, eta)) / (2 * h);
  const double u = u_ref(t, tau), v = v_ref(t, tau, eta);
  const double cot = std::cos(u) / std::sin(u);
  return {dv * cot * std::sin(v) + du * std::cos(v), dv * cot * std::cos(v) - du * std::sin(v)};
}

pulse::GateSpec random_gate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.0, kPi), ph(-kPi, kPi);
  return {th(rng), ph(rng), ph(rng), 1};
}

}  // namespace

TEST_SUITE("pulse") {
  TEST_CASE("loop parameters at landmarks") {
    const auto loop = pulse::LoopShape::make(1.0, 4.0);
    const pulse::UV a = pulse::uv_at(loop, 0.0);
    CHECK(a.u == 0.0);
    CHECK(a.v == 0.0);
    const pulse::UV mid = pulse::uv_at(loop, 0.5);
    CHECK(mid.u == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(mid.v == doctest::Approx(4.0).epsilon(1e-15));
    const pulse::UV q = pulse::uv_at(loop, 0.25);
    CHECK(q.u == doctest::Approx(0.7853982).epsilon(1e-7));
    CHECK(q.v == doctest::Approx(1.1715729).epsilon(1e-7));
    const pulse::UV end = pulse::uv_at(loop, 1.0);
    CHECK(std::abs(end.u) <= 1e-15);
    CHECK(std::abs(end.v) <= 1e-14);
  }

  TEST_CASE("loop parameters match the reference formula") {
    for (double eta : {0.0, 2.5, 6.0}) {
      const auto loop = pulse::LoopShape::make(0.7, eta);
      for (int k = 0; k <= 50; ++k) {
        const double t = 0.7 * k / 50;
        const pulse::UV p = pulse::uv_at(loop, t);
        CHECK(p.u == doctest::Approx(u_ref(t, 0.7)).epsilon(1e-14));
        CHECK(p.v == doctest::Approx(v_ref(t, 0.7, eta)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("invalid loops and times are rejected") {
    CHECK_THROWS_AS(pulse::LoopShape::make(0.0, 1.0), pulse::PulseError);
    CHECK_THROWS_AS(pulse::LoopShape::make(1.0, -1.0), pulse::PulseError);
    const auto loop = pulse::LoopShape::make(1.0, 1.0);
    CHECK_THROWS_AS(pulse::rabi_at(loop, 1.5), pulse::PulseError);
    CHECK_THROWS_AS(pulse::uv_at(loop, -0.1), pulse::PulseError);
    CHECK_THROWS_AS(pulse::tau_for_peak(0.0, 1.0), pulse::PulseError);
  }

  TEST_CASE("eta = 0 reduces to the single-loop limit") {
    const auto loop = pulse::LoopShape::make(1.0, 0.0);
    for (double t : {0.1, 0.3, 0.6, 0.9}) {
      const pulse::Rabi r = pulse::rabi_at(loop, t);
      CHECK(r.omega == doctest::Approx(kPi * kPi / 2 * std::sin(2 * kPi * t)).epsilon(1e-13));
      CHECK(r.omega0 == 0.0);
    }
  }

  TEST_CASE("drives vanish at the loop ends and the switch") {
    for (double eta : {0.0, 3.0}) {
      const auto loop = pulse::LoopShape::make(2.0, eta);
      for (double t : {0.0, 1.0, 2.0}) {
        const pulse::Rabi r = pulse::rabi_at(loop, t);
        CHECK(std::abs(r.omega) <= 1e-13);
        CHECK(std::abs(r.omega0) <= 1e-13);
      }
    }
  }

  TEST_CASE("quarter-period values against the cotangent form") {
    const pulse::Rabi r = pulse::rabi_at(pulse::LoopShape::make(1.0, 4.0), 0.25);
    const pulse::Rabi fd = rabi_literal(0.25, 1.0, 4.0);
    CHECK(r.omega == doctest::Approx(fd.omega).epsilon(1e-6));
    CHECK(r.omega0 == doctest::Approx(fd.omega0).epsilon(1e-6));
    CHECK(r.omega == doctest::Approx(14.77831).epsilon(1e-6));
    CHECK(r.omega0 == doctest::Approx(0.878666).epsilon(1e-5));
  }

  TEST_CASE("closed form agrees with the cotangent form away from u = 0") {
    const double tau = 1.0;
    for (double eta : {1.0, 4.0, 6.0}) {
      const auto loop = pulse::LoopShape::make(tau, eta);
      for (int k = 1; k < 200; ++k) {
        const double t = 0.5 * k / 200;
        if (u_ref(t, tau) < 0.01) continue;
        const pulse::Rabi r = pulse::rabi_at(loop, t);
        const pulse::Rabi fd = rabi_literal(t, tau, eta);
        const double scale = std::hypot(r.omega, r.omega0);
        // Central differences carry ~1e-8 relative error of their own.
        CHECK(std::abs(r.omega - fd.omega) <= 1e-6 * scale);
        CHECK(std::abs(r.omega0 - fd.omega0) <= 1e-6 * scale);
      }
    }
  }

  TEST_CASE("drive components follow the polar angle") {
    const pulse::Rabi s{2.0, 0.5};
    const auto plan = pulse::phase_plan(pulse::GateSpec::cnot());
    const pulse::PulseSample a = pulse::drive_components(s, pulse::GateSpec::cnot(), plan, 1);
    CHECK(a.omega1 == doctest::Approx(2.0 / std::sqrt(2.0)));
    CHECK(a.omega2 == doctest::Approx(-2.0 / std::sqrt(2.0)));
    CHECK(a.omega0 == 0.5);

    const pulse::PulseSample z = pulse::drive_components(s, {0.0, 0.0, kPi, 1}, plan, 1);
    CHECK(z.omega1 == 0.0);
    CHECK(z.omega2 == -2.0);
    const pulse::PulseSample p = pulse::drive_components(s, {kPi, 0.0, kPi, 1}, plan, 2);
    CHECK(p.omega1 == doctest::Approx(2.0));
    CHECK(std::abs(p.omega2) <= 1e-15);
    CHECK(p.segment == 2);
    CHECK(p.phases.phi2 == plan.segment2.phi2);
  }

  TEST_CASE("phase plan") {
    const auto cnot = pulse::phase_plan(pulse::GateSpec::cnot());
    CHECK(cnot.segment1.phi1 == 0.0);
    CHECK(cnot.segment1.phi2 == 0.0);
    CHECK(cnot.segment2.phi1 == doctest::Approx(kPi));
    CHECK(cnot.segment2.phi2 == doctest::Approx(kPi));

    const auto idle = pulse::phase_plan({1.0, 0.4, 0.0, 1});
    CHECK(idle.segment1.phi1 == idle.segment2.phi1);
    CHECK(idle.segment1.phi2 == idle.segment2.phi2);

    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      const auto g = random_gate(rng);
      const auto plan = pulse::phase_plan(g);
      CHECK(plan.segment1.phi2 == 0.0);
      CHECK(plan.segment2.phi2 == g.gamma);
      CHECK(plan.segment1.phi1 - plan.segment1.phi2 ==
            doctest::Approx(plan.segment2.phi1 - plan.segment2.phi2).epsilon(1e-14));
    }
    CHECK(pulse::PhasePlan{}.switch_time(pulse::LoopShape::make(3.0, 0.0)) == 1.5);
  }

  TEST_CASE("first dark state") {
    const auto d0 = pulse::dark_state_D1({0.0, 0.3, 1.0, 1});
    CHECK(d0["x0"] == Complex(1.0));
    CHECK(std::abs(d0["x1"]) <= 1e-16);
    const double phi = 0.3;
    const auto dpi = pulse::dark_state_D1({kPi, phi, 1.0, 1});
    CHECK(std::abs(dpi["x0"]) <= 1e-16);
    CHECK(std::abs(dpi["x1"] - std::exp(kI * phi)) <= 1e-15);
    const auto dh = pulse::dark_state_D1(pulse::GateSpec::cnot());
    CHECK(dh["x0"].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(dh["x1"].real() == doctest::Approx(1 / std::sqrt(2.0)));
  }

  TEST_CASE("bright and dark states are orthonormal") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
      const auto g = random_gate(rng);
      const auto b = pulse::bright_state(g), d = pulse::dark_state_D1(g);
      CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(std::abs(qlin::inner(b, d)) <= 1e-15);
    }
  }

  TEST_CASE("D1 is annihilated by the effective Hamiltonian") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
      const auto g = random_gate(rng);
      const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 3.0), g);
      const auto h = model::h_eff_2(s);
      const auto h4 = model::reduced_four_level(h(0.3), 2);
      const auto h4b = model::reduced_four_level(h(0.8), 2);
      const auto d = pulse::dark_state_D1(g);
      CHECK(h4.apply(d).norm() <= 1e-13);
      CHECK(h4b.apply(d).norm() <= 1e-13);
    }
  }

  TEST_CASE("second dark path landmarks") {
    const auto g = pulse::GateSpec{1.1, 0.6, 2.0, 1};
    const auto loop = pulse::LoopShape::make(1.0, 4.0);
    const auto plan = pulse::phase_plan(g);
    const auto start = pulse::dark_path_D2(loop, g, plan, 0.0);
    CHECK(std::abs(std::abs(qlin::inner(pulse::bright_state(g), start)) - 1.0) <= 1e-15);
    CHECK(qlin::max_abs(start.amplitudes() - pulse::bright_state(g).amplitudes()) <= 1e-15);

    const auto mid = pulse::dark_path_D2(loop, g, plan, 0.5);
    CHECK(std::abs(mid["xr"] - (-kI)) <= 1e-15);
    CHECK(std::abs(mid["x0"]) <= 1e-15);
    CHECK(std::abs(mid["yr"]) <= 1e-15);

    const auto end = pulse::dark_path_D2(loop, g, plan, 1.0);
    const qlin::Vector want = std::exp(kI * plan.segment2.phi2) * pulse::bright_state(g).amplitudes();
    CHECK(qlin::max_abs(end.amplitudes() - want) <= 1e-14);
  }

  TEST_CASE("dark paths stay orthogonal and unit norm") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> eta_dist(0.0, 6.0);
    for (int i = 0; i < 20; ++i) {
      const auto g = random_gate(rng);
      const auto loop = pulse::LoopShape::make(1.0, eta_dist(rng));
      const auto plan = pulse::phase_plan(g);
      const auto d1 = pulse::dark_state_D1(g);
      double worst_overlap = 0.0, worst_norm = 0.0;
      for (int k = 0; k <= 1000; ++k) {
        const auto d2 = pulse::dark_path_D2(loop, g, plan, k / 1000.0);
        worst_overlap = std::max(worst_overlap, std::abs(qlin::inner(d1, d2)));
        worst_norm = std::max(worst_norm, std::abs(d2.norm() - 1.0));
      }
      CHECK(worst_overlap <= 1e-12);
      CHECK(worst_norm <= 1e-12);
    }
  }

  TEST_CASE("peak envelope") {
    CHECK(pulse::peak_envelope(pulse::LoopShape::make(1.0, 0.0)) == doctest::Approx(kPi * kPi / 2).epsilon(1e-9));

    // Dense scan of sqrt(Omega^2 + Omega0^2) as the oracle.
    const auto loop = pulse::LoopShape::make(1.0, 4.0);
    double scan = 0.0;
    for (int k = 0; k <= 200000; ++k) {
      const pulse::Rabi r = pulse::rabi_at(loop, k / 200000.0);
      scan = std::max(scan, std::hypot(r.omega, r.omega0));
    }
    const double peak = pulse::peak_envelope(loop);
    CHECK(peak == doctest::Approx(scan).epsilon(1e-9));
    CHECK(peak > kPi * kPi / 2);
    CHECK(peak <= kPi * kPi / 2 * std::sqrt(17.0));

    const double p2 = pulse::peak_envelope(pulse::LoopShape::make(2.0, 4.0));
    CHECK(p2 / peak == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("tau calibration") {
    CHECK(pulse::tau_for_peak(kPi * kPi / 2, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    const double t1 = pulse::tau_for_peak(100.0, 4.0);
    CHECK(pulse::tau_for_peak(200.0, 4.0) == doctest::Approx(t1 / 2).epsilon(1e-12));
    CHECK(pulse::peak_envelope(pulse::LoopShape::make(t1, 4.0)) == doctest::Approx(100.0).epsilon(1e-9));
  }

  TEST_CASE("schedule samples") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 2.0), pulse::GateSpec::cz());
    CHECK(s.segment_at(0.49) == 1);
    CHECK(s.segment_at(0.5) == 2);
    const auto a = s.sample(0.2), b = s.sample(0.7);
    CHECK(a.segment == 1);
    CHECK(b.segment == 2);
    CHECK(b.phases.phi2 == doctest::Approx(kPi));
    const pulse::Rabi r = pulse::rabi_at(s.loop(), 0.2);
    CHECK(a.omega == r.omega);
    CHECK(a.omega2 == doctest::Approx(-r.omega));
    CHECK(s.peak() == doctest::Approx(pulse::peak_envelope(s.loop())));
  }
}
