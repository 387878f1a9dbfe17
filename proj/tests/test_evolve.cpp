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
#include <numbers>

#include "doctest.h"
#include "rydhol/evolve.hpp"
#include "rydhol/gate.hpp"
#include "rydhol/model.hpp"

using namespace rydhol;
using qlin::Complex;
using qlin::kI;
using qlin::Matrix;

namespace {

const qlin::Basis kTwo{"g", "e"};

// Constant resonant drive omega (|e><g| + |g><e|).
model::HamiltonianFn rabi_drive(double omega) {
  return {kTwo,
          [omega](double, Matrix& out) {
            out = Matrix::Zero(2, 2);
            out(0, 1) = omega;
            out(1, 0) = omega;
          },
          omega};
}

model::HamiltonianFn zero_hamiltonian(const qlin::Basis& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  return {b, [n](double, Matrix& out) { out = Matrix::Zero(n, n); }, 0.0};
}

evolve::StepPolicy fixed_dt(double dt) {
  evolve::StepPolicy p;
  p.dt_max = dt;
  return p;
}

}  // namespace

TEST_SUITE("evolve") {
  TEST_CASE("step size follows the fastest frequency") {
    const auto h = rabi_drive(3.0);
    evolve::StepPolicy p;
    CHECK(evolve::step_size(h, p) == doctest::Approx(2 * std::numbers::pi / (40 * 3.0)));
    p.dt_max = 1e-3;
    CHECK(evolve::step_size(h, p) == 1e-3);
    CHECK_THROWS_AS(evolve::step_size(zero_hamiltonian(kTwo), evolve::StepPolicy{}), std::invalid_argument);
    evolve::StepPolicy bad;
    bad.points_per_period = 3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.dt_max = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("argument checks") {
    const auto h = rabi_drive(1.0);
    const auto g = qlin::Ket::basis_state(kTwo, "g");
    CHECK_THROWS_AS(evolve::propagate_ket(h, g, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(evolve::propagate_ket(h, qlin::Ket(qlin::Vector::Ones(2), kTwo), 0.0, 1.0),
                    std::invalid_argument);
    const auto g3 = qlin::Ket::basis_state({"a", "b", "c"}, "a");
    CHECK_THROWS_AS(evolve::propagate_ket(h, g3, 0.0, 1.0), qlin::LinalgError);
  }

  TEST_CASE("Rabi oscillation") {
    const double omega = 2.3;
    evolve::StepPolicy p;
    p.points_per_period = 1000;
    for (double t : {0.2, 0.7, 1.3}) {
      const auto r = evolve::propagate_ket(rabi_drive(omega), qlin::Ket::basis_state(kTwo, "g"), 0.0, t, p);
      CHECK(std::abs(std::norm(r.final_state["e"]) - std::pow(std::sin(omega * t), 2)) <= 1e-10);
      CHECK(r.max_norm_drift <= 1e-10);
    }
  }

  TEST_CASE("propagator columns are propagated basis states") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 4.0), pulse::GateSpec{0.8, 0.3, 1.4, 1});
    const auto h = model::h_eff_2(s, {0.05, -0.02});
    evolve::StepPolicy p;
    p.points_per_period = 200;
    const auto u = evolve::propagate_unitary(h, 0.0, 1.0, p);
    CHECK(u.unitarity_drift <= 1e-8);
    const auto& b = h.basis();
    for (const auto& label : {"e0", "e1", "gr", "er"}) {
      const auto col = static_cast<Eigen::Index>(qlin::index_of(b, label));
      const auto k = evolve::propagate_ket(h, qlin::Ket::basis_state(b, label), 0.0, 1.0, p);
      // propagate_ket renormalizes its final state.
      const qlin::Vector c = u.propagator.entries().col(col);
      CHECK(qlin::max_abs(c / c.norm() - k.final_state.amplitudes()) <= 1e-12);
    }
  }

  TEST_CASE("propagators compose across the switch") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 2.0), pulse::GateSpec::cnot());
    const auto h = model::h_eff_2(s);
    evolve::StepPolicy p;
    p.points_per_period = 200;
    const auto whole = evolve::propagator(h, 0.0, 1.0, p);
    const auto parts = evolve::propagator(h, 0.5, 1.0, p) * evolve::propagator(h, 0.0, 0.5, p);
    CHECK(qlin::max_abs(whole.entries() - parts.entries()) <= 1e-12);
    CHECK(h.breakpoints() == std::vector<double>{0.5});
  }

  TEST_CASE("RK4 converges at fourth order") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 4.0), pulse::GateSpec{1.0, 0.4, 2.0, 1});
    const auto h = model::h_eff_2(s, {0.1, 0.0});
    const auto psi0 = qlin::Ket::basis_state(h.basis(), "e0");
    std::vector<qlin::Vector> out;
    for (int ppp : {40, 80, 160}) {
      evolve::StepPolicy p;
      p.points_per_period = ppp;
      p.monitors_on = false;
      out.push_back(evolve::propagate_ket(h, psi0, 0.0, 1.0, p).final_state.amplitudes());
    }
    const double ratio = (out[1] - out[0]).norm() / (out[2] - out[1]).norm();
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.3));
  }

  TEST_CASE("adaptive integrator agrees with fixed-step RK4") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 4.0), pulse::GateSpec::cnot());
    const auto h = model::h_eff_2(s);
    const auto psi0 = qlin::Ket::basis_state(h.basis(), "e0");
    evolve::StepPolicy fixed;
    fixed.points_per_period = 400;
    evolve::StepPolicy adaptive;
    adaptive.adaptive = true;
    adaptive.tolerance = 1e-11;
    const auto a = evolve::propagate_ket(h, psi0, 0.0, 1.0, fixed);
    const auto b = evolve::propagate_ket(h, psi0, 0.0, 1.0, adaptive);
    CHECK(qlin::max_abs(a.final_state.amplitudes() - b.final_state.amplitudes()) <= 1e-8);
    CHECK(b.steps < a.steps);
  }

  TEST_CASE("spontaneous decay of the control atom") {
    const auto basis = model::system_basis(2);
    const double kappa = 0.7;
    auto channels = model::channels_2({kappa, 0.0, 0.0, 0.0});
    const auto rho0 = qlin::DensityMatrix::pure(qlin::Ket::basis_state(basis, "e0"));
    for (double t : {0.5, 1.5}) {
      const auto r = evolve::lindblad_evolve(zero_hamiltonian(basis), channels, rho0, 0.0, t, fixed_dt(1e-3));
      CHECK(r.final_state("e0", "e0").real() == doctest::Approx(std::exp(-kappa * t)).epsilon(1e-10));
      CHECK(r.final_state("g0", "g0").real() == doctest::Approx(1 - std::exp(-kappa * t)).epsilon(1e-10));
      CHECK(r.max_trace_drift <= 1e-12);
    }
  }

  TEST_CASE("target branching splits the Rydberg population") {
    const auto basis = model::system_basis(2);
    const auto channels = model::channels_2(model::NoiseSpec::with_equal_branches(1.0, 0.0));
    const auto rho0 = qlin::DensityMatrix::pure(qlin::Ket::basis_state(basis, "gr"));
    const auto r = evolve::lindblad_evolve(zero_hamiltonian(basis), channels, rho0, 0.0, 2.0, fixed_dt(1e-3));
    // Two branches at kappa/2 each give a total decay rate kappa.
    CHECK(r.final_state("gr", "gr").real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(r.final_state("g0", "g0").real() == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-10));
    CHECK(r.final_state("g1", "g1").real() == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-10));
  }

  TEST_CASE("dephasing damps coherences at twice the rate") {
    const auto basis = model::system_basis(2);
    const double kz = 0.4;
    const auto channels = model::channels_2({0.0, kz, 0.0, 0.0});
    qlin::Vector v = qlin::Vector::Zero(6);
    v(qlin::index_of(basis, "g0")) = 1 / std::sqrt(2.0);
    v(qlin::index_of(basis, "e0")) = 1 / std::sqrt(2.0);
    const auto rho0 = qlin::DensityMatrix::pure(qlin::Ket(v, basis));
    const double t = 1.25;
    const auto r = evolve::lindblad_evolve(zero_hamiltonian(basis), channels, rho0, 0.0, t, fixed_dt(1e-3));
    CHECK(std::abs(r.final_state("g0", "e0")) == doctest::Approx(0.5 * std::exp(-2 * kz * t)).epsilon(1e-10));
    CHECK(r.final_state("g0", "g0").real() == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("zero rates reproduce the pure-state evolution") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, 4.0), pulse::GateSpec::cnot());
    const auto h = model::h_eff_2(s, {-0.1, 0.05});
    evolve::StepPolicy p;
    p.points_per_period = 200;
    const auto bench = gate::benchmark_states(2);
    for (std::size_t i = 0; i < bench.states.size(); i += 7) {
      const auto& psi = bench.states[i];
      const auto ket = evolve::propagate_ket(h, psi, 0.0, 1.0, p).final_state;
      const auto rho = evolve::lindblad_evolve(h, model::channels_2({}), qlin::DensityMatrix::pure(psi), 0.0, 1.0, p);
      const double f = qlin::expectation(ket, qlin::Operator(rho.final_state.entries(), h.basis())).real();
      CHECK(f == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("dissipative gate keeps the density matrix physical") {
    const pulse::PulseSchedule s(pulse::LoopShape::make(pulse::tau_for_peak(1000.0, 4.0), 4.0), pulse::GateSpec::cnot());
    const auto h = model::h_eff_2(s);
    const auto channels = model::channels_2(model::NoiseSpec::with_equal_branches(1.0, 1.0));
    evolve::StepPolicy p;
    p.points_per_period = 200;
    const auto psi = gate::benchmark_states(2).states[20];
    const auto r = evolve::lindblad_evolve(h, channels, qlin::DensityMatrix::pure(psi), 0.0, s.tau(), p);
    CHECK(r.max_trace_drift <= 1e-8);
    CHECK(r.max_hermiticity_drift <= 1e-10);
    CHECK(r.min_eigenvalue_seen >= -1e-7);
    CHECK(r.final_state.min_eigenvalue() >= -1e-7);
    CHECK(std::abs(r.final_state.trace() - Complex(1.0)) <= 1e-8);
  }
}
