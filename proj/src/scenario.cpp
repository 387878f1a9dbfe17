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

#include "rydhol/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <thread>

#include "rydhol/config.hpp"

#ifndef RYDHOL_VERSION
#define RYDHOL_VERSION "0.0.0"
#endif

namespace rydhol::expcli {

namespace {

bool same_gate(const pulse::GateSpec& a, const pulse::GateSpec& b) {
  return a.theta == b.theta && a.phi == b.phi && a.gamma == b.gamma && a.n_controls == b.n_controls;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Builtin {
  std::string summary;
  Scenario scenario;
};

Scenario base(const std::string& name, const pulse::GateSpec& gate) {
  Scenario s;
  s.name = name;
  s.gate = gate;
  s.calibration.omega_max = 1000.0;
  return s;
}

const std::map<std::string, Builtin>& builtins() {
  static const std::map<std::string, Builtin> table = [] {
    using model::ModelKind;
    const auto eps = expand_range(-0.2, 0.2, 0.02);
    const auto alpha = expand_range(-0.1, 0.1, 0.01);
    const auto kappa = expand_range(0.0, 2.0, 0.25);
    std::map<std::string, Builtin> t;

    auto eps_sweep = [&](const std::string& name, const pulse::GateSpec& gate, std::vector<double> etas,
                         bool noisy) {
      Scenario s = base(name, gate);
      s.sweep.eta = std::move(etas);
      s.sweep.epsilon = eps;
      if (noisy) {
        s.kappa_z = 1.0;
        s.sweep.kappa = {1.0};
      }
      return s;
    };
    auto landscape = [&](const std::string& name, const pulse::GateSpec& gate) {
      Scenario s = base(name, gate);
      s.kappa_z = 1.0;
      s.sweep.eta = {0.0, 4.0};
      s.sweep.kappa = kappa;
      s.sweep.alpha = alpha;
      s.plot = PlotKind::heatmap;
      return s;
    };

    t["fig3a"] = {"CNOT vs global error, effective model, no dissipation",
                  eps_sweep("fig3a", pulse::GateSpec::cnot(), {0.0, 4.0}, false)};
    t["fig3b"] = {"CZ vs global error, effective model, no dissipation",
                  eps_sweep("fig3b", pulse::GateSpec::cz(), {0.0, 4.0}, false)};
    t["fig3c"] = {"CNOT vs global error, effective model, kappa = kappa_z",
                  eps_sweep("fig3c", pulse::GateSpec::cnot(), {0.0, 4.0}, true)};
    t["fig3d"] = {"CZ vs global error, effective model, kappa = kappa_z",
                  eps_sweep("fig3d", pulse::GateSpec::cz(), {0.0, 4.0}, true)};
    t["fig4"] = {"CNOT landscape over local error and decay rate", landscape("fig4", pulse::GateSpec::cnot())};
    t["fig7a"] = {"CCNOT vs global error, effective model, no dissipation",
                  eps_sweep("fig7a", pulse::GateSpec::ccnot(), {0.0, 2.0, 4.0, 6.0}, false)};
    t["fig7b"] = {"CCNOT vs global error, effective model, kappa = kappa_z",
                  eps_sweep("fig7b", pulse::GateSpec::ccnot(), {0.0, 2.0, 4.0, 6.0}, true)};
    t["fig8"] = {"CCNOT landscape over local error and decay rate", landscape("fig8", pulse::GateSpec::ccnot())};

    Scenario fig9 = base("fig9", pulse::GateSpec::cnot());
    fig9.kappa_z = 1.0;
    fig9.sweep.model = {ModelKind::full, ModelKind::effective};
    fig9.sweep.eta = {2.0, 4.0};
    fig9.sweep.kappa = {1.0};
    fig9.sweep.alpha = alpha;
    t["fig9"] = {"CNOT full vs effective model over local error, kappa = kappa_z", fig9};

    Scenario fig10 = base("fig10", pulse::GateSpec::ccnot());
    fig10.kappa_z = 1.0;
    fig10.sweep.model = {ModelKind::rotating, ModelKind::effective};
    fig10.sweep.eta = {4.0};
    fig10.sweep.u12 = {0.0, 10000.0};  // U13 / 5 at the default calibration
    fig10.sweep.kappa = {1.0};
    fig10.sweep.alpha = alpha;
    t["fig10"] = {"CCNOT rotating-frame vs effective model over local error, U12 in {0, U13/5}", fig10};
    return t;
  }();
  return table;
}

}  // namespace

std::size_t Sweep::size() const {
  return model.size() * eta.size() * u12.size() * kappa.size() * alpha.size() * epsilon.size();
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::none: return "none";
    case PlotKind::lines: return "lines";
    case PlotKind::heatmap: return "heatmap";
  }
  return "?";
}

PlotKind parse_plot_kind(const std::string& text) {
  if (text == "none") return PlotKind::none;
  if (text == "lines") return PlotKind::lines;
  if (text == "heatmap") return PlotKind::heatmap;
  throw ScenarioError("unknown plot kind '" + text + "'");
}

std::string Scenario::gate_name() const {
  if (same_gate(gate, pulse::GateSpec::cnot())) return "CNOT";
  if (same_gate(gate, pulse::GateSpec::cz())) return "CZ";
  if (same_gate(gate, pulse::GateSpec::ccnot())) return "CCNOT";
  return "custom";
}

bool Scenario::dissipative() const {
  return kappa_z != 0.0 || std::any_of(sweep.kappa.begin(), sweep.kappa.end(), [](double k) { return k != 0.0; });
}

void Scenario::validate() const {
  auto fail = [this](const std::string& why) { throw ScenarioError("scenario '" + name + "': " + why); };
  if (name.empty()) fail("name is empty");
  if (gate.n_controls < 1) fail("at least one control is required");
  if (atoms() > model::kDefaultMaxAtoms) fail("atom count exceeds " + std::to_string(model::kDefaultMaxAtoms));
  if (sweep.model.empty() || sweep.eta.empty() || sweep.u12.empty() || sweep.kappa.empty() || sweep.alpha.empty() ||
      sweep.epsilon.empty()) {
    fail("every sweep axis needs at least one value");
  }
  for (double e : sweep.eta)
    if (!(e >= 0.0)) fail("eta must be non-negative");
  for (double k : sweep.kappa)
    if (!(k >= 0.0)) fail("kappa must be non-negative");
  if (!(kappa_z >= 0.0)) fail("kappa_z must be non-negative");
  if (atoms() != 3 && (sweep.u12.size() != 1 || sweep.u12[0] != 0.0)) {
    fail("the u12 axis applies to three-atom systems only; leave it at 0");
  }
  if (calibration.omega_max < 0.0 || calibration.tau < 0.0) fail("calibration values must be positive");
  if (dissipative() && calibration.omega_max == 0.0 && calibration.tau == 0.0) {
    fail("dissipative scenarios need calibration.omega_max or calibration.tau");
  }
  for (auto kind : sweep.model) {
    if (kind == model::ModelKind::effective) continue;
    if (calibration.omega_max == 0.0) fail(model::to_string(kind) + " model needs calibration.omega_max");
    if (!(detuning_ratio > 0.0)) fail("detuning_ratio must be positive");
    if (kind == model::ModelKind::rotating && atoms() > 3) fail("rotating model is available for two and three atoms");
  }
  if (points_per_period != 0 && points_per_period < 10) fail("points_per_period must be 0 or at least 10");
}

bool Scenario::operator==(const Scenario& o) const {
  return name == o.name && same_gate(gate, o.gate) && detuning_ratio == o.detuning_ratio && kappa_z == o.kappa_z &&
         calibration == o.calibration && sweep == o.sweep && points_per_period == o.points_per_period &&
         plot == o.plot;
}

std::vector<GridPoint> grid(const Sweep& sweep) {
  std::vector<GridPoint> out;
  out.reserve(sweep.size());
  for (auto m : sweep.model)
    for (double eta : sweep.eta)
      for (double u12 : sweep.u12)
        for (double kappa : sweep.kappa)
          for (double alpha : sweep.alpha)
            for (double eps : sweep.epsilon) out.push_back({m, eta, u12, kappa, alpha, eps});
  return out;
}

PointSetup resolve(const Scenario& s, const GridPoint& p) {
  const double omega_max = s.calibration.omega_max;
  double tau = 1.0;
  if (s.calibration.tau > 0.0) {
    tau = s.calibration.tau;
  } else if (omega_max > 0.0) {
    tau = pulse::tau_for_peak(omega_max, p.eta);
  }
  pulse::PulseSchedule schedule(pulse::LoopShape::make(tau, p.eta), s.gate);

  const double delta = s.detuning_ratio * omega_max;
  const int n = s.atoms();
  model::SystemSpec system;
  double u12_used = 0.0;
  if (n == 2) {
    system = model::TwoAtomSpec{delta, delta};
    u12_used = delta;
  } else if (n == 3) {
    // control-target interactions fixed at delta/2; the detuning follows U12
    const double w = delta / 2;
    system = model::ThreeAtomSpec{2 * w + p.u12, p.u12, w, w};
    u12_used = p.u12;
  } else {
    system = model::ChainSpec{n, delta, delta / (n - 1)};
  }

  evolve::StepPolicy policy;
  policy.points_per_period = s.points_per_period > 0 ? s.points_per_period
                             : p.model == model::ModelKind::effective ? kEffectivePointsPerPeriod
                                                                       : kFullPointsPerPeriod;
  return {std::move(schedule), system, model::NoiseSpec::with_equal_branches(p.kappa, s.kappa_z), policy, u12_used};
}

SweepRow run_point(const Scenario& s, const GridPoint& p) { return run_point(s, p, resolve(s, p).policy); }

SweepRow run_point(const Scenario& s, const GridPoint& p, const evolve::StepPolicy& policy) {
  SweepRow row;
  row.point = p;
  try {
    const PointSetup setup = resolve(s, p);
    row.tau = setup.schedule.tau();
    row.u12_used = setup.u12_used;
    const model::HamiltonianFn h =
        model::build_hamiltonian(p.model, setup.system, setup.schedule, {p.epsilon, p.alpha});
    const gate::BenchmarkSet set = gate::benchmark_states(s.atoms());
    const qlin::Operator ideal = gate::ideal_controlled_gate(s.gate, s.atoms());

    gate::FidelityReport report;
    if (setup.noise.is_zero()) {
      const auto u = evolve::propagate_unitary(h, 0.0, row.tau, policy);
      report = gate::average_fidelity(u.propagator, ideal, set);
      row.trace_drift = u.unitarity_drift;
      row.steps = u.steps;
    } else {
      const auto channels = model::build_channels(setup.system, setup.noise);
      std::vector<qlin::DensityMatrix> finals;
      finals.reserve(set.states.size());
      row.min_eigenvalue = std::numeric_limits<double>::infinity();
      for (const auto& psi : set.states) {
        auto r = evolve::lindblad_evolve(h, channels, qlin::DensityMatrix::pure(psi), 0.0, row.tau, policy);
        row.trace_drift = std::max(row.trace_drift, r.max_trace_drift);
        row.hermiticity_drift = std::max(row.hermiticity_drift, r.max_hermiticity_drift);
        row.min_eigenvalue = std::min(row.min_eigenvalue, r.min_eigenvalue_seen);
        row.steps += r.steps;
        finals.push_back(std::move(r.final_state));
      }
      report = gate::average_fidelity(finals, ideal, set);
    }
    row.fidelity = report.average;
    row.min_state_fidelity = report.min_state();
  } catch (const std::exception& e) {
    row.fidelity = std::numeric_limits<double>::quiet_NaN();
    row.min_state_fidelity = std::numeric_limits<double>::quiet_NaN();
    row.error = e.what();
  }
  return row;
}

SweepResult run_scenario(const Scenario& s, const RunOptions& options) {
  s.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<GridPoint> points = grid(s.sweep);
  std::vector<SweepRow> rows(points.size());

  int workers = options.workers > 0 ? options.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(1, points.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = run_point(s, points[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  SweepResult result{s, std::move(rows), library_version(), utc_now(), 0.0};
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"fig3a", "fig3b", "fig3c", "fig3d", "fig4",
                                              "fig7a", "fig7b", "fig8",  "fig9",  "fig10"};
  return names;
}

std::string builtin_summary(const std::string& name) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) throw ScenarioError("unknown builtin scenario '" + name + "'");
  return it->second.summary;
}

Scenario builtin(const std::string& name) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) throw ScenarioError("unknown builtin scenario '" + name + "'");
  return it->second.scenario;
}

std::string library_version() { return RYDHOL_VERSION; }

}  // namespace rydhol::expcli
