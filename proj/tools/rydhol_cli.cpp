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

// rydhol: pulse synthesis, gate inspection and scenario sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rydhol/acceptance.hpp"
#include "rydhol/config.hpp"
#include "rydhol/gate.hpp"
#include "rydhol/pulse.hpp"
#include "rydhol/report.hpp"
#include "rydhol/scenario.hpp"

namespace {

using namespace rydhol;

struct GateArgs {
  std::string preset = "cnot";
  double theta = 0.0, phi = 0.0, gamma = 0.0;
  bool custom = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--gate", preset, "cnot, cz or ccnot")->check(CLI::IsMember({"cnot", "cz", "ccnot"}));
    auto* t = cmd->add_option("--theta", theta, "rotation polar angle (overrides --gate)");
    auto* p = cmd->add_option("--phi", phi, "rotation azimuth");
    auto* g = cmd->add_option("--gamma", gamma, "rotation angle");
    t->needs(p)->needs(g);
    p->needs(t);
    g->needs(t);
    cmd->callback([this, t] { custom = t->count() > 0; });
  }

  pulse::GateSpec spec() const {
    pulse::GateSpec g = preset == "cz" ? pulse::GateSpec::cz()
                        : preset == "ccnot" ? pulse::GateSpec::ccnot()
                                            : pulse::GateSpec::cnot();
    if (custom) g = {theta, phi, gamma, g.n_controls};
    return g;
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int synth(const GateArgs& gate_args, double eta, double tau, double omega_max, int points, const std::string& out) {
  if (points < 2) throw std::invalid_argument("--points must be at least 2");
  if (omega_max > 0.0) tau = pulse::tau_for_peak(omega_max, eta);
  const pulse::PulseSchedule s(pulse::LoopShape::make(tau, eta), gate_args.spec());
  std::ostringstream os;
  os << "t,omega,omega0,omega1,omega2,phi1,phi2,segment\n";
  for (int k = 0; k < points; ++k) {
    const double t = tau * k / (points - 1);
    const pulse::PulseSample p = s.sample(t);
    os << num(t) << ',' << num(p.omega) << ',' << num(p.omega0) << ',' << num(p.omega1) << ',' << num(p.omega2)
       << ',' << num(p.phases.phi1) << ',' << num(p.phases.phi2) << ',' << p.segment << "\n";
  }
  if (out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    f << os.str();
  }
  return 0;
}

int show_gate(const GateArgs& gate_args, double eta) {
  const pulse::GateSpec g = gate_args.spec();
  const qlin::Operator u = gate::ideal_rotation(g);
  std::printf("theta=%.12g phi=%.12g gamma=%.12g controls=%d\n", g.theta, g.phi, g.gamma, g.n_controls);
  std::printf("ideal block on (|0>, |1>):\n");
  for (int i = 0; i < 2; ++i) {
    std::printf("  ");
    for (int j = 0; j < 2; ++j) {
      const auto z = u.entries()(i, j);
      std::printf("% .6f%+.6fi  ", z.real(), z.imag());
    }
    std::printf("\n");
  }
  const pulse::PulseSchedule s(pulse::LoopShape::make(1.0, eta), g);
  const auto check = gate::holonomy_check(s, g.n_controls + 1);
  std::printf("holonomy deviation (eta=%g): %.3e\n", eta, check.deviation);
  return 0;
}

int run(const std::string& target, const std::string& out_dir, int workers, const std::string& model_override,
        double omega_max, bool svg) {
  expcli::Scenario s;
  const auto& names = expcli::builtin_names();
  if (std::find(names.begin(), names.end(), target) != names.end()) {
    s = expcli::builtin(target);
  } else {
    s = expcli::load_config(target);
  }
  if (!model_override.empty()) s.sweep.model = {model::parse_model_kind(model_override)};
  if (omega_max > 0.0) s.calibration.omega_max = omega_max;
  s.validate();

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path stem = std::filesystem::path(out_dir) / s.name;
  std::fprintf(stderr, "running %s: %zu grid points\n", s.name.c_str(), s.sweep.size());
  const expcli::SweepResult r = expcli::run_scenario(s, {workers});

  expcli::emit_csv(r, stem.string() + ".csv");
  expcli::emit_metadata(r, stem.string() + ".meta.json");
  std::printf("wrote %s.csv (%zu rows, %.1f s)\n", stem.string().c_str(), r.rows.size(), r.seconds);
  if (svg) {
    const auto kind = s.plot == expcli::PlotKind::none ? expcli::PlotKind::lines : s.plot;
    expcli::emit_svg(r, kind, stem.string() + ".svg");
    std::printf("wrote %s.svg\n", stem.string().c_str());
  }
  std::size_t failed = 0;
  for (const auto& row : r.rows) failed += row.ok() ? 0 : 1;
  if (failed) std::fprintf(stderr, "%zu rows recorded errors; see %s.meta.json\n", failed, stem.string().c_str());
  return 0;
}

int list(bool verbose) {
  for (const auto& name : expcli::builtin_names()) {
    const auto s = expcli::builtin(name);
    std::printf("%-6s %4zu rows  %s\n", name.c_str(), s.sweep.size(), expcli::builtin_summary(name).c_str());
    if (verbose) std::printf("%s\n", expcli::emit_config(s).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark-path holonomic gates on Rydberg atoms: pulses, gates and fidelity sweeps"};
  app.require_subcommand(1);

  auto* synth_cmd = app.add_subcommand("synth", "Write the drive waveforms of one loop as CSV");
  GateArgs synth_gate;
  synth_gate.add(synth_cmd);
  double eta = 4.0, tau = 1.0, omega_max = 0.0;
  int points = 1001;
  std::string out;
  synth_cmd->add_option("--eta", eta, "control-drive parameter")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--tau", tau, "loop duration")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--omega-max", omega_max, "peak amplitude; sets tau")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--points", points, "samples over [0, tau]");
  synth_cmd->add_option("--out", out, "output file (default stdout)");

  auto* gate_cmd = app.add_subcommand("gate", "Print the ideal gate block and the holonomy deviation");
  GateArgs gate_gate;
  gate_gate.add(gate_cmd);
  double gate_eta = 4.0;
  gate_cmd->add_option("--eta", gate_eta, "control-drive parameter")->check(CLI::NonNegativeNumber);

  auto* run_cmd = app.add_subcommand("run", "Run a builtin scenario or a config file");
  std::string target, out_dir = "out", model_override;
  int workers = 0;
  double run_omega = 0.0;
  bool svg = false;
  run_cmd->add_option("scenario", target, "builtin name or config path")->required();
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--workers", workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--model", model_override, "override the model axis")
      ->check(CLI::IsMember({"full", "rotating", "effective"}));
  run_cmd->add_option("--omega-max", run_omega, "peak amplitude in units of kappa_z")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--svg", svg, "also write an SVG plot");

  auto* list_cmd = app.add_subcommand("list", "List builtin scenarios");
  bool verbose = false;
  list_cmd->add_flag("--verbose,-v", verbose, "print each scenario as a config file");

  auto* validate_cmd = app.add_subcommand("validate", "Run the acceptance suite");
  expcli::AcceptanceOptions acceptance;
  validate_cmd->add_option("--workers", acceptance.workers, "worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  validate_cmd->add_option("--only", acceptance.only, "criterion ids to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) return synth(synth_gate, eta, tau, omega_max, points, out);
    if (*gate_cmd) return show_gate(gate_gate, gate_eta);
    if (*run_cmd) return run(target, out_dir, workers, model_override, run_omega, svg);
    if (*list_cmd) return list(verbose);
    if (*validate_cmd) return expcli::validate(acceptance, std::cout).all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
