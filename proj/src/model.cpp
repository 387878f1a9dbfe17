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

#include "rydhol/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace rydhol::model {

using qlin::Basis;
using qlin::Complex;
using qlin::kI;
using qlin::Matrix;
using qlin::Operator;
using qlin::RealVector;

namespace {

constexpr double kRegimeTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kRegimeTol * std::max({1.0, std::abs(a), std::abs(b)}); }

// Product configuration of the chain: control bits (0 = g, 1 = e) and the
// target level (0, 1, 2 = r).
struct Config {
  std::vector<int> controls;
  int target = 0;
};

Config decode(Eigen::Index index, int n_atoms) {
  Config c;
  c.controls.resize(static_cast<std::size_t>(n_atoms - 1));
  c.target = static_cast<int>(index % 3);
  auto rest = index / 3;
  for (int i = n_atoms - 2; i >= 0; --i) {
    c.controls[static_cast<std::size_t>(i)] = static_cast<int>(rest % 2);
    rest /= 2;
  }
  return c;
}

Eigen::Index encode(const Config& c) {
  Eigen::Index rest = 0;
  for (int bit : c.controls) rest = rest * 2 + bit;
  return rest * 3 + c.target;
}

Eigen::Index dimension(int n_atoms) { return 3 * (Eigen::Index{1} << (n_atoms - 1)); }

enum class Drive { control = 0, target0 = 1, target1 = 2 };

struct Transition {
  Eigen::Index upper;
  Eigen::Index lower;
  Drive drive;
  double frame_rate;  // extra factor exp(i frame_rate t)
};

// Immutable state shared by the evaluator closure.
struct DriveModel {
  Basis basis;
  std::vector<Transition> transitions;
  RealVector diagonal;  // empty when the model carries no static energies
  bool carrier = true;  // exp(-i delta t) on every drive
  double delta = 0.0;
  pulse::PulseSchedule schedule;
  DriveErrors errors;
};

std::vector<Transition> chain_transitions(int n_atoms) {
  std::vector<Transition> out;
  const Eigen::Index dim = dimension(n_atoms);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Config c = decode(i, n_atoms);
    if (c.controls[0] == 0) {
      Config up = c;
      up.controls[0] = 1;
      out.push_back({encode(up), i, Drive::control, 0.0});
    }
    if (c.target != 2) {
      Config up = c;
      up.target = 2;
      out.push_back({encode(up), i, c.target == 0 ? Drive::target0 : Drive::target1, 0.0});
    }
  }
  return out;
}

double drive_peak(const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return schedule.peak() * std::abs(1.0 + errors.epsilon) * std::max(1.0, std::abs(1.0 + errors.alpha));
}

HamiltonianFn make_fn(std::shared_ptr<const DriveModel> m, double max_frequency) {
  const Eigen::Index dim = static_cast<Eigen::Index>(m->basis.size());

  // distinct frame rates, so each exponential is evaluated once per call
  std::vector<double> rates;
  std::vector<std::size_t> rate_of;
  for (const Transition& tr : m->transitions) {
    auto it = std::find(rates.begin(), rates.end(), tr.frame_rate);
    if (it == rates.end()) it = rates.insert(rates.end(), tr.frame_rate);
    rate_of.push_back(static_cast<std::size_t>(it - rates.begin()));
  }

  auto eval = [m, dim, rates, rate_of](double t, Matrix& out) {
    out.setZero(dim, dim);
    const pulse::PulseSample s = m->schedule.sample(t);
    const double control_scale = 1.0 + m->errors.epsilon;
    const double target_scale = control_scale * (1.0 + m->errors.alpha);
    const Complex carrier = m->carrier ? std::exp(-kI * m->delta * t) : Complex(1.0);
    const Complex amp[3] = {
        control_scale * s.omega0 * carrier,
        target_scale * s.omega1 * std::exp(-kI * s.phases.phi1) * carrier,
        target_scale * s.omega2 * std::exp(-kI * s.phases.phi2) * carrier,
    };
    Complex frame[16];
    std::vector<Complex> frame_heap;
    Complex* f = frame;
    if (rates.size() > 16) {
      frame_heap.resize(rates.size());
      f = frame_heap.data();
    }
    for (std::size_t k = 0; k < rates.size(); ++k) f[k] = rates[k] == 0.0 ? Complex(1.0) : std::exp(kI * rates[k] * t);
    for (std::size_t k = 0; k < m->transitions.size(); ++k) {
      const Transition& tr = m->transitions[k];
      const Complex val = amp[static_cast<int>(tr.drive)] * f[rate_of[k]];
      out(tr.upper, tr.lower) += val;
      out(tr.lower, tr.upper) += std::conj(val);
    }
    if (m->diagonal.size() > 0) out.diagonal().real() += m->diagonal;
  };

  HamiltonianFn::Pattern pattern;
  for (const Transition& tr : m->transitions) {
    pattern.emplace_back(tr.upper, tr.lower);
    pattern.emplace_back(tr.lower, tr.upper);
  }
  if (m->diagonal.size() > 0) {
    for (Eigen::Index i = 0; i < dim; ++i) pattern.emplace_back(i, i);
  }
  const double switch_time = m->schedule.plan().switch_time(m->schedule.loop());
  return HamiltonianFn(m->basis, std::move(eval), max_frequency, {switch_time}, std::move(pattern));
}

HamiltonianFn build_full(int n_atoms, const RealVector& energies, double delta,
                         const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  auto m = std::make_shared<DriveModel>(DriveModel{system_basis(n_atoms), chain_transitions(n_atoms), energies,
                                                   true, delta, schedule, errors});
  const double fastest = std::max(std::abs(delta), energies.cwiseAbs().maxCoeff());
  return make_fn(std::move(m), fastest + drive_peak(schedule, errors));
}

// Every transition picks up exp(i E_upper t); for the two-atom chain this is
// the exact interaction-picture transformation since every driven lower state
// has zero interaction energy.
HamiltonianFn build_rotating(int n_atoms, const RealVector& energies, double delta,
                             const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  std::vector<Transition> transitions = chain_transitions(n_atoms);
  double fastest = 0.0;
  for (Transition& tr : transitions) {
    tr.frame_rate = energies(tr.upper);
    fastest = std::max(fastest, std::abs(tr.frame_rate - delta));
  }
  auto m = std::make_shared<DriveModel>(
      DriveModel{system_basis(n_atoms), std::move(transitions), RealVector(), true, delta, schedule, errors});
  return make_fn(std::move(m), fastest + drive_peak(schedule, errors));
}

HamiltonianFn build_effective(int n_atoms, const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  Basis basis = system_basis(n_atoms);
  const auto labels = four_level_labels(n_atoms);
  const auto x0 = static_cast<Eigen::Index>(qlin::index_of(basis, labels[0]));
  const auto x1 = static_cast<Eigen::Index>(qlin::index_of(basis, labels[1]));
  const auto xr = static_cast<Eigen::Index>(qlin::index_of(basis, labels[2]));
  const auto yr = static_cast<Eigen::Index>(qlin::index_of(basis, labels[3]));
  std::vector<Transition> transitions{
      {xr, yr, Drive::control, 0.0},
      {xr, x0, Drive::target0, 0.0},
      {xr, x1, Drive::target1, 0.0},
  };
  auto m = std::make_shared<DriveModel>(
      DriveModel{std::move(basis), std::move(transitions), RealVector(), false, 0.0, schedule, errors});
  return make_fn(std::move(m), drive_peak(schedule, errors));
}

void require_atoms(int n_atoms, int max_atoms) {
  if (n_atoms < 2) throw ModelError("a chain needs at least one control and the target");
  if (n_atoms > max_atoms) {
    throw ModelError("atom count " + std::to_string(n_atoms) + " exceeds the cap of " + std::to_string(max_atoms));
  }
}

Operator embed_single(const Operator& op, int atom, int n_atoms) {
  // atom in [0, n_atoms - 2] are controls, n_atoms - 1 is the target.
  Operator out = atom == 0 ? op : Operator::identity(control_basis());
  for (int k = 1; k < n_atoms; ++k) {
    const bool is_target = k == n_atoms - 1;
    const Operator& factor =
        k == atom ? op : (is_target ? Operator::identity(target_basis()) : Operator::identity(control_basis()));
    out = qlin::kron(out, factor);
  }
  return out;
}

Operator sigma_minus_control() { return Operator::transition(control_basis(), "g", "e"); }

Operator sigma_z_control() {
  return Operator::transition(control_basis(), "g", "g") - Operator::transition(control_basis(), "e", "e");
}

Operator sigma_z_target() {
  return Operator::transition(target_basis(), "0", "0") + Operator::transition(target_basis(), "1", "1") -
         Operator::transition(target_basis(), "r", "r");
}

std::vector<LindbladChannel> chain_channels(const NoiseSpec& noise, int n_atoms, double branch0, double branch1) {
  std::vector<LindbladChannel> out;
  const int target = n_atoms - 1;
  for (int c = 0; c < n_atoms - 1; ++c) {
    const std::string tag = n_atoms == 2 ? "c" : "c" + std::to_string(c + 1);
    out.push_back({embed_single(sigma_minus_control(), c, n_atoms), noise.kappa / 2, "sigma_minus_" + tag});
    out.push_back({embed_single(sigma_z_control(), c, n_atoms), noise.kappa_z / 2, "sigma_z_" + tag});
  }
  out.push_back({embed_single(Operator::transition(target_basis(), "0", "r"), target, n_atoms), branch0, "0_r_t"});
  out.push_back({embed_single(Operator::transition(target_basis(), "1", "r"), target, n_atoms), branch1, "1_r_t"});
  out.push_back({embed_single(sigma_z_target(), target, n_atoms), noise.kappa_z / 2, "sigma_z_t"});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- specs

std::optional<std::string> regime_warning(const TwoAtomSpec& spec) {
  if (close(spec.delta, spec.u12)) return std::nullopt;
  std::ostringstream os;
  os << "two-atom spec outside the resonance regime: delta=" << spec.delta << " u12=" << spec.u12;
  return os.str();
}

std::optional<std::string> regime_warning(const ThreeAtomSpec& spec) {
  const double half = (spec.delta - spec.u12) / 2;
  if (close(spec.u13, spec.u23) && close(spec.u13, half)) return std::nullopt;
  std::ostringstream os;
  os << "three-atom spec outside the resonance regime: u13=" << spec.u13 << " u23=" << spec.u23
     << " (delta-u12)/2=" << half;
  return os.str();
}

std::optional<std::string> regime_warning(const ChainSpec& spec) {
  if (close(spec.v, spec.delta / (spec.n_atoms - 1))) return std::nullopt;
  std::ostringstream os;
  os << "chain spec outside the resonance regime: v=" << spec.v << " delta/(N-1)=" << spec.delta / (spec.n_atoms - 1);
  return os.str();
}

NoiseSpec NoiseSpec::with_equal_branches(double kappa, double kappa_z) {
  return {kappa, kappa_z, kappa / 2, kappa / 2};
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::full: return "full";
    case ModelKind::rotating: return "rotating";
    case ModelKind::effective: return "effective";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "full") return ModelKind::full;
  if (text == "rotating") return ModelKind::rotating;
  if (text == "effective") return ModelKind::effective;
  throw ModelError("unknown model kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------- HamiltonianFn

HamiltonianFn::HamiltonianFn(Basis basis, Evaluator eval, double max_frequency, std::vector<double> breakpoints,
                             Pattern pattern)
    : basis_(std::move(basis)),
      eval_(std::move(eval)),
      max_frequency_(max_frequency),
      breakpoints_(std::move(breakpoints)),
      pattern_(std::move(pattern)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  std::sort(pattern_.begin(), pattern_.end());
  pattern_.erase(std::unique(pattern_.begin(), pattern_.end()), pattern_.end());
}

Operator HamiltonianFn::operator()(double t) const {
  Matrix m;
  eval_(t, m);
  return Operator(std::move(m), basis_);
}

// ---------------------------------------------------------------- bases

const Basis& control_basis() {
  static const Basis b{"g", "e"};
  return b;
}

const Basis& target_basis() {
  static const Basis b{"0", "1", "r"};
  return b;
}

Basis system_basis(int n_atoms) {
  if (n_atoms < 2) throw ModelError("a chain needs at least one control and the target");
  Basis b = control_basis();
  for (int k = 1; k < n_atoms - 1; ++k) b = qlin::product_basis(b, control_basis());
  return qlin::product_basis(b, target_basis());
}

std::array<std::string, 4> four_level_labels(int n_atoms) {
  const std::string excited(static_cast<std::size_t>(n_atoms - 1), 'e');
  const std::string partial = "g" + std::string(static_cast<std::size_t>(n_atoms - 2), 'e');
  return {excited + "0", excited + "1", excited + "r", partial + "r"};
}

qlin::Ket lift_four_level(const qlin::Ket& k4, int n_atoms) {
  if (k4.dim() != 4) throw ModelError("lift_four_level: expected a four-level ket");
  Basis basis = system_basis(n_atoms);
  qlin::Vector v = qlin::Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  const auto labels = four_level_labels(n_atoms);
  for (int k = 0; k < 4; ++k) v(static_cast<Eigen::Index>(qlin::index_of(basis, labels[k]))) = k4.amplitudes()(k);
  return {std::move(v), std::move(basis)};
}

Operator reduced_four_level(const Operator& h, int n_atoms) {
  const auto labels = four_level_labels(n_atoms);
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = h(labels[i], labels[j]);
  return Operator(std::move(m), pulse::four_level_basis());
}

// ---------------------------------------------------------------- energies

RealVector interaction_energies(const TwoAtomSpec& spec) {
  RealVector e = RealVector::Zero(6);
  e(5) = spec.u12;  // er
  return e;
}

RealVector interaction_energies(const ThreeAtomSpec& spec) {
  RealVector e = RealVector::Zero(12);
  for (Eigen::Index i = 0; i < 12; ++i) {
    const Config c = decode(i, 3);
    const bool r = c.target == 2;
    e(i) = spec.u13 * (c.controls[0] == 1 && r) + spec.u23 * (c.controls[1] == 1 && r) +
           spec.u12 * (c.controls[0] == 1 && c.controls[1] == 1);
  }
  return e;
}

RealVector interaction_energies(const ChainSpec& spec) {
  const Eigen::Index dim = dimension(spec.n_atoms);
  RealVector e = RealVector::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Config c = decode(i, spec.n_atoms);
    if (c.target != 2) continue;
    int excited = 0;
    for (int bit : c.controls) excited += bit;
    e(i) = spec.v * excited;
  }
  return e;
}

// ---------------------------------------------------------------- builders

HamiltonianFn h_full_2(const TwoAtomSpec& spec, const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_full(2, interaction_energies(spec), spec.delta, schedule, errors);
}

HamiltonianFn h_rot_2(const TwoAtomSpec& spec, const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_rotating(2, interaction_energies(spec), spec.delta, schedule, errors);
}

HamiltonianFn h_eff_2(const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_effective(2, schedule, errors);
}

HamiltonianFn h_full_3(const ThreeAtomSpec& spec, const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_full(3, interaction_energies(spec), spec.delta, schedule, errors);
}

HamiltonianFn h_rot_3(const ThreeAtomSpec& spec, const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_rotating(3, interaction_energies(spec), spec.delta, schedule, errors);
}

HamiltonianFn h_eff_3(const pulse::PulseSchedule& schedule, const DriveErrors& errors) {
  return build_effective(3, schedule, errors);
}

HamiltonianFn h_full_N(const ChainSpec& spec, const pulse::PulseSchedule& schedule, const DriveErrors& errors,
                       int max_atoms) {
  require_atoms(spec.n_atoms, max_atoms);
  return build_full(spec.n_atoms, interaction_energies(spec), spec.delta, schedule, errors);
}

HamiltonianFn h_eff_N(const pulse::PulseSchedule& schedule, const DriveErrors& errors, int n_atoms, int max_atoms) {
  require_atoms(n_atoms, max_atoms);
  return build_effective(n_atoms, schedule, errors);
}

// ---------------------------------------------------------------- channels

std::vector<LindbladChannel> channels_2(const NoiseSpec& noise) {
  return chain_channels(noise, 2, noise.kappa0 / 2, noise.kappa1 / 2);
}

std::vector<LindbladChannel> channels_3(const NoiseSpec& noise) {
  return chain_channels(noise, 3, noise.kappa / 4, noise.kappa / 4);
}

std::vector<LindbladChannel> channels_N(const NoiseSpec& noise, int n_atoms) {
  require_atoms(n_atoms, kDefaultMaxAtoms);
  return chain_channels(noise, n_atoms, noise.kappa0 / 2, noise.kappa1 / 2);
}

double vdw_strength(double c6, double distance) {
  if (!(distance > 0.0)) throw ModelError("interatomic distance must be positive");
  return c6 / std::pow(distance, 6);
}

// ---------------------------------------------------------------- dispatch

int atom_count(const SystemSpec& system) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TwoAtomSpec>) return 2;
        else if constexpr (std::is_same_v<T, ThreeAtomSpec>) return 3;
        else return s.n_atoms;
      },
      system);
}

HamiltonianFn build_hamiltonian(ModelKind kind, const SystemSpec& system, const pulse::PulseSchedule& schedule,
                                const DriveErrors& errors) {
  if (kind == ModelKind::effective) return h_eff_N(schedule, errors, atom_count(system));
  return std::visit(
      [&](const auto& s) -> HamiltonianFn {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TwoAtomSpec>) {
          return kind == ModelKind::full ? h_full_2(s, schedule, errors) : h_rot_2(s, schedule, errors);
        } else if constexpr (std::is_same_v<T, ThreeAtomSpec>) {
          return kind == ModelKind::full ? h_full_3(s, schedule, errors) : h_rot_3(s, schedule, errors);
        } else {
          if (kind != ModelKind::full) throw ModelError("chain systems support full and effective models only");
          return h_full_N(s, schedule, errors);
        }
      },
      system);
}

std::vector<LindbladChannel> build_channels(const SystemSpec& system, const NoiseSpec& noise) {
  const int n = atom_count(system);
  if (n == 2) return channels_2(noise);
  if (n == 3) return channels_3(noise);
  return channels_N(noise, n);
}

}  // namespace rydhol::model
