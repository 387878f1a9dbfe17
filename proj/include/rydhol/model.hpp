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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rydhol/pulse.hpp"
#include "rydhol/qlin.hpp"

/// Hamiltonians and dissipators for a chain of two-level control atoms
/// (g, e) coupled to one three-level target atom (0, 1, r).
///
/// Basis order: controls left to right, target last; per atom (g, e) and
/// (0, 1, r). Only the first control and the target are driven. All drive
/// terms are scaled by the systematic errors as (1+eps) on the control drive
/// and (1+eps)(1+alpha) on the target drives; interaction terms are never
/// scaled.
namespace rydhol::model {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultMaxAtoms = 6;

struct TwoAtomSpec {
  double delta = 1.0;
  double u12 = 1.0;
};

struct ThreeAtomSpec {
  double delta = 1.0;
  double u12 = 0.0;
  double u13 = 0.5;
  double u23 = 0.5;
};

struct ChainSpec {
  int n_atoms = 2;
  double delta = 1.0;
  double v = 1.0;
};

/// Empty when the spec is inside the far-off-detuning validity regime.
std::optional<std::string> regime_warning(const TwoAtomSpec& spec);
std::optional<std::string> regime_warning(const ThreeAtomSpec& spec);
std::optional<std::string> regime_warning(const ChainSpec& spec);

struct DriveErrors {
  double epsilon = 0.0;
  double alpha = 0.0;
};

struct NoiseSpec {
  double kappa = 0.0;
  double kappa_z = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;

  /// Target branch rates default to kappa/2 each.
  static NoiseSpec with_equal_branches(double kappa, double kappa_z);
  bool is_zero() const { return kappa == 0 && kappa_z == 0 && kappa0 == 0 && kappa1 == 0; }
};

/// One dissipator term rate_prefactor * (2 o rho o^+ - o^+ o rho - rho o^+ o).
struct LindbladChannel {
  qlin::Operator jump;
  double rate_prefactor = 0.0;
  std::string name;
};

enum class ModelKind { full, rotating, effective };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

class HamiltonianFn {
 public:
  using Evaluator = std::function<void(double, qlin::Matrix&)>;
  /// (row, col) entries that may be nonzero. Empty means dense.
  using Pattern = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

  HamiltonianFn(qlin::Basis basis, Evaluator eval, double max_frequency, std::vector<double> breakpoints = {},
                Pattern pattern = {});

  std::size_t dim() const { return basis_.size(); }
  const qlin::Basis& basis() const { return basis_; }
  /// Largest angular frequency present; drives the step size.
  double max_frequency() const { return max_frequency_; }
  /// Ascending times where H(t) is not smooth; integrators never step across them.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const Pattern& pattern() const { return pattern_; }

  qlin::Operator operator()(double t) const;
  /// Overwrites `out` (resized if needed) with H(t).
  void eval_into(double t, qlin::Matrix& out) const { eval_(t, out); }

 private:
  qlin::Basis basis_;
  Evaluator eval_;
  double max_frequency_;
  std::vector<double> breakpoints_;
  Pattern pattern_;
};

const qlin::Basis& control_basis();
const qlin::Basis& target_basis();
/// 3 * 2^(n_atoms - 1) labels, e.g. "g0", ..., "er" for two atoms.
qlin::Basis system_basis(int n_atoms);

/// Full-space labels of the abstract four-level states (x0, x1, xr, yr):
/// "e..e0", "e..e1", "e..er", "ge..er".
std::array<std::string, 4> four_level_labels(int n_atoms);

/// Maps a ket on the abstract four-level basis into the full space.
qlin::Ket lift_four_level(const qlin::Ket& k4, int n_atoms);
/// 4x4 block of `h` on the four-level support, in (x0, x1, xr, yr) order.
qlin::Operator reduced_four_level(const qlin::Operator& h, int n_atoms);

HamiltonianFn h_full_2(const TwoAtomSpec& spec, const pulse::PulseSchedule& schedule,
                       const DriveErrors& errors = {});
HamiltonianFn h_rot_2(const TwoAtomSpec& spec, const pulse::PulseSchedule& schedule,
                      const DriveErrors& errors = {});
HamiltonianFn h_eff_2(const pulse::PulseSchedule& schedule, const DriveErrors& errors = {});

HamiltonianFn h_full_3(const ThreeAtomSpec& spec, const pulse::PulseSchedule& schedule,
                       const DriveErrors& errors = {});
/// Rotating-frame form as derived for the three-atom system: every transition
/// carries exp(i E_upper t), E_upper being the interaction energy of its upper
/// state. For transitions out of a lower state with nonzero interaction energy
/// (ger -> eer, ee0/ee1 -> eer when u12 != 0) this differs from the exact
/// frame transformation of h_full_3.
HamiltonianFn h_rot_3(const ThreeAtomSpec& spec, const pulse::PulseSchedule& schedule,
                      const DriveErrors& errors = {});
HamiltonianFn h_eff_3(const pulse::PulseSchedule& schedule, const DriveErrors& errors = {});

HamiltonianFn h_full_N(const ChainSpec& spec, const pulse::PulseSchedule& schedule,
                       const DriveErrors& errors = {}, int max_atoms = kDefaultMaxAtoms);
HamiltonianFn h_eff_N(const pulse::PulseSchedule& schedule, const DriveErrors& errors, int n_atoms,
                      int max_atoms = kDefaultMaxAtoms);

/// Interaction energies on the diagonal of the full Hamiltonian.
qlin::RealVector interaction_energies(const TwoAtomSpec& spec);
qlin::RealVector interaction_energies(const ThreeAtomSpec& spec);
qlin::RealVector interaction_energies(const ChainSpec& spec);

std::vector<LindbladChannel> channels_2(const NoiseSpec& noise);
std::vector<LindbladChannel> channels_3(const NoiseSpec& noise);
std::vector<LindbladChannel> channels_N(const NoiseSpec& noise, int n_atoms);

/// Van der Waals shift C6 / d^6.
double vdw_strength(double c6, double distance);

using SystemSpec = std::variant<TwoAtomSpec, ThreeAtomSpec, ChainSpec>;

int atom_count(const SystemSpec& system);

/// Dispatches to the builder for `kind` and the system variant. A chain only
/// supports full and effective models.
HamiltonianFn build_hamiltonian(ModelKind kind, const SystemSpec& system,
                                const pulse::PulseSchedule& schedule, const DriveErrors& errors);
std::vector<LindbladChannel> build_channels(const SystemSpec& system, const NoiseSpec& noise);

}  // namespace rydhol::model
