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

#include "rydhol/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "integrators.hpp"

namespace rydhol::evolve {

using qlin::Complex;
using qlin::kI;
using qlin::Matrix;

namespace {

void require_interval(double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("propagation interval must have t1 > t0");
}

double initial_step(const model::HamiltonianFn& h, const StepPolicy& policy, double span) {
  return std::min(step_size(h, policy), span);
}

// Runs the fixed or adaptive stepper according to the policy, restarting at
// every breakpoint of h inside (t0, t1).
template <class Rhs, class AfterStep>
long integrate(const model::HamiltonianFn& h, const StepPolicy& policy, Rhs&& rhs, Matrix& y, double t0, double t1,
               AfterStep&& after_step) {
  std::vector<double> edges{t0};
  for (double b : h.breakpoints()) {
    if (b > t0 && b < t1) edges.push_back(b);
  }
  edges.push_back(t1);
  long steps = 0;
  auto counted = [&](double t, Matrix& state, long) { after_step(t, state, ++steps); };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    if (policy.adaptive) {
      detail::integrate_dopri(rhs, y, a, b, initial_step(h, policy, b - a), policy.tolerance, counted);
    } else {
      detail::integrate_rk4(rhs, y, a, b, step_size(h, policy), counted);
    }
  }
  return steps;
}

// Nonzero entries of a jump operator; the channels are single transitions or
// diagonal, so the sandwich o rho o^+ is cheap in this form.
struct SparseJump {
  std::vector<Eigen::Index> row;
  std::vector<Eigen::Index> col;
  std::vector<Complex> val;
  double weight = 0.0;  // 2 * rate_prefactor
};

// out = H in, touching only the declared nonzeros of H when available.
class HamiltonianProduct {
 public:
  explicit HamiltonianProduct(const model::HamiltonianFn& h) : pattern_(h.pattern()) {}

  void operator()(const Matrix& hm, const Matrix& in, Matrix& out) const {
    if (pattern_.empty()) {
      out.noalias() = hm * in;
      return;
    }
    out.setZero(in.rows(), in.cols());
    for (const auto& [r, c] : pattern_) out.row(r) += hm(r, c) * in.row(c);
  }

 private:
  const model::HamiltonianFn::Pattern& pattern_;
};

}  // namespace

void StepPolicy::validate() const {
  if (!(dt_max > 0.0)) throw std::invalid_argument("StepPolicy: dt_max must be positive");
  if (points_per_period < 10) throw std::invalid_argument("StepPolicy: points_per_period must be at least 10");
  if (!(tolerance > 0.0)) throw std::invalid_argument("StepPolicy: tolerance must be positive");
}

double step_size(const model::HamiltonianFn& h, const StepPolicy& policy) {
  policy.validate();
  const double w = h.max_frequency();
  const double by_frequency =
      w > 0.0 ? 2 * std::numbers::pi / (policy.points_per_period * w) : std::numeric_limits<double>::infinity();
  const double dt = std::min(policy.dt_max, by_frequency);
  if (!std::isfinite(dt)) {
    throw std::invalid_argument("StepPolicy: a static zero Hamiltonian needs a finite dt_max");
  }
  return dt;
}

KetEvolution propagate_ket(const model::HamiltonianFn& h, const qlin::Ket& psi0, double t0, double t1,
                           const StepPolicy& policy) {
  require_interval(t0, t1);
  if (psi0.dim() != h.dim()) throw qlin::LinalgError("propagate_ket: state and Hamiltonian dimensions differ");
  if (!psi0.is_normalized(1e-10)) throw std::invalid_argument("propagate_ket: initial state is not normalized");

  Matrix y = psi0.amplitudes();
  Matrix hm;
  const HamiltonianProduct product(h);
  auto rhs = [&](double t, const Matrix& in, Matrix& out) {
    h.eval_into(t, hm);
    product(hm, in, out);
    out *= -kI;
  };
  double drift = 0.0;
  auto after = [&](double, Matrix& state, long) {
    if (policy.monitors_on) drift = std::max(drift, std::abs(state.norm() - 1.0));
  };
  const long steps = integrate(h, policy, rhs, y, t0, t1, after);
  drift = std::max(drift, std::abs(y.norm() - 1.0));
  if (drift > kNormDriftLimit) {
    throw EvolveError("propagate_ket: norm drift " + std::to_string(drift) + " exceeds 1e-6; refine the step policy");
  }
  y /= y.norm();
  return {qlin::Ket(qlin::Vector(y.col(0)), h.basis()), steps, drift};
}

PropagatorEvolution propagate_unitary(const model::HamiltonianFn& h, double t0, double t1, const StepPolicy& policy) {
  require_interval(t0, t1);
  const auto n = static_cast<Eigen::Index>(h.dim());
  Matrix y = Matrix::Identity(n, n);
  Matrix hm;
  const HamiltonianProduct product(h);
  auto rhs = [&](double t, const Matrix& in, Matrix& out) {
    h.eval_into(t, hm);
    product(hm, in, out);
    out *= -kI;
  };
  const long steps = integrate(h, policy, rhs, y, t0, t1, [](double, Matrix&, long) {});
  const double drift = qlin::max_abs(y.adjoint() * y - Matrix::Identity(n, n));
  if (drift > kUnitarityLimit) {
    throw EvolveError("propagator: unitarity drift " + std::to_string(drift) + " exceeds 1e-8");
  }
  return {qlin::Operator(std::move(y), h.basis()), steps, drift};
}

qlin::Operator propagator(const model::HamiltonianFn& h, double t0, double t1, const StepPolicy& policy) {
  return propagate_unitary(h, t0, t1, policy).propagator;
}

DensityEvolution lindblad_evolve(const model::HamiltonianFn& h, const std::vector<model::LindbladChannel>& channels,
                                 const qlin::DensityMatrix& rho0, double t0, double t1, const StepPolicy& policy) {
  require_interval(t0, t1);
  const auto n = static_cast<Eigen::Index>(h.dim());
  if (rho0.dim() != h.dim()) throw qlin::LinalgError("lindblad_evolve: state and Hamiltonian dimensions differ");

  // anticommutator part: K = sum_k g_k o^+ o enters as G = H - iK
  Matrix k_sum = Matrix::Zero(n, n);
  // diagonal jumps d fold into one elementwise weight: sum_k w_k d_i conj(d_j)
  Matrix diag_weight = Matrix::Zero(n, n);
  bool any_diagonal = false;
  std::vector<SparseJump> jumps;
  for (const auto& ch : channels) {
    if (ch.jump.dim() != h.dim()) throw qlin::LinalgError("lindblad_evolve: channel dimension mismatch");
    if (ch.rate_prefactor == 0.0) continue;
    const Matrix& o = ch.jump.entries();
    k_sum += ch.rate_prefactor * (o.adjoint() * o);
    if (qlin::max_abs(o - Matrix(o.diagonal().asDiagonal())) == 0.0) {
      const qlin::Vector d = o.diagonal();
      diag_weight += 2 * ch.rate_prefactor * (d * d.adjoint());
      any_diagonal = true;
      continue;
    }
    SparseJump sj;
    sj.weight = 2 * ch.rate_prefactor;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (o(i, j) != Complex(0.0)) {
          sj.row.push_back(i);
          sj.col.push_back(j);
          sj.val.push_back(o(i, j));
        }
    jumps.push_back(std::move(sj));
  }

  // rho stays Hermitian along the flow, so rho G^+ = (G rho)^+.
  const bool k_diagonal = qlin::max_abs(k_sum - Matrix(k_sum.diagonal().asDiagonal())) == 0.0;
  const qlin::Vector k_diag = k_sum.diagonal();
  const HamiltonianProduct product(h);
  Matrix hm(n, n), m(n, n);
  auto rhs = [&](double t, const Matrix& rho, Matrix& out) {
    h.eval_into(t, hm);
    if (k_diagonal) {
      product(hm, rho, m);
      m -= kI * (k_diag.asDiagonal() * rho);
    } else {
      hm -= kI * k_sum;
      m.noalias() = hm * rho;
    }
    out = -kI * m;
    out += (-kI * m).adjoint();
    if (any_diagonal) out += diag_weight.cwiseProduct(rho);
    for (const auto& sj : jumps) {
      const std::size_t nnz = sj.val.size();
      for (std::size_t a = 0; a < nnz; ++a) {
        const Complex va = sj.weight * sj.val[a];
        for (std::size_t b = 0; b < nnz; ++b) {
          out(sj.row[a], sj.row[b]) += va * rho(sj.col[a], sj.col[b]) * std::conj(sj.val[b]);
        }
      }
    }
  };

  const Complex trace0 = rho0.trace();
  DensityEvolution report{rho0, 0, 0.0, 0.0, rho0.min_eigenvalue()};
  Matrix y = 0.5 * (rho0.entries() + rho0.entries().adjoint());
  auto monitor_positivity = [&](const Matrix& state) {
    const double lo = qlin::hermitian_eigen(state, 1e-8).values(0);
    report.min_eigenvalue_seen = std::min(report.min_eigenvalue_seen, lo);
    if (lo < kNegativityLimit) {
      throw EvolveError("lindblad_evolve: density matrix eigenvalue " + std::to_string(lo) + " below -1e-6");
    }
  };
  auto after = [&](double, Matrix& state, long step) {
    report.max_hermiticity_drift = std::max(report.max_hermiticity_drift, qlin::max_abs(state - state.adjoint()));
    state = 0.5 * (state + state.adjoint()).eval();
    const double trace_drift = std::abs(state.trace() - trace0);
    report.max_trace_drift = std::max(report.max_trace_drift, trace_drift);
    if (trace_drift > kTraceDriftLimit) {
      throw EvolveError("lindblad_evolve: trace drift " + std::to_string(trace_drift) + " exceeds 1e-6");
    }
    if (policy.monitors_on && step % 100 == 0) monitor_positivity(state);
  };
  report.steps = integrate(h, policy, rhs, y, t0, t1, after);
  if (policy.monitors_on) monitor_positivity(y);
  if (std::abs(y.trace() - trace0) <= kTraceRenormLimit) y *= trace0 / y.trace();
  report.final_state = qlin::DensityMatrix::unchecked(std::move(y), h.basis());
  return report;
}

}  // namespace rydhol::evolve
