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

#include <algorithm>
#include <cmath>

#include "rydhol/evolve.hpp"
#include "rydhol/qlin.hpp"

// Matrix-valued ODE steppers shared by the ket, propagator and density
// integrators. `rhs(t, y, dy)` must overwrite dy; `after_step(t, y)` may
// modify y in place (re-symmetrization) and runs after every accepted step.
namespace rydhol::evolve::detail {

using qlin::Matrix;

template <class Rhs, class AfterStep>
long integrate_rk4(Rhs&& rhs, Matrix& y, double t0, double t1, double dt, AfterStep&& after_step) {
  const long n = std::max(1L, static_cast<long>(std::ceil((t1 - t0) / dt - 1e-9)));
  const double h = (t1 - t0) / static_cast<double>(n);
  Matrix k1(y.rows(), y.cols()), k2(k1), k3(k1), k4(k1), tmp(k1);
  for (long i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const double t_end = i + 1 == n ? t1 : t + h;
    rhs(t, y, k1);
    tmp.noalias() = y + (h / 2) * k1;
    rhs(t + h / 2, tmp, k2);
    tmp.noalias() = y + (h / 2) * k2;
    rhs(t + h / 2, tmp, k3);
    tmp.noalias() = y + h * k3;
    rhs(t_end, tmp, k4);
    y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    after_step(t_end, y, i + 1);
  }
  return n;
}

// Dormand-Prince 5(4), elementary step controller.
template <class Rhs, class AfterStep>
long integrate_dopri(Rhs&& rhs, Matrix& y, double t0, double t1, double h0, double tol, AfterStep&& after_step) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  Matrix k1(y.rows(), y.cols()), k2(k1), k3(k1), k4(k1), k5(k1), k6(k1), k7(k1), tmp(k1), y5(k1), err(k1);
  double t = t0;
  double h = std::min(h0, t1 - t0);
  long accepted = 0;
  rhs(t, y, k1);
  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    tmp.noalias() = y + h * a21 * k1;
    rhs(t + h / 5, tmp, k2);
    tmp.noalias() = y + h * (a31 * k1 + a32 * k2);
    rhs(t + 3 * h / 10, tmp, k3);
    tmp.noalias() = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + 4 * h / 5, tmp, k4);
    tmp.noalias() = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + 8 * h / 9, tmp, k5);
    tmp.noalias() = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, tmp, k6);
    y5.noalias() = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, y5, k7);
    err.noalias() = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = std::max(1.0, qlin::max_abs(y));
    const double err_norm = qlin::max_abs(err) / (tol * scale);
    if (err_norm <= 1.0) {
      t = t + h >= t1 ? t1 : t + h;
      y = y5;
      ++accepted;
      after_step(t, y, accepted);
      rhs(t, y, k1);  // after_step may have touched y
    }
    const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (t < t1 && h < 1e-14 * std::max(1.0, std::abs(t1 - t0))) throw EvolveError("adaptive step size underflow");
  }
  return accepted;
}

}  // namespace rydhol::evolve::detail
