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

#include "rydhol/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rydhol::qlin {

namespace {

void require_same_basis(const Basis& a, const Basis& b, const char* what) {
  if (a.size() != b.size()) {
    throw LinalgError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
}

void require_square(const Matrix& m, const Basis& basis, const char* what) {
  if (m.rows() != m.cols()) throw LinalgError(std::string(what) + ": matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != basis.size()) {
    throw LinalgError(std::string(what) + ": basis length does not match dimension");
  }
}

}  // namespace

std::size_t index_of(const Basis& basis, std::string_view label) {
  auto it = std::find(basis.begin(), basis.end(), label);
  if (it == basis.end()) throw LinalgError("unknown basis label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - basis.begin());
}

Basis product_basis(const Basis& left, const Basis& right) {
  Basis out;
  out.reserve(left.size() * right.size());
  for (const auto& l : left)
    for (const auto& r : right) out.push_back(l + r);
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------- Ket

Ket::Ket(Vector amplitudes, Basis basis) : amplitudes_(std::move(amplitudes)), basis_(std::move(basis)) {
  if (basis_.empty()) throw LinalgError("Ket: empty basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_.size()) {
    throw LinalgError("Ket: amplitude count does not match basis length");
  }
}

Ket Ket::basis_state(const Basis& basis, std::string_view label) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  v(static_cast<Eigen::Index>(index_of(basis, label))) = 1.0;
  return Ket(std::move(v), basis);
}

Complex Ket::operator[](std::string_view label) const {
  return amplitudes_(static_cast<Eigen::Index>(index_of(basis_, label)));
}

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw LinalgError("Ket: cannot normalize the zero vector");
  return Ket(amplitudes_ / n, basis_);
}

Complex inner(const Ket& a, const Ket& b) {
  require_same_basis(a.basis(), b.basis(), "inner");
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

// ---------------------------------------------------------------- Operator

Operator::Operator(Matrix entries, Basis basis) : entries_(std::move(entries)), basis_(std::move(basis)) {
  if (basis_.empty()) throw LinalgError("Operator: empty basis");
  require_square(entries_, basis_, "Operator");
}

Operator Operator::identity(const Basis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return Operator(Matrix::Identity(n, n), basis);
}

Operator Operator::zero(const Basis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return Operator(Matrix::Zero(n, n), basis);
}

Operator Operator::transition(const Basis& basis, std::string_view ket_label,
                              std::string_view bra_label) {
  Operator op = zero(basis);
  op.entries_(static_cast<Eigen::Index>(index_of(basis, ket_label)),
              static_cast<Eigen::Index>(index_of(basis, bra_label))) = 1.0;
  return op;
}

Operator Operator::outer(const Ket& ket, const Ket& bra) {
  require_same_basis(ket.basis(), bra.basis(), "outer");
  return Operator(ket.amplitudes() * bra.amplitudes().adjoint(), ket.basis());
}

Complex Operator::operator()(std::string_view row, std::string_view col) const {
  return entries_(static_cast<Eigen::Index>(index_of(basis_, row)),
                  static_cast<Eigen::Index>(index_of(basis_, col)));
}

double Operator::hermiticity_defect() const { return max_abs(entries_ - entries_.adjoint()); }

double Operator::unitarity_defect() const {
  const auto n = entries_.rows();
  return max_abs(entries_.adjoint() * entries_ - Matrix::Identity(n, n));
}

Ket Operator::apply(const Ket& k) const {
  require_same_basis(basis_, k.basis(), "Operator::apply");
  return Ket(entries_ * k.amplitudes(), basis_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_basis(a.basis(), b.basis(), "operator*");
  return Operator(a.entries() * b.entries(), a.basis());
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_basis(a.basis(), b.basis(), "operator+");
  return Operator(a.entries() + b.entries(), a.basis());
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_basis(a.basis(), b.basis(), "operator-");
  return Operator(a.entries() - b.entries(), a.basis());
}

Operator operator*(Complex c, const Operator& a) { return Operator(c * a.entries(), a.basis()); }

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, Basis basis, NoCheck)
    : entries_(std::move(entries)), basis_(std::move(basis)) {
  if (basis_.empty()) throw LinalgError("DensityMatrix: empty basis");
  require_square(entries_, basis_, "DensityMatrix");
}

DensityMatrix::DensityMatrix(Matrix entries, Basis basis)
    : DensityMatrix(std::move(entries), std::move(basis), NoCheck{}) {
  if (max_abs(entries_ - entries_.adjoint()) > 1e-10) throw LinalgError("DensityMatrix: not Hermitian");
  if (std::abs(entries_.trace() - Complex(1.0)) > 1e-8) throw LinalgError("DensityMatrix: trace is not 1");
  if (min_eigenvalue() < -1e-7) throw LinalgError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
  return DensityMatrix(k.amplitudes() * k.amplitudes().adjoint(), k.basis(), NoCheck{});
}

DensityMatrix DensityMatrix::unchecked(Matrix entries, Basis basis) {
  return DensityMatrix(std::move(entries), std::move(basis), NoCheck{});
}

Complex DensityMatrix::operator()(std::string_view row, std::string_view col) const {
  return entries_(static_cast<Eigen::Index>(index_of(basis_, row)),
                  static_cast<Eigen::Index>(index_of(basis_, col)));
}

double DensityMatrix::min_eigenvalue() const {
  Matrix h = 0.5 * (entries_ + entries_.adjoint());
  return hermitian_eigen(h, 1e-10).values(0);
}

// ---------------------------------------------------------------- products

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  return Operator(kron(a.entries(), b.entries()), product_basis(a.basis(), b.basis()));
}

Ket kron(const Ket& a, const Ket& b) {
  Matrix m = kron(Matrix(a.amplitudes()), Matrix(b.amplitudes()));
  return Ket(Vector(m.col(0)), product_basis(a.basis(), b.basis()));
}

Operator dagger(const Operator& a) { return Operator(a.entries().adjoint(), a.basis()); }

Complex expectation(const Ket& state, const Operator& op) {
  require_same_basis(state.basis(), op.basis(), "expectation");
  return state.amplitudes().dot(op.entries() * state.amplitudes());
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  require_same_basis(rho.basis(), op.basis(), "expectation");
  return (rho.entries() * op.entries()).trace();
}

// ---------------------------------------------------------------- eigen

EigenSystem hermitian_eigen(const Matrix& h, double hermitian_tol) {
  if (h.rows() != h.cols()) throw LinalgError("hermitian_eigen: matrix is not square");
  if (max_abs(h - h.adjoint()) > hermitian_tol) throw LinalgError("hermitian_eigen: matrix is not Hermitian");

  const Eigen::Index n = h.rows();
  Matrix a = 0.5 * (h + h.adjoint());
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(max_abs(a), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        // Phase-rotate column q so a(p,q) becomes real, then apply a real
        // Jacobi rotation to the 2x2 block.
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = I except G(p,p)=c, G(p,q)=s, G(q,p)=-s*conj(phase), G(q,q)=c*conj(phase)
        const Complex gpp = c, gpq = s, gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {  // a <- a G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // a <- G^dagger a
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

EigenSystem hermitian_eigen(const Operator& h) { return hermitian_eigen(h.entries()); }

Matrix expm_hermitian(const Matrix& h, double t) {
  const EigenSystem es = hermitian_eigen(h);
  Vector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) phases(k) = std::exp(-kI * es.values(k) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

// ---------------------------------------------------------------- embed

Operator embed(const Operator& small, std::span<const std::string> subspace_labels,
               const Basis& full_basis) {
  if (small.dim() != subspace_labels.size()) {
    throw LinalgError("embed: block dimension does not match the subspace label count");
  }
  std::vector<Eigen::Index> slots;
  slots.reserve(subspace_labels.size());
  for (const auto& label : subspace_labels) {
    slots.push_back(static_cast<Eigen::Index>(index_of(full_basis, label)));
  }
  Operator out = Operator::identity(full_basis);
  Matrix m = out.entries();
  for (auto s : slots) m(s, s) = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = 0; j < slots.size(); ++j)
      m(slots[i], slots[j]) = small.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return Operator(std::move(m), full_basis);
}

}  // namespace rydhol::qlin
