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

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense complex linear algebra over small labeled product bases.
///
/// Every state and operator carries the ordered list of basis labels it is
/// expressed in. Product labels are plain concatenations of single-atom
/// labels, left atom first ("e" and "r" give "er").
namespace rydhol::qlin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Basis = std::vector<std::string>;

inline constexpr Complex kI{0.0, 1.0};

/// Thrown when a precondition on dimensions, labels or matrix structure fails.
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Position of `label` in `basis`; throws LinalgError for unknown labels.
std::size_t index_of(const Basis& basis, std::string_view label);

/// Product basis with labels concatenated left to right.
Basis product_basis(const Basis& left, const Basis& right);

class Ket {
 public:
  Ket(Vector amplitudes, Basis basis);

  /// Basis vector |label>.
  static Ket basis_state(const Basis& basis, std::string_view label);

  std::size_t dim() const { return basis_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  const Basis& basis() const { return basis_; }
  Complex operator[](std::string_view label) const;

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  Ket normalized() const;

 private:
  Vector amplitudes_;
  Basis basis_;
};

/// <a|b>; bases must agree.
Complex inner(const Ket& a, const Ket& b);

class Operator {
 public:
  Operator(Matrix entries, Basis basis);

  static Operator identity(const Basis& basis);
  static Operator zero(const Basis& basis);
  /// |ket_label><bra_label|
  static Operator transition(const Basis& basis, std::string_view ket_label,
                             std::string_view bra_label);
  static Operator outer(const Ket& ket, const Ket& bra);

  std::size_t dim() const { return basis_.size(); }
  const Matrix& entries() const { return entries_; }
  const Basis& basis() const { return basis_; }
  Complex operator()(std::string_view row, std::string_view col) const;

  /// max |A - A^dagger|
  double hermiticity_defect() const;
  /// max |A^dagger A - I|
  double unitarity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  bool is_unitary(double tol = 1e-8) const { return unitarity_defect() <= tol; }

  Ket apply(const Ket& k) const;

 private:
  Matrix entries_;
  Basis basis_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(Complex c, const Operator& a);

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-8) and positivity (-1e-7).
  DensityMatrix(Matrix entries, Basis basis);

  static DensityMatrix pure(const Ket& k);
  /// Skips validation; used for integrator output that reports its own drift.
  static DensityMatrix unchecked(Matrix entries, Basis basis);

  std::size_t dim() const { return basis_.size(); }
  const Matrix& entries() const { return entries_; }
  const Basis& basis() const { return basis_; }
  Complex operator()(std::string_view row, std::string_view col) const;

  Complex trace() const { return entries_.trace(); }
  double min_eigenvalue() const;

 private:
  struct NoCheck {};
  DensityMatrix(Matrix entries, Basis basis, NoCheck);

  Matrix entries_;
  Basis basis_;
};

Operator kron(const Operator& a, const Operator& b);
Ket kron(const Ket& a, const Ket& b);
Matrix kron(const Matrix& a, const Matrix& b);

Operator dagger(const Operator& a);

/// <state|op|state>
Complex expectation(const Ket& state, const Operator& op);
/// tr(rho op)
Complex expectation(const DensityMatrix& rho, const Operator& op);

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenSystem hermitian_eigen(const Matrix& h, double hermitian_tol = 1e-10);
EigenSystem hermitian_eigen(const Operator& h);

/// exp(-i h t) for Hermitian h via its eigen-decomposition.
Matrix expm_hermitian(const Matrix& h, double t);

/// Places `small` (expressed on `subspace_labels`, in that order) into the
/// space spanned by `full_basis`; identity on every other label.
Operator embed(const Operator& small, std::span<const std::string> subspace_labels,
               const Basis& full_basis);

double max_abs(const Matrix& m);

}  // namespace rydhol::qlin
