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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rydhol/qlin.hpp"

using namespace rydhol::qlin;

namespace {

const Basis kControl{"g", "e"};
const Basis kTarget{"0", "1", "r"};

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

Matrix random_hermitian(std::mt19937_64& rng, int n) {
  const Matrix a = random_matrix(rng, n);
  return (a + a.adjoint()) / 2.0;
}

Basis labels(int n) {
  Basis b;
  for (int i = 0; i < n; ++i) b.push_back("s" + std::to_string(i));
  return b;
}

// Cyclic Jacobi eigenvalues of a complex Hermitian matrix, written
// independently of the library solver.
std::vector<double> jacobi_eigenvalues(Matrix a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex ph = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double th = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(th), s = std::sin(th);
        // Rotation in the (p, q) plane that zeroes a(p, q).
        Matrix j = Matrix::Identity(n, n);
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s * ph;
        j(q, p) = -s * std::conj(ph);
        a = j.adjoint() * a * j;
      }
    }
  }
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < n; ++i) ev.push_back(a(i, i).real());
  std::sort(ev.begin(), ev.end());
  return ev;
}

Operator sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return {m, kControl};
}

}  // namespace

TEST_SUITE("qlin") {
  TEST_CASE("product basis concatenates labels, left factor outermost") {
    const Basis b = product_basis(kControl, kTarget);
    CHECK(b == Basis{"g0", "g1", "gr", "e0", "e1", "er"});
    CHECK(index_of(b, "er") == 5);
    CHECK_THROWS_AS(index_of(b, "x"), LinalgError);
  }

  TEST_CASE("kron of identities is the identity") {
    const Operator k = kron(Operator::identity(kControl), Operator::identity(kTarget));
    CHECK(k.dim() == 6);
    CHECK(max_abs(k.entries() - Matrix::Identity(6, 6)) == 0.0);
  }

  TEST_CASE("kron of basis kets lands on the product slot") {
    const Ket er = kron(Ket::basis_state(kControl, "e"), Ket::basis_state(kTarget, "r"));
    CHECK(er["er"] == Complex(1.0));
    CHECK(er.amplitudes().norm() == doctest::Approx(1.0));
  }

  TEST_CASE("kron(sigma_x, I) maps g0 to e0") {
    const Operator x = kron(sigma_x(), Operator::identity(kTarget));
    const Basis b = product_basis(kControl, kTarget);
    const Ket out = x.apply(Ket::basis_state(b, "g0"));
    // Hand expansion: sigma_x (x) I_3 swaps the g and e blocks.
    Vector expected = Vector::Zero(6);
    expected(3) = 1.0;
    CHECK(max_abs(out.amplitudes() - expected) == 0.0);
  }

  TEST_CASE("kron is associative") {
    std::mt19937_64 rng(7);
    const Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 3), c = random_matrix(rng, 2);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-14);
  }

  TEST_CASE("kron matches an explicit index formula") {
    std::mt19937_64 rng(11);
    const Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 3);
    const Matrix k = kron(a, b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) CHECK(std::abs(k(3 * i + p, 3 * j + q) - a(i, j) * b(p, q)) == 0.0);
  }

  TEST_CASE("dagger") {
    CHECK(max_abs(dagger(Operator::identity(kTarget)).entries() - Matrix::Identity(3, 3)) == 0.0);
    const Operator eg = Operator::transition(kControl, "e", "g");
    CHECK(dagger(eg).entries() == Operator::transition(kControl, "g", "e").entries());

    std::mt19937_64 rng(3);
    const Basis b = labels(4);
    const Operator a(random_matrix(rng, 4), b), bb(random_matrix(rng, 4), b);
    const Complex c{0.3, -1.7};
    const Operator lhs = dagger(c * a + bb);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const Complex want = std::conj(c) * std::conj(a.entries()(j, i)) + std::conj(bb.entries()(j, i));
        CHECK(std::abs(lhs.entries()(i, j) - want) <= 1e-14);
      }
  }

  TEST_CASE("expectation values") {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(expectation(Ket::basis_state(kControl, "g"), Operator(z, kControl)) == Complex(1.0));

    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Operator flip = Operator::transition(kControl, "e", "g") + Operator::transition(kControl, "g", "e");
    CHECK(expectation(Ket(plus, kControl), flip).real() == doctest::Approx(1.0).epsilon(1e-15));

    const DensityMatrix rho = DensityMatrix::pure(Ket(plus, kControl));
    CHECK(expectation(rho, flip).real() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("hermitian_eigen on small cases") {
    const EigenSystem id = hermitian_eigen(Operator::identity(kTarget));
    for (int i = 0; i < 3; ++i) CHECK(id.values(i) == doctest::Approx(1.0));
    const EigenSystem x = hermitian_eigen(sigma_x());
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(x.values(1) == doctest::Approx(1.0));
  }

  TEST_CASE("hermitian_eigen agrees with a Jacobi oracle and reconstructs") {
    std::mt19937_64 rng(2024);
    for (int n : {2, 5, 12}) {
      const Matrix h = random_hermitian(rng, n);
      const EigenSystem es = hermitian_eigen(h);
      const std::vector<double> oracle = jacobi_eigenvalues(h);
      for (int i = 0; i < n; ++i) CHECK(es.values(i) == doctest::Approx(oracle[i]).epsilon(1e-10));
      for (int i = 1; i < n; ++i) CHECK(es.values(i - 1) <= es.values(i));
      const Matrix v = es.vectors;
      CHECK(max_abs(v.adjoint() * v - Matrix::Identity(n, n)) <= 1e-12);
      CHECK(max_abs(v * es.values.cast<Complex>().asDiagonal() * v.adjoint() - h) <= 1e-9 * n);
    }
  }

  TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eigen(m), LinalgError);
  }

  TEST_CASE("expm_hermitian is unitary and solves the Schrodinger equation") {
    std::mt19937_64 rng(5);
    const Matrix h = random_hermitian(rng, 4);
    const Matrix u = expm_hermitian(h, 0.37);
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) <= 1e-12);
    // Taylor-series oracle for exp(-i h t).
    Matrix series = Matrix::Identity(4, 4), term = Matrix::Identity(4, 4);
    for (int k = 1; k < 60; ++k) {
      term = term * (-kI * 0.37 * h) / static_cast<double>(k);
      series += term;
    }
    CHECK(max_abs(u - series) <= 1e-12);
  }

  TEST_CASE("embed places a block and leaves the rest as identity") {
    const Basis full = product_basis(kControl, kTarget);
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const std::vector<std::string> pair{"e0", "e1"};
    const Operator u = embed(Operator(x, {"0", "1"}), pair, full);
    CHECK(u.is_unitary(1e-15));
    Matrix expected = Matrix::Identity(6, 6);
    expected(3, 3) = 0;
    expected(4, 4) = 0;
    expected(3, 4) = 1;
    expected(4, 3) = 1;
    CHECK(max_abs(u.entries() - expected) == 0.0);

    const Operator id = embed(Operator::identity({"0", "1"}), pair, full);
    CHECK(max_abs(id.entries() - Matrix::Identity(6, 6)) == 0.0);

    const std::vector<std::string> bad{"e0", "q"};
    CHECK_THROWS_AS(embed(Operator::identity({"0", "1"}), bad, full), LinalgError);
  }

  TEST_CASE("density matrix validation") {
    const Ket g = Ket::basis_state(kControl, "g");
    const DensityMatrix rho = DensityMatrix::pure(g);
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    CHECK(rho.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-15));

    Matrix half = Matrix::Identity(2, 2) * 0.5;
    CHECK_NOTHROW(DensityMatrix(half, kControl));
    CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2), kControl), LinalgError);
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg, kControl), LinalgError);
    Matrix skew(2, 2);
    skew << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS_AS(DensityMatrix(skew, kControl), LinalgError);
  }

  TEST_CASE("operator and ket construction errors") {
    CHECK_THROWS_AS(Ket(Vector::Zero(3), kControl), LinalgError);
    CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3), kControl), LinalgError);
    CHECK_THROWS_AS(Operator::identity(kControl) * Operator::identity(kTarget), LinalgError);
  }

  TEST_CASE("defects and normalization") {
    const Operator x = sigma_x();
    CHECK(x.hermiticity_defect() == 0.0);
    CHECK(x.unitarity_defect() == 0.0);
    const Operator eg = Operator::transition(kControl, "e", "g");
    CHECK(eg.hermiticity_defect() == 1.0);
    CHECK_FALSE(eg.is_unitary());

    Vector v(2);
    v << 3.0, 4.0;
    const Ket k(v, kControl);
    CHECK(k.norm() == doctest::Approx(5.0));
    CHECK_FALSE(k.is_normalized());
    CHECK(k.normalized().is_normalized());
    CHECK(std::abs(inner(k.normalized(), k.normalized()) - Complex(1.0)) <= 1e-15);
  }
}
