#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "dppt/linalg.hpp"

using namespace dppt;

namespace {

Matrix psd8() {
  // integer seed data, rank 8; see tools/oracles/eigen8.py
  const int n = 8;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const long long k = i * n + j + 1;
      a(i, j) = static_cast<double>((k * k * k) % 101 - 50);
    }
  Matrix s = matmul(transpose(a), a);
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += s(i, i);
  CHECK(tr == 50729.0);
  for (auto& v : s.data()) v /= tr;
  return s;
}

}  // namespace

TEST_CASE("jacobi recovers the rank-1 projection spectrum") {
  Matrix m(2, 2, 0.5);
  const SymmetricEigen e = jacobi_eigh(m);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(e.values[1]) < 1e-14);
  // eigenvector of 1 is (1,1)/sqrt2
  CHECK(e.vectors(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(e.vectors(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("jacobi matches the Sturm-bisection oracle on an 8x8 contraction") {
  // frozen from tools/oracles/eigen8.py (Householder + Sturm bisection,
  // 50-digit arithmetic)
  const double expected[8] = {
      2.83204771843396097e-01, 2.20834638803646566e-01,
      1.73650717318586556e-01, 1.41942348906568261e-01,
      1.09770720921111217e-01, 4.43879410532549631e-02,
      1.77592247385456037e-02, 8.44963641489075365e-03};

  const Matrix b = psd8();
  const SymmetricEigen e = jacobi_eigh(b);
  REQUIRE(e.values.size() == 8);
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(e.values[i] - expected[i]) < 1e-8);

  // residual and orthonormality
  for (int k = 0; k < 8; ++k) {
    double res = 0.0;
    for (int i = 0; i < 8; ++i) {
      double bv = 0.0;
      for (int j = 0; j < 8; ++j) bv += b(i, j) * e.vectors(j, k);
      res = std::max(res, std::abs(bv - e.values[k] * e.vectors(i, k)));
    }
    CHECK(res < 1e-12);
  }
  const Matrix vtv = matmul(transpose(e.vectors), e.vectors);
  CHECK(max_abs_diff(vtv, Matrix::identity(8)) < 1e-12);
}

TEST_CASE("jacobi sorts descending and handles diagonal input") {
  Matrix d(3, 3);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const SymmetricEigen e = jacobi_eigh(d);
  CHECK(e.values[0] == doctest::Approx(0.7));
  CHECK(e.values[1] == doctest::Approx(0.3));
  CHECK(e.values[2] == doctest::Approx(0.0));
}

TEST_CASE("lu determinant on integer and complex matrices") {
  Matrix m(3, 3);
  const double rows[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  // det = 2(12-1) - 1(4-0) = 18
  CHECK(lu_determinant(m) == doctest::Approx(18.0).epsilon(1e-14));

  Matrix sing(2, 2, 1.0);
  CHECK(std::abs(lu_determinant(sing)) < 1e-14);

  CMatrix c(2, 2);
  c(0, 0) = {0.0, 1.0};
  c(1, 1) = {0.0, 1.0};
  const std::complex<double> det = lu_determinant(c);
  CHECK(std::abs(det - std::complex<double>{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("lu solve round-trips a known system") {
  Matrix a(2, 2);
  a(0, 0) = 4.0; a(0, 1) = 1.0;
  a(1, 0) = 1.0; a(1, 1) = 3.0;
  Matrix b(2, 1);
  b(0, 0) = 9.0;
  b(1, 0) = 10.0;
  const Matrix x = lu_solve(a, b);
  // 4x + y = 9, x + 3y = 10 -> x = 17/11, y = 31/11
  CHECK(x(0, 0) == doctest::Approx(17.0 / 11.0).epsilon(1e-14));
  CHECK(x(1, 0) == doctest::Approx(31.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("symmetry helpers") {
  Matrix m(2, 2);
  m(0, 1) = 1e-3;
  CHECK(!is_symmetric(m, 1e-6));
  CHECK(is_symmetric(symmetrized(m), 0.0));
  CHECK(symmetrized(m)(0, 1) == doctest::Approx(5e-4));
}
