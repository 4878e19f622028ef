#pragma once

#include <complex>
#include <vector>

namespace dppt {

// Dense row-major matrix. Sizes in this library stay small (a few hundred
// rows at most), so everything below favors determinism over speed:
// fixed summation order, no blocking, no threads.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<T>& data() { return a_; }
  const std::vector<T>& data() const { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> a_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<std::complex<double>>;

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& a, double tol);
Matrix symmetrized(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

// Cyclic Jacobi for symmetric matrices. Converges when the off-diagonal
// Frobenius norm drops below off_tol (scaled by the matrix norm).
// Eigenvalues are sorted descending; eigenvector signs are canonicalized
// so the entry of largest magnitude is positive.
SymmetricEigen jacobi_eigh(Matrix a, double off_tol = 1e-12, int max_sweeps = 100);

// Determinant via LU with partial pivoting; works for double and
// complex<double>.
template <typename T>
T lu_determinant(DenseMatrix<T> a);

// Solve a x = b (square a, partial pivoting), b may have many columns.
Matrix lu_solve(Matrix a, Matrix b);

}  // namespace dppt
