#include "dppt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dppt/errors.hpp"

namespace dppt {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw validation_error("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::fabs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw validation_error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (!a.square()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

Matrix symmetrized(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigh(Matrix a, double off_tol, int max_sweeps) {
  if (!a.square()) throw validation_error("jacobi_eigh: matrix not square");
  const int n = a.rows();
  Matrix v = Matrix::identity(n);
  if (n == 0) return {{}, v};

  // Absolute threshold, but never tighter than roundoff on the matrix scale.
  const double scale = std::max(1.0, max_abs(a));
  const double stop = std::max(off_tol, 1e-15 * scale * n);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = akp - s * (akq + tau * akp);
          a(p, k) = a(k, p);
          a(k, q) = akq + s * (akp - tau * akq);
          a(q, k) = a(k, q);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - s * (vkq + tau * vkp);
          v(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  if (off_diagonal_norm(a) >= std::max(stop, 1e-10 * scale * n))
    throw std::runtime_error("jacobi_eigh: no convergence");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = a(src, src);
    // canonical sign: largest-magnitude entry positive
    int imax = 0;
    double amax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double av = std::fabs(v(i, src));
      if (av > amax) {
        amax = av;
        imax = i;
      }
    }
    const double sign = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

template <typename T>
T lu_determinant(DenseMatrix<T> a) {
  if (!a.square()) throw validation_error("lu_determinant: matrix not square");
  const int n = a.rows();
  T det = T{1};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(a(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) return T{0};
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const T inv = T{1} / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const T f = a(r, col) * inv;
      if (f == T{0}) continue;
      for (int j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

template double lu_determinant<double>(DenseMatrix<double>);
template std::complex<double> lu_determinant<std::complex<double>>(
    DenseMatrix<std::complex<double>>);

Matrix lu_solve(Matrix a, Matrix b) {
  if (!a.square() || a.rows() != b.rows())
    throw validation_error("lu_solve: dimension mismatch");
  const int n = a.rows();
  const int m = b.cols();
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::fabs(a(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) throw validation_error("lu_solve: singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      for (int j = 0; j < m; ++j) std::swap(b(pivot, j), b(col, j));
    }
    const double inv = 1.0 / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (int j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
      for (int j = 0; j < m; ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    const double inv = 1.0 / a(col, col);
    for (int j = 0; j < m; ++j) {
      double s = b(col, j);
      for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
      b(col, j) = s * inv;
    }
  }
  return b;
}

}  // namespace dppt
