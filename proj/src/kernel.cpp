#include "dppt/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dppt/errors.hpp"

namespace dppt {

double SpectralKernel::trace() const {
  double t = 0.0;
  for (double v : eigenvalues) t += v;
  return t;
}

bool SpectralKernel::is_projection(double tol) const {
  for (double v : eigenvalues)
    if (std::fabs(v - 1.0) > tol) return false;
  return true;
}

namespace {

double gram_deviation(const std::vector<FunctionRep>& fns, const GroundSpace& space) {
  double dev = 0.0;
  for (std::size_t k = 0; k < fns.size(); ++k)
    for (std::size_t l = k; l < fns.size(); ++l) {
      const double g = inner_product_full(fns[k], fns[l], space);
      dev = std::max(dev, std::fabs(g - (k == l ? 1.0 : 0.0)));
    }
  return dev;
}

// modified Gram-Schmidt with one re-orthogonalization pass
std::vector<FunctionRep> orthonormalize(const std::vector<FunctionRep>& fns,
                                        const GroundSpace& space) {
  std::vector<FunctionRep> basis;
  for (const auto& f : fns) {
    FunctionRep v = f;
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.empty()) break;
      std::vector<const FunctionRep*> parts{&v};
      std::vector<double> coeffs{1.0};
      for (const auto& u : basis) {
        parts.push_back(&u);
        coeffs.push_back(-inner_product_full(v, u, space));
      }
      v = FunctionRep::linear_combination(parts, coeffs);
    }
    const double norm = std::sqrt(inner_product_full(v, v, space));
    if (norm < 1e-8)
      throw validation_error("eigenfunctions are linearly dependent");
    basis.push_back(FunctionRep::linear_combination({&v}, {1.0 / norm}));
  }
  return basis;
}

}  // namespace

SpectralKernel make_kernel(GroundSpace space, std::vector<double> eigenvalues,
                           std::vector<FunctionRep> eigenfunctions) {
  if (eigenvalues.empty())
    throw validation_error("kernel needs at least one eigenvalue");
  if (eigenvalues.size() != eigenfunctions.size())
    throw validation_error("eigenvalue/eigenfunction count mismatch");
  for (double v : eigenvalues)
    if (!(v > 0.0) || v > 1.0)
      throw validation_error("eigenvalue " + std::to_string(v) +
                             " outside (0, 1]");
  for (const auto& f : eigenfunctions) {
    if (f.is_discrete() != space.is_discrete())
      throw validation_error("eigenfunction kind does not match space");
    if (f.is_discrete() &&
        static_cast<int>(f.values().size()) != space.size)
      throw validation_error("eigenfunction length does not match space");
  }
  if (gram_deviation(eigenfunctions, space) > 1e-12)
    eigenfunctions = orthonormalize(eigenfunctions, space);

  SpectralKernel k;
  k.space = space;
  k.eigenvalues = std::move(eigenvalues);
  k.eigenfunctions = std::move(eigenfunctions);
  return k;
}

double CompressedKernel::trace() const {
  double t = 0.0;
  for (int i = 0; i < gram.rows(); ++i) t += gram(i, i);
  return t;
}

CompressedKernel compress(const SpectralKernel& kernel, const Cell& cell) {
  if (measure(kernel.space, cell) <= 0.0)
    throw std::domain_error("compression window has measure zero");
  const int r = kernel.rank();
  Matrix g(r, r);
  for (int k = 0; k < r; ++k)
    for (int l = k; l < r; ++l) {
      const double ip = inner_product_exact(kernel.eigenfunctions[k],
                                            kernel.eigenfunctions[l], cell);
      const double v =
          std::sqrt(kernel.eigenvalues[k] * kernel.eigenvalues[l]) * ip;
      g(k, l) = v;
      g(l, k) = v;
    }
  return CompressedKernel{cell, std::move(g)};
}

double clamp_unit_eigenvalue(double value) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value < 0.0 && value >= -1e-12) return 0.0;
  if (value > 1.0 && value <= 1.0 + 1e-12) return 1.0;
  throw validation_error("eigenvalue " + std::to_string(value) +
                         " outside [0, 1] beyond roundoff");
}

SymmetricEigen spectrum(const CompressedKernel& compressed) {
  SymmetricEigen eig = jacobi_eigh(compressed.gram);
  for (double& v : eig.values) v = clamp_unit_eigenvalue(v);
  return eig;
}

double eval_kernel(const SpectralKernel& kernel, double x, double y) {
  const auto& space = kernel.space;
  double s = 0.0;
  if (space.is_discrete()) {
    if (x != std::floor(x) || y != std::floor(y))
      throw std::domain_error("discrete kernel takes integer sites");
    const int i = static_cast<int>(x);
    const int j = static_cast<int>(y);
    if (i < 0 || i >= space.size || j < 0 || j >= space.size)
      throw std::domain_error("site out of range");
    for (int k = 0; k < kernel.rank(); ++k)
      s += kernel.eigenvalues[k] * kernel.eigenfunctions[k].value_at(i) *
           kernel.eigenfunctions[k].value_at(j);
    return s;
  }
  if (x < space.lo || x > space.hi || y < space.lo || y > space.hi)
    throw std::domain_error("point outside the ground interval");
  for (int k = 0; k < kernel.rank(); ++k)
    s += kernel.eigenvalues[k] * kernel.eigenfunctions[k].eval(x) *
         kernel.eigenfunctions[k].eval(y);
  return s;
}

double intensity_determinant(const SpectralKernel& kernel,
                             const std::vector<double>& points,
                             double* raw_out) {
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw std::domain_error("intensity needs pairwise distinct points");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = eval_kernel(kernel, points[i], points[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  const double raw = lu_determinant(m);
  if (raw_out) *raw_out = raw;
  return std::max(raw, 0.0);
}

Matrix kernel_matrix(const SpectralKernel& kernel) {
  if (!kernel.space.is_discrete())
    throw std::domain_error("kernel_matrix needs a discrete kernel");
  const int n = kernel.space.size;
  Matrix m(n, n);
  for (int k = 0; k < kernel.rank(); ++k) {
    const auto& v = kernel.eigenfunctions[k].values();
    const double lam = kernel.eigenvalues[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) += lam * v[i] * v[j];
  }
  return m;
}

SpectralKernel spectral_from_matrix(const Matrix& q, double floor) {
  if (!q.square()) throw validation_error("matrix kernel must be square");
  if (!is_symmetric(q, 1e-10))
    throw validation_error("matrix kernel must be symmetric");
  const SymmetricEigen eig = jacobi_eigh(symmetrized(q));
  const int n = q.rows();
  std::vector<double> values;
  std::vector<FunctionRep> fns;
  for (int k = 0; k < n; ++k) {
    const double lam = clamp_unit_eigenvalue(eig.values[k]);
    if (lam <= floor) continue;
    values.push_back(lam);
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = eig.vectors(i, k);
    fns.push_back(FunctionRep::discrete(std::move(col)));
  }
  if (values.empty()) throw validation_error("matrix kernel is numerically zero");
  return make_kernel(GroundSpace::discrete(n), std::move(values), std::move(fns));
}

}  // namespace dppt
