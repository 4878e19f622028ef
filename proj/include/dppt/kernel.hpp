#pragma once

#include <vector>

#include "dppt/ground.hpp"
#include "dppt/linalg.hpp"

namespace dppt {

// Finite-rank symmetric positive contraction in spectral form:
// K(x,y) = sum_k lambda_k phi_k(x) phi_k(y), lambda_k in (0,1],
// phi_k orthonormal in L^2 of the ground space.
struct SpectralKernel {
  GroundSpace space;
  std::vector<double> eigenvalues;
  std::vector<FunctionRep> eigenfunctions;

  int rank() const { return static_cast<int>(eigenvalues.size()); }
  double trace() const;
  bool is_projection(double tol = 0.0) const;
};

// Validates the spectral data. Eigenfunctions whose Gram matrix deviates
// from the identity by more than 1e-12 are re-orthonormalized with
// stabilized Gram-Schmidt; a dependent set is rejected.
SpectralKernel make_kernel(GroundSpace space, std::vector<double> eigenvalues,
                           std::vector<FunctionRep> eigenfunctions);

// K restricted to a window, written in the eigenfunction frame:
// gram[k][l] = sqrt(lambda_k lambda_l) (phi_k, phi_l)_{L^2(cell)}.
// Its spectrum is the nonzero spectrum of the compressed operator.
struct CompressedKernel {
  Cell cell;
  Matrix gram;

  double trace() const;
};

CompressedKernel compress(const SpectralKernel& kernel, const Cell& cell);

// Eigenvalues (descending, clamped into [0,1]: dips within 1e-12 of the
// ends are rounded in, anything worse is an error) and orthonormal
// eigenvectors in the eigenfunction frame.
SymmetricEigen spectrum(const CompressedKernel& compressed);

// Shared roundoff policy for eigenvalues that must lie in [0,1].
double clamp_unit_eigenvalue(double value);

double eval_kernel(const SpectralKernel& kernel, double x, double y);

// det [K(x_i, x_j)], clamped at 0; the raw determinant is written to
// raw_out when given (roundoff may dip to -1e-12).
double intensity_determinant(const SpectralKernel& kernel,
                             const std::vector<double>& points,
                             double* raw_out = nullptr);

// Dense n x n matrix of a discrete kernel.
Matrix kernel_matrix(const SpectralKernel& kernel);

// Spectral form of a symmetric matrix kernel on Discrete(n); eigenvalues
// at or below `floor` are dropped, spectrum outside [0,1] (beyond 1e-12
// roundoff) is rejected.
SpectralKernel spectral_from_matrix(const Matrix& q, double floor = 1e-12);

}  // namespace dppt
