#pragma once

#include <limits>
#include <vector>

#include "dppt/ground.hpp"
#include "dppt/kernel.hpp"
#include "dppt/linalg.hpp"

namespace dppt {

// Orthonormal functions supported on one cell: singleton vectors on
// discrete cells, shifted normalized Legendre polynomials on interval
// cells (degree-major across the cell's pieces). `residual` is the
// kernel-weighted eigenfunction energy the truncation leaves behind.
struct CellBasis {
  int cell_index = 0;
  std::vector<FunctionRep> functions;
  double residual = 0.0;

  int count() const { return static_cast<int>(functions.size()); }
};

// Contiguous index range of one cell's basis inside F.
struct Block {
  int start = 0;
  int len = 0;
};

// Rows indexed by F = concatenated cell bases, columns by eigenfunction.
struct TransferMap {
  Matrix t;                   // t(row, k) = (phi_k, w_row)
  std::vector<Block> blocks;  // block i = rows of cell i
  double leakage = 0.0;       // sum_k lambda_k (1 - column norm^2)
  double declared_tol = std::numeric_limits<double>::infinity();

  int dim() const { return t.rows(); }
};

// Discrete kernel carrying the transferred law: Q = T diag(lambda) T^T.
struct TransferredKernel {
  Matrix q;
  std::vector<Block> blocks;
  double leakage = 0.0;
  double tol = std::numeric_limits<double>::infinity();

  int dim() const { return q.rows(); }
};

// Grows each cell's basis until the cell's residual
//   sum_k lambda_k (||1_cell phi_k||^2 - sum_j (phi_k, w_j)^2)
// drops to tol / #cells; throws tolerance_error (with the achieved
// residual) when the degree budget runs out first. Discrete cells take
// the full singleton basis and have residual 0.
std::vector<CellBasis> build_cell_bases(const SpectralKernel& kernel,
                                        const Partition& partition, double tol,
                                        int max_degree = 32);

// Fixed basis size per cell, leakage reported rather than driven to a
// target. per_cell = 1 gives normalized cell indicators.
std::vector<CellBasis> build_cell_bases_fixed(const SpectralKernel& kernel,
                                              const Partition& partition,
                                              int per_cell);

TransferMap build_transfer(const SpectralKernel& kernel,
                           const Partition& partition,
                           const std::vector<CellBasis>& bases);

// Refuses (tolerance_error) when the map's leakage exceeds its declared
// tolerance.
TransferredKernel transfer(const SpectralKernel& kernel, const TransferMap& map);

// build_cell_bases + build_transfer + transfer in one call.
TransferredKernel transfer_kernel(const SpectralKernel& kernel,
                                  const Partition& partition, double tol,
                                  int max_degree = 32);

// Max gap between the descending spectra of Q and K (shorter list padded
// with zeros). Unitary equivalence puts this at 0 up to leakage.
double spectrum_check(const SpectralKernel& kernel, const TransferredKernel& q);

// Coordinates of f in the concatenated cell bases: entry (i,j) is
// (f, w_{i,j}). This is the transfer map applied to f.
std::vector<double> apply_transfer(const std::vector<CellBasis>& bases,
                                   const Partition& partition,
                                   const FunctionRep& f);

}  // namespace dppt
