#include "dppt/transference.hpp"

#include <algorithm>
#include <cmath>

#include "dppt/errors.hpp"

namespace dppt {

namespace {

FunctionRep singleton_vector(int size, int site) {
  std::vector<double> v(size, 0.0);
  v[site] = 1.0;
  return FunctionRep::discrete(std::move(v));
}

FunctionRep normalized_indicator(const GroundSpace& space, const Cell& cell) {
  if (cell.is_discrete()) {
    std::vector<double> v(space.size, 0.0);
    const double a = 1.0 / std::sqrt(static_cast<double>(cell.site_count()));
    for (int s : cell.site_list()) v[s] = a;
    return FunctionRep::discrete(std::move(v));
  }
  const double a = 1.0 / std::sqrt(cell.length());
  std::vector<FunctionRep::Piece> pieces;
  for (const auto& p : cell.pieces())
    pieces.push_back({p.a, p.b, {a * std::sqrt(p.length())}});
  return FunctionRep::piecewise(std::move(pieces));
}

// degree-major enumeration: degree 0 on every piece, then degree 1, ...
FunctionRep interval_basis_function(const Cell& cell, int index) {
  const int pieces = static_cast<int>(cell.pieces().size());
  const int degree = index / pieces;
  const auto& p = cell.pieces()[index % pieces];
  return FunctionRep::legendre_basis(p.a, p.b, degree);
}

}  // namespace

std::vector<CellBasis> build_cell_bases(const SpectralKernel& kernel,
                                        const Partition& partition, double tol,
                                        int max_degree) {
  if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
  if (!(kernel.space == partition.space()))
    throw validation_error("kernel and partition live on different spaces");
  const int r = kernel.rank();
  const double per_cell_budget = tol / partition.size();

  std::vector<CellBasis> bases;
  for (int i = 0; i < partition.size(); ++i) {
    const Cell& cell = partition.cell(i);
    CellBasis basis;
    basis.cell_index = i;

    if (cell.is_discrete()) {
      for (int s : cell.site_list())
        basis.functions.push_back(singleton_vector(kernel.space.size, s));
      basis.residual = 0.0;
      bases.push_back(std::move(basis));
      continue;
    }

    std::vector<double> cap(r), captured(r, 0.0);
    for (int k = 0; k < r; ++k)
      cap[k] = inner_product_exact(kernel.eigenfunctions[k],
                                   kernel.eigenfunctions[k], cell);
    auto residual = [&] {
      double s = 0.0;
      for (int k = 0; k < r; ++k)
        s += kernel.eigenvalues[k] * std::max(0.0, cap[k] - captured[k]);
      return s;
    };

    const int budget =
        static_cast<int>(cell.pieces().size()) * (max_degree + 1);
    double res = residual();
    while (res > per_cell_budget) {
      if (basis.count() >= budget)
        throw tolerance_error("leakage target unreachable on cell " +
                                  std::to_string(i) +
                                  ": basis degree budget exhausted",
                              res, per_cell_budget);
      FunctionRep w = interval_basis_function(cell, basis.count());
      for (int k = 0; k < r; ++k) {
        const double c = inner_product_exact(kernel.eigenfunctions[k], w, cell);
        captured[k] += c * c;
      }
      basis.functions.push_back(std::move(w));
      res = residual();
    }
    basis.residual = res;
    if (basis.functions.empty())
      basis.functions.push_back(interval_basis_function(cell, 0));
    bases.push_back(std::move(basis));
  }
  return bases;
}

std::vector<CellBasis> build_cell_bases_fixed(const SpectralKernel& kernel,
                                              const Partition& partition,
                                              int per_cell) {
  if (per_cell < 1) throw validation_error("per_cell must be positive");
  if (!(kernel.space == partition.space()))
    throw validation_error("kernel and partition live on different spaces");
  const int r = kernel.rank();

  std::vector<CellBasis> bases;
  for (int i = 0; i < partition.size(); ++i) {
    const Cell& cell = partition.cell(i);
    CellBasis basis;
    basis.cell_index = i;

    if (cell.is_discrete()) {
      if (per_cell == 1 && cell.site_count() > 1) {
        basis.functions.push_back(normalized_indicator(kernel.space, cell));
      } else {
        const int n = std::min<int>(per_cell, cell.site_count());
        for (int j = 0; j < n; ++j)
          basis.functions.push_back(
              singleton_vector(kernel.space.size, cell.site_list()[j]));
      }
    } else if (per_cell == 1) {
      basis.functions.push_back(normalized_indicator(kernel.space, cell));
    } else {
      for (int j = 0; j < per_cell; ++j)
        basis.functions.push_back(interval_basis_function(cell, j));
    }

    double res = 0.0;
    for (int k = 0; k < r; ++k) {
      double cap = inner_product_exact(kernel.eigenfunctions[k],
                                       kernel.eigenfunctions[k], cell);
      for (const auto& w : basis.functions) {
        const double c = inner_product_exact(kernel.eigenfunctions[k], w, cell);
        cap -= c * c;
      }
      res += kernel.eigenvalues[k] * std::max(0.0, cap);
    }
    basis.residual = res;
    bases.push_back(std::move(basis));
  }
  return bases;
}

TransferMap build_transfer(const SpectralKernel& kernel,
                           const Partition& partition,
                           const std::vector<CellBasis>& bases) {
  if (static_cast<int>(bases.size()) != partition.size())
    throw validation_error("one cell basis per partition cell required");
  const int r = kernel.rank();

  TransferMap map;
  int dim = 0;
  for (int i = 0; i < partition.size(); ++i) {
    if (bases[i].cell_index != i)
      throw validation_error("cell bases out of order");
    map.blocks.push_back({dim, bases[i].count()});
    dim += bases[i].count();
  }

  map.t = Matrix(dim, r);
  for (int i = 0; i < partition.size(); ++i) {
    const Cell& cell = partition.cell(i);
    for (int j = 0; j < bases[i].count(); ++j) {
      const int row = map.blocks[i].start + j;
      for (int k = 0; k < r; ++k)
        map.t(row, k) = inner_product_exact(kernel.eigenfunctions[k],
                                            bases[i].functions[j], cell);
    }
  }

  double leak = 0.0;
  for (int k = 0; k < r; ++k) {
    double col = 0.0;
    for (int row = 0; row < dim; ++row) col += map.t(row, k) * map.t(row, k);
    leak += kernel.eigenvalues[k] * std::max(0.0, 1.0 - col);
  }
  map.leakage = leak;
  return map;
}

TransferredKernel transfer(const SpectralKernel& kernel, const TransferMap& map) {
  if (map.t.cols() != kernel.rank())
    throw validation_error("transfer map rank does not match kernel");
  if (map.leakage > map.declared_tol)
    throw tolerance_error("transfer leakage above declared tolerance",
                          map.leakage, map.declared_tol);
  const int dim = map.dim();
  const int r = kernel.rank();
  Matrix q(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      double s = 0.0;
      for (int k = 0; k < r; ++k)
        s += kernel.eigenvalues[k] * map.t(a, k) * map.t(b, k);
      q(a, b) = s;
      q(b, a) = s;
    }
  return TransferredKernel{std::move(q), map.blocks, map.leakage,
                           map.declared_tol};
}

TransferredKernel transfer_kernel(const SpectralKernel& kernel,
                                  const Partition& partition, double tol,
                                  int max_degree) {
  auto bases = build_cell_bases(kernel, partition, tol, max_degree);
  auto map = build_transfer(kernel, partition, bases);
  map.declared_tol = tol;
  return transfer(kernel, map);
}

double spectrum_check(const SpectralKernel& kernel, const TransferredKernel& q) {
  SymmetricEigen eig = jacobi_eigh(q.q);
  std::vector<double> a = eig.values;
  std::vector<double> b = kernel.eigenvalues;
  std::sort(b.begin(), b.end(), std::greater<double>());
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double gap = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    gap = std::max(gap, std::fabs(a[k] - b[k]));
  return gap;
}

std::vector<double> apply_transfer(const std::vector<CellBasis>& bases,
                                   const Partition& partition,
                                   const FunctionRep& f) {
  std::vector<double> out;
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (const auto& w : bases[i].functions)
      out.push_back(
          inner_product_exact(f, w, partition.cell(static_cast<int>(i))));
  return out;
}

}  // namespace dppt
