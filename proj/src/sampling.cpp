#include "dppt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dppt/errors.hpp"

namespace dppt {

bool PointConfiguration::occupied(int site) const {
  return std::binary_search(sites.begin(), sites.end(), site);
}

int PointConfiguration::count(const std::vector<int>& block) const {
  int c = 0;
  for (int s : block) c += occupied(s) ? 1 : 0;
  return c;
}

DppSampler::DppSampler(const Matrix& q) {
  if (!q.square()) throw validation_error("kernel matrix must be square");
  if (!is_symmetric(q, 1e-10))
    throw validation_error("kernel matrix must be symmetric");
  SymmetricEigen eig = jacobi_eigh(symmetrized(q));
  for (double& v : eig.values) v = clamp_unit_eigenvalue(v);
  values_ = std::move(eig.values);
  vectors_ = std::move(eig.vectors);
  rank_ = 0;
  while (rank_ < static_cast<int>(values_.size()) && values_[rank_] > 0.0)
    ++rank_;
}

PointConfiguration DppSampler::sample(RngStream& rng) const {
  const int n = sites();

  // phase 1: eigenvector subset
  std::vector<int> active;
  for (int k = 0; k < rank_; ++k)
    if (values_[k] >= 1.0 || rng.next_bernoulli(values_[k])) active.push_back(k);

  int d = static_cast<int>(active.size());
  PointConfiguration config;
  if (d == 0) return config;

  // columns of the running projection basis, updated in place
  Matrix a(n, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = vectors_(i, active[j]);

  std::vector<double> row_mass(n);
  while (d > 0) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double m = 0.0;
      for (int j = 0; j < d; ++j) m += a(i, j) * a(i, j);
      row_mass[i] = m;
      total += m;
    }
    // total = d in exact arithmetic
    double u = rng.next_double() * total;
    int site = n - 1;
    for (int i = 0; i < n; ++i) {
      u -= row_mass[i];
      if (u <= 0.0) {
        site = i;
        break;
      }
    }
    config.sites.push_back(site);

    // pivot column: largest weight at the chosen site
    int pivot = 0;
    for (int j = 1; j < d; ++j)
      if (std::fabs(a(site, j)) > std::fabs(a(site, pivot))) pivot = j;
    if (pivot != d - 1)
      for (int i = 0; i < n; ++i) std::swap(a(i, pivot), a(i, d - 1));

    const double head = a(site, d - 1);
    for (int j = 0; j < d - 1; ++j) {
      const double f = a(site, j) / head;
      for (int i = 0; i < n; ++i) a(i, j) -= f * a(i, d - 1);
      a(site, j) = 0.0;
    }
    --d;

    // modified Gram-Schmidt on the survivors, second pass when a norm
    // comes out small
    for (int j = 0; j < d; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int p = 0; p < j; ++p) {
          double dot = 0.0;
          for (int i = 0; i < n; ++i) dot += a(i, p) * a(i, j);
          for (int i = 0; i < n; ++i) a(i, j) -= dot * a(i, p);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += a(i, j) * a(i, j);
        norm = std::sqrt(norm);
        if (pass == 1 || norm >= 1e-8) {
          if (norm <= 0.0)
            throw std::runtime_error("sampler basis collapsed");
          for (int i = 0; i < n; ++i) a(i, j) /= norm;
          break;
        }
      }
    }
  }

  std::sort(config.sites.begin(), config.sites.end());
  return config;
}

PointConfiguration sample(const Matrix& q, RngStream& rng) {
  return DppSampler(q).sample(rng);
}

CountLaw sample_counts(const Matrix& q, const std::vector<std::vector<int>>& blocks,
                       RngStream& rng, std::int64_t n_samples) {
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  std::vector<bool> seen(q.rows(), false);
  for (const auto& b : blocks)
    for (int s : b) {
      if (s < 0 || s >= q.rows())
        throw std::domain_error("block site out of range");
      if (seen[s]) throw std::domain_error("blocks must be disjoint");
      seen[s] = true;
    }

  const DppSampler sampler(q);
  CountLaw law = CountLaw::zeros(
      std::vector<int>(blocks.size(), sampler.rank()));
  law.provenance = CountLaw::Provenance::Empirical;
  law.n_samples = n_samples;

  const double w = 1.0 / static_cast<double>(n_samples);
  std::vector<int> counts(blocks.size());
  for (std::int64_t s = 0; s < n_samples; ++s) {
    const PointConfiguration config = sampler.sample(rng);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      counts[b] = config.count(blocks[b]);
    law.at(counts) += w;
  }
  return law;
}

TransferredKernel discretize_for_sampling(const SpectralKernel& kernel,
                                          int grid_cells, double max_leakage) {
  if (kernel.space.is_discrete())
    throw validation_error("kernel is already discrete");
  if (grid_cells < 1) throw validation_error("grid needs at least one cell");
  const Partition grid = Partition::uniform_interval(kernel.space, grid_cells);
  const auto bases = build_cell_bases_fixed(kernel, grid, 1);
  TransferMap map = build_transfer(kernel, grid, bases);
  if (map.leakage > max_leakage)
    throw tolerance_error(
        "discretization leakage too large, use a finer grid", map.leakage,
        max_leakage);
  map.declared_tol = max_leakage;
  return transfer(kernel, map);
}

std::vector<double> grid_midpoints(const GroundSpace& space, int grid_cells) {
  if (space.is_discrete())
    throw validation_error("midpoints need an interval space");
  std::vector<double> mids(grid_cells);
  const double len = space.hi - space.lo;
  for (int i = 0; i < grid_cells; ++i)
    mids[i] = space.lo + len * (i + 0.5) / grid_cells;
  return mids;
}

}  // namespace dppt
