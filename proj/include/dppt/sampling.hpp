#pragma once

#include <vector>

#include "dppt/countlaw.hpp"
#include "dppt/kernel.hpp"
#include "dppt/linalg.hpp"
#include "dppt/rng.hpp"
#include "dppt/transference.hpp"

namespace dppt {

// A simple configuration on a discrete ground set: sorted distinct sites.
struct PointConfiguration {
  std::vector<int> sites;

  int size() const { return static_cast<int>(sites.size()); }
  bool occupied(int site) const;
  // xi(block): how many sites fall in the block
  int count(const std::vector<int>& block) const;
};

// Spectral two-phase sampler: Bernoulli(lambda_k) picks a set of
// eigenvectors, then sites are drawn sequentially from the shrinking
// projection. The eigendecomposition happens once at construction.
class DppSampler {
 public:
  explicit DppSampler(const Matrix& q);

  PointConfiguration sample(RngStream& rng) const;

  int sites() const { return static_cast<int>(values_.size()); }
  int rank() const { return rank_; }
  const std::vector<double>& eigenvalues() const { return values_; }

 private:
  std::vector<double> values_;  // clamped into [0,1], descending
  Matrix vectors_;
  int rank_ = 0;  // eigenvalues above 0
};

PointConfiguration sample(const Matrix& q, RngStream& rng);

// Empirical joint law of disjoint block counts over n_samples draws.
CountLaw sample_counts(const Matrix& q, const std::vector<std::vector<int>>& blocks,
                       RngStream& rng, std::int64_t n_samples);

// Continuous kernels sample through their own discretization: uniform
// partition into grid_cells cells, one normalized indicator per cell.
// The returned kernel's leakage is checked against max_leakage; failure
// suggests a finer grid.
TransferredKernel discretize_for_sampling(const SpectralKernel& kernel,
                                          int grid_cells, double max_leakage);

// Midpoints of the uniform grid, for mapping sampled sites back to points.
std::vector<double> grid_midpoints(const GroundSpace& space, int grid_cells);

}  // namespace dppt
