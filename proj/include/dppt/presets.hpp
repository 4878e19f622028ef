#pragma once

#include <string>
#include <vector>

#include "dppt/kernel.hpp"
#include "dppt/linalg.hpp"

namespace dppt {

// Reference kernels used across tests and the CLI.

// K(x,y) = 1 on [0,1]: one uniform point, always.
SpectralKernel preset_constant_rank1();

// Projection onto span{1, sqrt2 cos(2 pi k x), sqrt2 sin(2 pi k x)},
// expanded in Legendre polynomials up to max_degree. Rank must be odd
// coverage-wise: 1, 3, 5, ... take whole frequency pairs; even ranks stop
// at a cosine.
SpectralKernel preset_fourier_projection(int rank, int max_degree = 32);

// Mixed spectrum on [0,1] with Legendre eigenfunctions.
SpectralKernel preset_legendre(const std::vector<double>& eigenvalues);

// Independent sites: K = diag(p).
Matrix preset_diag(const std::vector<double>& probs);

// Discrete sine kernel K[s,t] = sin(2 pi w (s-t)) / (pi (s-t)), K[s,s] = 2w.
// Spectrum lies strictly inside (0,1) for w < 1/2, but crowds both ends as
// n grows (the gap from 1 is ~5e-9 at n=10 already); consumers that need a
// uniform contraction bound shrink it themselves, as the subset enumeration
// does.
Matrix preset_discretized_sine(int n, double bandwidth = 0.3);

// Seeded symmetric contraction with spectrum inside [lambda_min,
// lambda_max]: random rotations applied to an evenly spaced spectrum.
Matrix random_contraction(int n, std::uint64_t seed, double lambda_min = 0.05,
                          double lambda_max = 0.95);

}  // namespace dppt
