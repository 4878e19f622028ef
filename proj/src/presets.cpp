#include "dppt/presets.hpp"

#include <cmath>

#include "dppt/errors.hpp"
#include "dppt/rng.hpp"

namespace dppt {

SpectralKernel preset_constant_rank1() {
  return make_kernel(GroundSpace::interval(0.0, 1.0), {1.0},
                     {FunctionRep::polynomial(0.0, 1.0, {1.0})});
}

namespace {

struct FourierMode {
  int frequency;
  bool sine;
};

double fourier_eval(double x, const void* ctx) {
  const auto* mode = static_cast<const FourierMode*>(ctx);
  const double arg = 2.0 * M_PI * mode->frequency * x;
  return std::sqrt(2.0) * (mode->sine ? std::sin(arg) : std::cos(arg));
}

}  // namespace

SpectralKernel preset_fourier_projection(int rank, int max_degree) {
  if (rank < 1) throw validation_error("rank must be positive");
  std::vector<FunctionRep> fns;
  fns.push_back(FunctionRep::polynomial(0.0, 1.0, {1.0}));
  int frequency = 1;
  while (static_cast<int>(fns.size()) < rank) {
    FourierMode cos_mode{frequency, false};
    fns.push_back(
        FunctionRep::project(0.0, 1.0, max_degree, fourier_eval, &cos_mode, 64));
    if (static_cast<int>(fns.size()) < rank) {
      FourierMode sin_mode{frequency, true};
      fns.push_back(FunctionRep::project(0.0, 1.0, max_degree, fourier_eval,
                                         &sin_mode, 64));
    }
    ++frequency;
  }
  return make_kernel(GroundSpace::interval(0.0, 1.0),
                     std::vector<double>(rank, 1.0), std::move(fns));
}

SpectralKernel preset_legendre(const std::vector<double>& eigenvalues) {
  std::vector<FunctionRep> fns;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k)
    fns.push_back(FunctionRep::legendre_basis(0.0, 1.0, static_cast<int>(k)));
  return make_kernel(GroundSpace::interval(0.0, 1.0), eigenvalues,
                     std::move(fns));
}

Matrix preset_diag(const std::vector<double>& probs) {
  const int n = static_cast<int>(probs.size());
  if (n == 0) throw validation_error("diag preset needs probabilities");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (probs[i] < 0.0 || probs[i] > 1.0)
      throw validation_error("diag entries must lie in [0, 1]");
    m(i, i) = probs[i];
  }
  return m;
}

Matrix preset_discretized_sine(int n, double bandwidth) {
  if (n < 1) throw validation_error("need at least one site");
  if (!(bandwidth > 0.0) || bandwidth >= 0.5)
    throw validation_error("bandwidth must lie in (0, 0.5)");
  Matrix m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      m(s, t) = s == t ? 2.0 * bandwidth
                       : std::sin(2.0 * M_PI * bandwidth * (s - t)) /
                             (M_PI * (s - t));
  return m;
}

Matrix random_contraction(int n, std::uint64_t seed, double lambda_min,
                          double lambda_max) {
  if (n < 1) throw validation_error("need at least one site");
  if (!(lambda_min >= 0.0) || !(lambda_max <= 1.0) || lambda_min > lambda_max)
    throw validation_error("spectrum bounds must satisfy 0 <= lo <= hi <= 1");
  RngStream rng(seed, 7);

  // random orthogonal basis: Gaussian matrix, Gram-Schmidt columns
  Matrix v(n, n);
  for (double& x : v.data()) {
    // Box-Muller
    const double u1 = std::max(rng.next_double(), 1e-300);
    const double u2 = rng.next_double();
    x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < j; ++p) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += v(i, p) * v(i, j);
        for (int i = 0; i < n; ++i) v(i, j) -= dot * v(i, p);
      }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += v(i, j) * v(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) v(i, j) /= norm;
  }

  Matrix m(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam =
        n == 1 ? 0.5 * (lambda_min + lambda_max)
               : lambda_min + (lambda_max - lambda_min) * k / (n - 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) += lam * v(i, k) * v(j, k);
  }
  return symmetrized(m);
}

}  // namespace dppt
