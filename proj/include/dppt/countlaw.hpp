#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dppt/ground.hpp"
#include "dppt/kernel.hpp"
#include "dppt/linalg.hpp"
#include "dppt/transference.hpp"

namespace dppt {

// Joint pmf of cell or block counts on the dense grid
// {0..caps[0]} x ... x {0..caps[m-1]}, last axis fastest.
struct CountLaw {
  enum class Provenance { Exact, Empirical };

  std::vector<std::string> labels;
  std::vector<int> caps;
  std::vector<double> pmf;
  Provenance provenance = Provenance::Exact;
  std::int64_t n_samples = 0;   // Empirical only
  double imag_residue = 0.0;    // DFT inversion residue, Exact only

  int arity() const { return static_cast<int>(caps.size()); }
  std::size_t size() const { return pmf.size(); }

  std::size_t index(const std::vector<int>& counts) const;
  double prob(const std::vector<int>& counts) const;
  double& at(const std::vector<int>& counts);
  double total() const;

  // decode a flat index into a count vector
  std::vector<int> counts_at(std::size_t flat) const;

  // law of one coordinate
  CountLaw marginal(int coord) const;
  // pushforward under coordinate sums: one output coordinate per group,
  // every input coordinate used exactly once
  CountLaw merged(const std::vector<std::vector<int>>& groups) const;
  // law of the total count
  CountLaw total_count() const;

  static CountLaw zeros(std::vector<int> caps,
                        std::vector<std::string> labels = {});
};

// Law of xi(cell): sum of independent Bernoulli(eigenvalue) over the
// compressed spectrum, by iterated convolution.
CountLaw single_cell_law(const CompressedKernel& compressed);

// Exact joint law of disjoint cell counts through the generating
// functional det(I + sum_i (z_i - 1) G_i), inverted by a multidimensional
// DFT at (rank+1)-st roots of unity. Guards: rank <= 64 and
// (rank+1)^m <= 2e6, else an error advising Monte Carlo.
CountLaw joint_law(const SpectralKernel& kernel, const std::vector<Cell>& cells);

// Same, for an explicit discrete kernel matrix and site blocks.
CountLaw joint_law(const Matrix& q, const std::vector<std::vector<int>>& blocks);

// Block counts of a transferred kernel.
CountLaw joint_law(const TransferredKernel& q);

double tv_distance(const CountLaw& a, const CountLaw& b);

struct TransferenceReport {
  double tv = 0.0;
  double leakage = 0.0;
  double bound = 0.0;        // rank * leakage + 1e-8
  double spectrum_gap = 0.0;
  double imag_residue = 0.0; // worse of the two exact laws
  bool pass = false;
};

// Joint cell-count law of K against joint block-count law of Q.
TransferenceReport verify_transference(const SpectralKernel& kernel,
                                       const Partition& partition,
                                       const TransferredKernel& q);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int atoms = 0;           // buckets entering the statistic
  double min_expected = 0.0;
  std::int64_t n_samples = 0;
};

// Pearson chi-square of an empirical law against an exact one. Atoms with
// expected count >= 5 stand alone; the rest pool into one bucket when
// their combined expectation reaches 5.
ChiSquareReport empirical_vs_exact(const CountLaw& exact, const CountLaw& empirical);

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi_square_tail(double statistic, int dof);

}  // namespace dppt
