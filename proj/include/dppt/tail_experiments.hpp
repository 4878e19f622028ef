#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dppt/countlaw.hpp"
#include "dppt/ground.hpp"
#include "dppt/linalg.hpp"
#include "dppt/rng.hpp"
#include "dppt/sampling.hpp"

namespace dppt {

// Exhaustive subset probabilities of a discrete kernel with spectrum
// bounded away from 1: P(Y) = det(L_Y) / det(I + L), L = K (I - K)^-1.
// Index = site bitmask. The workhorse oracle for everything conditional.
struct LEnsembleTable {
  int n = 0;
  std::vector<double> probs;
  double marginal_error = 0.0;  // max |sum_{Y owns s} P(Y) - K[s,s]|
  double shrink_delta = 0.0;    // 0 when the kernel was used as-is

  double prob(std::uint32_t mask) const { return probs[mask]; }
};

// Requires eigenvalues <= 1 - 1e-8 and n <= 16.
LEnsembleTable l_ensemble_enumerate(const Matrix& k);

// Same, but near-projection kernels are first shrunk to (1 - delta) K,
// recorded in shrink_delta.
LEnsembleTable l_ensemble_enumerate_auto(const Matrix& k, double delta = 1e-6);

// Law of xi(near) given the exact occupancy pattern of the far sites,
// by renormalizing the enumerated table. Conditioning events below 1e-12
// mass are refused.
CountLaw conditional_law(const LEnsembleTable& table,
                         const std::vector<int>& far_sites,
                         const std::vector<bool>& far_occupied,
                         const std::vector<int>& near);

struct McConditional {
  CountLaw law;
  double acceptance = 0.0;
  std::int64_t n_accepted = 0;
};

// Rejection-sampled version for kernels too large to enumerate.
McConditional conditional_law_mc(const Matrix& q,
                                 const std::vector<int>& far_sites,
                                 const std::vector<bool>& far_occupied,
                                 const std::vector<int>& near, RngStream& rng,
                                 std::int64_t n_draws);

// One mixing experiment: how much does far-field occupancy beyond radius
// R still move the law of xi(near)? Far region at radius R = sites >= R.
struct TailPlan {
  Matrix kernel;
  std::vector<int> near;
  std::vector<int> radii;  // strictly increasing, all > max(near)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SweepRow {
  int radius = 0;
  double estimate = 0.0;   // E[ TV(law(near | far pattern), law(near)) ]
  double std_error = 0.0;  // 0 on the exact path
  double baseline = 0.0;   // permutation (independence) baseline, MC only
  std::int64_t n_effective = 0;  // far patterns seen / strata
};

// Exact expectation by full enumeration (n <= 16); the curve is weakly
// decreasing in the radius up to roundoff.
std::vector<SweepRow> tail_mixing_sweep_exact(const TailPlan& plan);

// Monte Carlo version with batch-means standard errors and a shuffled
// baseline that shows the plug-in bias a finite sample induces even
// under exact independence.
std::vector<SweepRow> tail_mixing_sweep_mc(const TailPlan& plan);

// Event on a count vector: threshold (sum over chosen coordinates >= t)
// or parity (sum odd/even).
struct CountPredicate {
  enum class Kind { Threshold, Parity };

  Kind kind = Kind::Threshold;
  std::vector<int> coords;
  int threshold = 1;  // Parity: 1 = odd counts, 0 = even

  bool evaluate(const std::vector<int>& counts) const;
  std::string describe() const;
};

struct LevyRow {
  int level = 0;
  double error = 0.0;  // estimate of E | P(A | counts at level) - 1_A |
  double std_error = 0.0;
  std::int64_t n_strata = 0;
  std::int64_t pooled_strata = 0;  // strata under 10 samples, pooled
};

// Conditional-frequency rendition of the 0-1 law: the event is a
// predicate on the finest level's count vector; each coarser level
// stratifies the same samples by its own count vector. The finest row is
// 0 by measurability, computed as such.
std::vector<LevyRow> levy_convergence(const Matrix& q,
                                      const std::vector<Partition>& ladder,
                                      const CountPredicate& event,
                                      std::int64_t n_samples, RngStream& rng);

// Coarse-to-fine ladder: base, then refine(base, factor) repeatedly.
std::vector<Partition> partition_ladder(const Partition& base, int levels,
                                        int factor);

struct DownwardRow {
  int level = 0;   // conditioning on counts of cells >= level
  double gap = 0.0;  // E | P(A | those counts) - P(A) |
};

struct DownwardReport {
  std::vector<DownwardRow> rows;
  double prob_event = 0.0;
  double max_step_up = 0.0;  // largest increase between consecutive levels
};

// Exact downward-martingale probe: condition the event (on cell 0 of
// `cells`) on the count vector of cells k >= level, for level = 1..#cells.
// The last row conditions on nothing, so its gap is pure transform
// residue (~1e-11 on rank-12 kernels).
DownwardReport downward_martingale_probe(const Matrix& k, const Partition& cells,
                                         const CountPredicate& event);

}  // namespace dppt
