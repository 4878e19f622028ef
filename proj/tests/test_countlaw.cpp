#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dppt/countlaw.hpp"
#include "dppt/errors.hpp"
#include "dppt/presets.hpp"
#include "dppt/rng.hpp"
#include "dppt/sampling.hpp"
#include "dppt/tail_experiments.hpp"

using namespace dppt;

TEST_CASE("single cell law: Bernoulli from a half window") {
  const SpectralKernel k = preset_constant_rank1();
  const CountLaw law = single_cell_law(compress(k, Cell::interval(0.0, 0.5)));
  CHECK(law.prob({0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(law.prob({1}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single cell law: projections pin the count at the rank") {
  const SpectralKernel k = preset_fourier_projection(3);
  const CountLaw law = single_cell_law(compress(k, full_window(k.space)));
  CHECK(law.prob({3}) == doctest::Approx(1.0).epsilon(1e-9));

  // rank-1 projection Gram: eigenvalues {1, 0}
  const SpectralKernel c = preset_constant_rank1();
  const CountLaw one = single_cell_law(compress(c, full_window(c.space)));
  CHECK(one.prob({1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint law of the constant kernel splits its one point") {
  const SpectralKernel k = preset_constant_rank1();
  const Partition p = Partition::uniform_interval(k.space, 2);
  const CountLaw law = joint_law(k, p.cells());
  CHECK(law.prob({1, 0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(law.prob({0, 1}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(law.prob({0, 0}) < 1e-12);
  CHECK(law.prob({1, 1}) < 1e-12);
  CHECK(law.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(law.imag_residue < 1e-12);
}

TEST_CASE("diagonal kernels factor into independent Bernoullis") {
  const CountLaw law =
      joint_law(preset_diag({0.3, 0.7}), {{0}, {1}});
  CHECK(law.prob({0, 0}) == doctest::Approx(0.7 * 0.3).epsilon(1e-12));
  CHECK(law.prob({1, 0}) == doctest::Approx(0.3 * 0.3).epsilon(1e-12));
  CHECK(law.prob({0, 1}) == doctest::Approx(0.7 * 0.7).epsilon(1e-12));
  CHECK(law.prob({1, 1}) == doctest::Approx(0.3 * 0.7).epsilon(1e-12));
}

TEST_CASE("joint law agrees with exhaustive subset enumeration") {
  // three kernels small enough to enumerate all 2^n subsets
  const Matrix kernels[] = {preset_discretized_sine(8),
                            random_contraction(7, 11),
                            preset_diag({0.2, 0.5, 0.8, 0.35})};
  const std::vector<std::vector<std::vector<int>>> splits = {
      {{0, 1, 2}, {3, 4}, {5, 6, 7}},
      {{0, 1}, {2, 3, 4, 5, 6}},
      {{0, 3}, {1, 2}}};

  for (int t = 0; t < 3; ++t) {
    const Matrix& k = kernels[t];
    const auto& blocks = splits[t];
    const CountLaw law = joint_law(k, blocks);
    const LEnsembleTable table = l_ensemble_enumerate_auto(k);

    CountLaw brute = CountLaw::zeros(law.caps);
    for (std::uint32_t mask = 0; mask < (1u << k.rows()); ++mask) {
      std::vector<int> counts(blocks.size(), 0);
      for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int s : blocks[b])
          if (mask & (1u << s)) ++counts[b];
      brute.at(counts) += table.prob(mask);
    }
    CHECK(tv_distance(law, brute) < 1e-9);
  }
}

TEST_CASE("count grid guards advise sampling") {
  CHECK_THROWS_WITH_AS(
      joint_law(random_contraction(65, 3),
                {{0, 1}, {2, 3}}),
      doctest::Contains("sample instead"), validation_error);

  // 11 blocks of a rank-40 kernel: (41)^11 overflows the grid budget
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < 11; ++i) blocks.push_back({i});
  CHECK_THROWS_AS(joint_law(random_contraction(40, 5), blocks),
                  validation_error);
}

TEST_CASE("marginal, merge, and total-count are consistent projections") {
  const Matrix k = preset_discretized_sine(9);
  const std::vector<std::vector<int>> blocks = {{0, 1, 2}, {3, 4}, {5, 6, 7, 8}};
  const CountLaw law = joint_law(k, blocks);

  // marginal of coordinate 1 vs direct 1-block law
  const CountLaw direct1 = joint_law(k, {blocks[1]});
  CHECK(tv_distance(law.marginal(1), direct1) < 1e-9);

  // merging coordinates {0,2} and {1} vs the law of merged blocks
  const CountLaw merged = law.merged({{0, 2}, {1}});
  std::vector<int> b02 = blocks[0];
  b02.insert(b02.end(), blocks[2].begin(), blocks[2].end());
  const CountLaw direct = joint_law(k, {b02, blocks[1]});
  CHECK(tv_distance(merged, direct) < 1e-9);

  // total count vs the single full block
  std::vector<int> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  CHECK(tv_distance(law.total_count(), joint_law(k, {all})) < 1e-9);
}

TEST_CASE("tv distance conventions") {
  const CountLaw a = joint_law(preset_diag({0.5}), {{0}});
  CHECK(tv_distance(a, a) == 0.0);

  CountLaw pa = CountLaw::zeros({2});
  CountLaw pb = CountLaw::zeros({2});
  pa.at({0}) = 1.0;
  pb.at({2}) = 1.0;
  CHECK(tv_distance(pa, pb) == doctest::Approx(1.0));

  const CountLaw b5 = joint_law(preset_diag({0.5}), {{0}});
  const CountLaw b3 = joint_law(preset_diag({0.3}), {{0}});
  CHECK(tv_distance(b5, b3) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("verify_transference across the preset matrix") {
  const SpectralKernel c = preset_constant_rank1();
  const Partition pc = Partition::uniform_interval(c.space, 2);
  const TransferenceReport rc =
      verify_transference(c, pc, transfer_kernel(c, pc, 1e-10));
  CHECK(rc.tv < 1e-10);
  CHECK(rc.pass);

  // discrete singleton partition transfers exactly
  const SpectralKernel d = spectral_from_matrix(preset_discretized_sine(5));
  const Partition pd = Partition::discrete_blocks(GroundSpace::discrete(5), 5);
  const TransferenceReport rd =
      verify_transference(d, pd, transfer_kernel(d, pd, 1e-12));
  CHECK(rd.tv < 1e-12);

  const SpectralKernel f = preset_fourier_projection(3);
  const Partition pf = Partition::uniform_interval(f.space, 4);
  const TransferenceReport rf =
      verify_transference(f, pf, transfer_kernel(f, pf, 1e-10));
  CHECK(rf.tv < 1e-8);
  CHECK(rf.spectrum_gap <= rf.leakage + 1e-8);
  CHECK(rf.pass);
}

TEST_CASE("chi-square tail matches the scipy reference") {
  // frozen from tools/oracles/chi2_tail.py
  const struct { double stat; int dof; double sf; } cases[] = {
      {3.841458820694124, 1, 4.99999999999998918e-02},
      {0.5, 1, 4.79500122186953370e-01},
      {10.0, 4, 4.04276819945127916e-02},
      {7.0, 7, 4.28879857553054855e-01},
      {100.0, 80, 6.45703689211330062e-02},
      {250.0, 200, 9.37913166882609756e-03},
      {1e-12, 3, 1.0}};
  for (const auto& c : cases)
    CHECK(chi_square_tail(c.stat, c.dof) ==
          doctest::Approx(c.sf).epsilon(1e-10));
}

TEST_CASE("chi-square statistic is zero for a matching point mass") {
  CountLaw exact = CountLaw::zeros({1});
  exact.at({1}) = 1.0;
  CountLaw emp = CountLaw::zeros({1});
  emp.at({1}) = 1.0;
  emp.provenance = CountLaw::Provenance::Empirical;
  emp.n_samples = 1000;
  const ChiSquareReport r = empirical_vs_exact(exact, emp);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("sampler draws pass the chi-square test against the exact law") {
  const Matrix k = preset_diag({0.5, 0.5});
  const std::vector<std::vector<int>> blocks = {{0}, {1}};
  const CountLaw exact = joint_law(k, blocks);
  RngStream rng(99, 0);
  const CountLaw emp = sample_counts(k, blocks, rng, 100000);
  const ChiSquareReport r = empirical_vs_exact(exact, emp);
  CHECK(r.dof == 3);
  CHECK(r.p_value > 0.001);
  // four atoms of 1/4 each, nothing pooled
  CHECK(r.atoms == 4);
  for (int c0 : {0, 1})
    for (int c1 : {0, 1})
      CHECK(std::abs(emp.prob({c0, c1}) - 0.25) < 0.01);
}

TEST_CASE("pooling keeps expected counts above five") {
  // one dominant atom and a spray of tiny ones
  CountLaw exact = CountLaw::zeros({9});
  exact.at({0}) = 0.9991;
  for (int i = 1; i <= 9; ++i) exact.at({i}) = 0.0001;
  CountLaw emp = CountLaw::zeros({9});
  emp.at({0}) = 0.999;
  emp.at({1}) = 0.001;
  emp.provenance = CountLaw::Provenance::Empirical;
  emp.n_samples = 10000;
  const ChiSquareReport r = empirical_vs_exact(exact, emp);
  // the nine rare atoms pool into one bucket of expectation 9
  CHECK(r.atoms == 2);
  CHECK(r.dof == 1);
  CHECK(r.min_expected >= 5.0);
}
