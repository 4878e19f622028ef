#include "dppt/tail_experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "dppt/errors.hpp"

namespace dppt {

namespace {

std::vector<double> contraction_eigenvalues(const Matrix& k) {
  if (!k.square()) throw validation_error("kernel matrix must be square");
  if (!is_symmetric(k, 1e-10))
    throw validation_error("kernel matrix must be symmetric");
  SymmetricEigen eig = jacobi_eigh(symmetrized(k));
  for (double& v : eig.values) v = clamp_unit_eigenvalue(v);
  return eig.values;
}

}  // namespace

LEnsembleTable l_ensemble_enumerate(const Matrix& k) {
  if (!k.square() || !is_symmetric(k, 1e-10))
    throw validation_error("kernel matrix must be symmetric");
  const int n = k.rows();
  if (n > 16)
    throw validation_error("enumeration limited to 16 sites");
  SymmetricEigen eig = jacobi_eigh(symmetrized(k));
  double prefactor = 1.0;
  for (double& v : eig.values) {
    v = clamp_unit_eigenvalue(v);
    if (v > 1.0 - 1e-8)
      throw validation_error(
          "spectrum touches 1: I - K not invertible, shrink the kernel first");
    prefactor *= 1.0 - v;
  }

  // L = V diag(lambda / (1 - lambda)) V^T
  Matrix l(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += eig.vectors(a, j) * eig.vectors(b, j) * eig.values[j] /
             (1.0 - eig.values[j]);
      l(a, b) = s;
      l(b, a) = s;
    }

  LEnsembleTable table;
  table.n = n;
  table.probs.assign(std::size_t{1} << n, 0.0);
  std::vector<int> sites;
  for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask) {
    sites.clear();
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) sites.push_back(s);
    if (sites.empty()) {
      table.probs[mask] = prefactor;
      continue;
    }
    const int m = static_cast<int>(sites.size());
    Matrix sub(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) sub(a, b) = l(sites[a], sites[b]);
    table.probs[mask] = prefactor * lu_determinant(sub);
  }

  // near-critical spectra make l huge and its singular minors cancel to
  // roundoff-scale negatives; tolerate those up to the same budget the
  // total-mass check uses, in aggregate
  double total = 0.0;
  double negative_mass = 0.0;
  for (double& p : table.probs) {
    if (p < 0.0) {
      negative_mass -= p;
      p = 0.0;
    }
    total += p;
  }
  if (negative_mass > 1e-9)
    throw std::runtime_error("subset probabilities negative beyond roundoff");
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::runtime_error("subset probabilities sum to " +
                             std::to_string(total));

  for (int s = 0; s < n; ++s) {
    double marginal = 0.0;
    for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask)
      if (mask & (1u << s)) marginal += table.probs[mask];
    table.marginal_error =
        std::max(table.marginal_error, std::fabs(marginal - k(s, s)));
  }
  return table;
}

LEnsembleTable l_ensemble_enumerate_auto(const Matrix& k, double delta) {
  const auto values = contraction_eigenvalues(k);
  const double top = values.empty() ? 0.0 : values.front();
  if (top <= 1.0 - 1e-8) return l_ensemble_enumerate(k);
  Matrix shrunk = k;
  for (double& v : shrunk.data()) v *= 1.0 - delta;
  LEnsembleTable table = l_ensemble_enumerate(shrunk);
  table.shrink_delta = delta;
  return table;
}

CountLaw conditional_law(const LEnsembleTable& table,
                         const std::vector<int>& far_sites,
                         const std::vector<bool>& far_occupied,
                         const std::vector<int>& near) {
  if (far_sites.size() != far_occupied.size())
    throw validation_error("far pattern length mismatch");
  std::uint32_t far_mask = 0, far_pattern = 0, near_mask = 0;
  for (std::size_t i = 0; i < far_sites.size(); ++i) {
    const int s = far_sites[i];
    if (s < 0 || s >= table.n) throw validation_error("far site out of range");
    far_mask |= 1u << s;
    if (far_occupied[i]) far_pattern |= 1u << s;
  }
  for (int s : near) {
    if (s < 0 || s >= table.n) throw validation_error("near site out of range");
    if (far_mask & (1u << s))
      throw validation_error("near and far sites overlap");
    near_mask |= 1u << s;
  }

  std::vector<double> pmf(near.size() + 1, 0.0);
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask) {
    if ((mask & far_mask) != far_pattern) continue;
    const double p = table.probs[mask];
    total += p;
    pmf[std::popcount(mask & near_mask)] += p;
  }
  if (total < 1e-12)
    throw validation_error("conditioning event has negligible probability");

  CountLaw law = CountLaw::zeros({static_cast<int>(near.size())});
  for (std::size_t c = 0; c < pmf.size(); ++c) law.pmf[c] = pmf[c] / total;
  return law;
}

McConditional conditional_law_mc(const Matrix& q,
                                 const std::vector<int>& far_sites,
                                 const std::vector<bool>& far_occupied,
                                 const std::vector<int>& near, RngStream& rng,
                                 std::int64_t n_draws) {
  if (far_sites.size() != far_occupied.size())
    throw validation_error("far pattern length mismatch");
  if (n_draws <= 0) throw validation_error("n_draws must be positive");
  for (int s : near)
    for (int f : far_sites)
      if (s == f) throw validation_error("near and far sites overlap");

  const DppSampler sampler(q);
  std::vector<std::int64_t> hits(near.size() + 1, 0);
  std::int64_t accepted = 0;
  for (std::int64_t d = 0; d < n_draws; ++d) {
    const PointConfiguration config = sampler.sample(rng);
    bool match = true;
    for (std::size_t i = 0; i < far_sites.size() && match; ++i)
      match = config.occupied(far_sites[i]) == far_occupied[i];
    if (!match) continue;
    ++accepted;
    ++hits[config.count(near)];
  }
  if (accepted == 0)
    throw std::runtime_error("rejection sampler accepted nothing");

  McConditional out;
  out.law = CountLaw::zeros({static_cast<int>(near.size())});
  out.law.provenance = CountLaw::Provenance::Empirical;
  out.law.n_samples = accepted;
  for (std::size_t c = 0; c < hits.size(); ++c)
    out.law.pmf[c] = static_cast<double>(hits[c]) / accepted;
  out.acceptance = static_cast<double>(accepted) / n_draws;
  out.n_accepted = accepted;
  return out;
}

void TailPlan::validate() const {
  if (!kernel.square()) throw validation_error("kernel matrix must be square");
  if (near.empty()) throw validation_error("near window is empty");
  int near_max = 0;
  for (int s : near) {
    if (s < 0 || s >= kernel.rows())
      throw validation_error("near site out of range");
    near_max = std::max(near_max, s);
  }
  if (radii.empty()) throw validation_error("no radii given");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (radii[j] <= near_max)
      throw validation_error("far region overlaps the near window");
    if (j > 0 && radii[j] <= radii[j - 1])
      throw validation_error("radii must be strictly increasing");
  }
}

namespace {

double tv_against(const std::vector<double>& conditional, double mass,
                  const std::vector<double>& unconditional) {
  double s = 0.0;
  for (std::size_t c = 0; c < conditional.size(); ++c)
    s += std::fabs(conditional[c] / mass - unconditional[c]);
  return 0.5 * s;
}

}  // namespace

std::vector<SweepRow> tail_mixing_sweep_exact(const TailPlan& plan) {
  plan.validate();
  const LEnsembleTable table = l_ensemble_enumerate_auto(plan.kernel);
  const int n = table.n;
  std::uint32_t near_mask = 0;
  for (int s : plan.near) near_mask |= 1u << s;
  const std::size_t near_bins = plan.near.size() + 1;

  std::vector<double> unconditional(near_bins, 0.0);
  for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask)
    unconditional[std::popcount(mask & near_mask)] += table.probs[mask];

  std::vector<SweepRow> rows;
  for (int radius : plan.radii) {
    const int far_bits = std::max(0, n - radius);
    std::vector<double> mass(std::size_t{1} << far_bits, 0.0);
    std::vector<std::vector<double>> cond(
        std::size_t{1} << far_bits, std::vector<double>(near_bins, 0.0));
    for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask) {
      const std::uint32_t pattern = radius >= n ? 0 : mask >> radius;
      mass[pattern] += table.probs[mask];
      cond[pattern][std::popcount(mask & near_mask)] += table.probs[mask];
    }
    SweepRow row;
    row.radius = radius;
    for (std::size_t f = 0; f < mass.size(); ++f) {
      if (mass[f] <= 0.0) continue;
      row.estimate += mass[f] * tv_against(cond[f], mass[f], unconditional);
      row.n_effective += 1;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct Stratum {
  std::int64_t count = 0;
  std::vector<std::int64_t> bins;
};

// stratified expected TV of a sample range against its own unconditional law
double stratified_tv(const std::vector<std::uint64_t>& patterns,
                     const std::vector<int>& near_counts, std::size_t lo,
                     std::size_t hi, std::size_t near_bins) {
  std::unordered_map<std::uint64_t, Stratum> strata;
  std::vector<double> unconditional(near_bins, 0.0);
  for (std::size_t i = lo; i < hi; ++i) {
    Stratum& st = strata[patterns[i]];
    if (st.bins.empty()) st.bins.assign(near_bins, 0);
    st.count += 1;
    st.bins[near_counts[i]] += 1;
    unconditional[near_counts[i]] += 1.0;
  }
  const double total = static_cast<double>(hi - lo);
  for (double& u : unconditional) u /= total;
  double estimate = 0.0;
  for (const auto& [pattern, st] : strata) {
    double tv = 0.0;
    for (std::size_t c = 0; c < near_bins; ++c)
      tv += std::fabs(st.bins[c] / static_cast<double>(st.count) -
                      unconditional[c]);
    estimate += (st.count / total) * 0.5 * tv;
  }
  return estimate;
}

}  // namespace

std::vector<SweepRow> tail_mixing_sweep_mc(const TailPlan& plan) {
  plan.validate();
  if (plan.n_samples <= 0)
    throw validation_error("Monte Carlo sweep needs n_samples");
  const int n = plan.kernel.rows();
  if (n > 64) throw validation_error("sweep limited to 64 sites");

  const DppSampler sampler(plan.kernel);
  RngStream rng(plan.seed, 1);
  const std::size_t nsamp = static_cast<std::size_t>(plan.n_samples);
  std::vector<std::uint64_t> masks(nsamp);
  std::vector<int> near_counts(nsamp);
  for (std::size_t i = 0; i < nsamp; ++i) {
    const PointConfiguration config = sampler.sample(rng);
    std::uint64_t mask = 0;
    for (int s : config.sites) mask |= std::uint64_t{1} << s;
    masks[i] = mask;
    near_counts[i] = config.count(plan.near);
  }

  // one shared shuffle of near counts: the independence baseline
  std::vector<int> shuffled = near_counts;
  for (std::size_t i = nsamp - 1; i > 0; --i)
    std::swap(shuffled[i], shuffled[rng.next_index(static_cast<int>(i + 1))]);

  const std::size_t near_bins = plan.near.size() + 1;
  const int batches = 16;
  std::vector<SweepRow> rows;
  std::vector<std::uint64_t> patterns(nsamp);
  for (int radius : plan.radii) {
    for (std::size_t i = 0; i < nsamp; ++i)
      patterns[i] = radius >= n ? 0 : masks[i] >> radius;

    SweepRow row;
    row.radius = radius;
    row.estimate = stratified_tv(patterns, near_counts, 0, nsamp, near_bins);
    row.baseline = stratified_tv(patterns, shuffled, 0, nsamp, near_bins);

    std::unordered_map<std::uint64_t, bool> seen;
    for (std::size_t i = 0; i < nsamp; ++i) seen[patterns[i]] = true;
    row.n_effective = static_cast<std::int64_t>(seen.size());

    double mean = 0.0, sq = 0.0;
    for (int b = 0; b < batches; ++b) {
      const std::size_t lo = nsamp * b / batches;
      const std::size_t hi = nsamp * (b + 1) / batches;
      const double v = stratified_tv(patterns, near_counts, lo, hi, near_bins);
      mean += v;
      sq += v * v;
    }
    mean /= batches;
    const double var = std::max(0.0, sq / batches - mean * mean);
    row.std_error = std::sqrt(var / batches);
    rows.push_back(row);
  }
  return rows;
}

bool CountPredicate::evaluate(const std::vector<int>& counts) const {
  int sum = 0;
  for (int c : coords) {
    if (c < 0 || c >= static_cast<int>(counts.size()))
      throw std::domain_error("predicate coordinate out of range");
    sum += counts[c];
  }
  if (kind == Kind::Threshold) return sum >= threshold;
  return (sum & 1) == (threshold & 1);
}

std::string CountPredicate::describe() const {
  std::string s = kind == Kind::Threshold ? "threshold" : "parity";
  s += "(cells=";
  for (std::size_t i = 0; i < coords.size(); ++i)
    s += (i ? "+" : "") + std::to_string(coords[i]);
  s += ",t=" + std::to_string(threshold) + ")";
  return s;
}

std::vector<Partition> partition_ladder(const Partition& base, int levels,
                                        int factor) {
  if (levels < 1) throw validation_error("ladder needs at least one level");
  std::vector<Partition> ladder{base};
  for (int m = 1; m < levels; ++m)
    ladder.push_back(refine(ladder.back(), factor));
  return ladder;
}

std::vector<LevyRow> levy_convergence(const Matrix& q,
                                      const std::vector<Partition>& ladder,
                                      const CountPredicate& event,
                                      std::int64_t n_samples, RngStream& rng) {
  if (ladder.empty()) throw validation_error("empty partition ladder");
  if (n_samples <= 0) throw validation_error("n_samples must be positive");
  const int n = q.rows();
  if (n > 64) throw validation_error("ladder experiment limited to 64 sites");
  const int levels = static_cast<int>(ladder.size());

  // site -> cell index, per level; every level must cover all sites
  std::vector<std::vector<int>> cell_of(levels, std::vector<int>(n, -1));
  for (int m = 0; m < levels; ++m) {
    const Partition& p = ladder[m];
    if (!p.space().is_discrete() || p.space().size != n)
      throw validation_error("ladder level does not match the kernel sites");
    for (int i = 0; i < p.size(); ++i)
      for (int s : p.cell(i).site_list()) cell_of[m][s] = i;
    for (int s = 0; s < n; ++s)
      if (cell_of[m][s] < 0)
        throw validation_error("ladder level does not cover every site");
  }

  const DppSampler sampler(q);
  const std::size_t nsamp = static_cast<std::size_t>(n_samples);
  std::vector<std::vector<int>> fine_counts(nsamp);
  std::vector<char> in_event(nsamp);
  std::vector<PointConfiguration> configs(nsamp);
  for (std::size_t i = 0; i < nsamp; ++i) {
    configs[i] = sampler.sample(rng);
    std::vector<int> counts(ladder[levels - 1].size(), 0);
    for (int s : configs[i].sites) counts[cell_of[levels - 1][s]] += 1;
    in_event[i] = event.evaluate(counts) ? 1 : 0;
    fine_counts[i] = std::move(counts);
  }

  std::vector<LevyRow> rows;
  for (int m = 0; m < levels; ++m) {
    LevyRow row;
    row.level = m + 1;
    if (m == levels - 1) {
      // the event is a function of this level's counts: the conditional
      // probability is the indicator itself and the gap vanishes
      std::map<std::vector<int>, int> distinct;
      for (std::size_t i = 0; i < nsamp; ++i) distinct[fine_counts[i]] = 1;
      row.n_strata = static_cast<std::int64_t>(distinct.size());
      rows.push_back(row);
      continue;
    }

    struct LevelStratum {
      std::int64_t count = 0;
      std::int64_t hits = 0;
      bool pooled = false;
    };
    std::map<std::vector<int>, LevelStratum> strata;
    std::vector<const std::vector<int>*> keys(nsamp);
    std::vector<int> counts(ladder[m].size());
    for (std::size_t i = 0; i < nsamp; ++i) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int s : configs[i].sites) counts[cell_of[m][s]] += 1;
      auto it = strata.emplace(counts, LevelStratum{}).first;
      it->second.count += 1;
      it->second.hits += in_event[i];
      keys[i] = &it->first;
    }

    LevelStratum pooled;
    std::int64_t healthy = 0;
    for (auto& [key, st] : strata) {
      if (st.count < 10) {
        st.pooled = true;
        pooled.count += st.count;
        pooled.hits += st.hits;
        row.pooled_strata += 1;
      } else {
        ++healthy;
      }
    }
    if (healthy == 0 && pooled.count < 10)
      throw std::runtime_error("every stratum starved, increase n_samples");
    row.n_strata = static_cast<std::int64_t>(strata.size());

    const double pooled_p =
        pooled.count > 0 ? static_cast<double>(pooled.hits) / pooled.count : 0.0;
    double err = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < nsamp; ++i) {
      const LevelStratum& st = strata.find(*keys[i])->second;
      const double p = st.pooled
                           ? pooled_p
                           : static_cast<double>(st.hits) / st.count;
      const double c = std::fabs(p - in_event[i]);
      err += c;
      sq += c * c;
    }
    err /= nsamp;
    sq /= nsamp;
    row.error = err;
    row.std_error = std::sqrt(std::max(0.0, sq - err * err) / nsamp);
    rows.push_back(row);
  }
  return rows;
}

DownwardReport downward_martingale_probe(const Matrix& k, const Partition& cells,
                                         const CountPredicate& event) {
  const LEnsembleTable table = l_ensemble_enumerate_auto(k);
  const int n = table.n;
  if (!cells.space().is_discrete() || cells.space().size != n)
    throw validation_error("partition does not match the kernel sites");
  const int levels = cells.size();

  std::vector<std::uint32_t> cell_mask(levels, 0);
  std::vector<int> cell_size(levels, 0);
  for (int i = 0; i < levels; ++i) {
    for (int s : cells.cell(i).site_list()) cell_mask[i] |= 1u << s;
    cell_size[i] = cells.cell(i).site_count();
  }

  std::vector<char> hits(table.probs.size());
  std::vector<int> counts(levels);
  double prob_event = 0.0;
  for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask) {
    for (int i = 0; i < levels; ++i)
      counts[i] = std::popcount(mask & cell_mask[i]);
    hits[mask] = event.evaluate(counts) ? 1 : 0;
    if (hits[mask]) prob_event += table.probs[mask];
  }

  DownwardReport report;
  report.prob_event = prob_event;
  for (int level = 1; level <= levels; ++level) {
    // key = count vector of cells `level`..end, mixed radix
    std::size_t radix = 1;
    for (int i = level; i < levels; ++i)
      radix *= static_cast<std::size_t>(cell_size[i]) + 1;
    std::vector<double> mass(radix, 0.0), mass_hit(radix, 0.0);
    for (std::uint32_t mask = 0; mask < table.probs.size(); ++mask) {
      std::size_t key = 0;
      for (int i = level; i < levels; ++i)
        key = key * (cell_size[i] + 1) + std::popcount(mask & cell_mask[i]);
      mass[key] += table.probs[mask];
      if (hits[mask]) mass_hit[key] += table.probs[mask];
    }
    DownwardRow row;
    row.level = level;
    for (std::size_t g = 0; g < radix; ++g) {
      if (mass[g] <= 0.0) continue;
      row.gap += mass[g] * std::fabs(mass_hit[g] / mass[g] - prob_event);
    }
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    report.max_step_up = std::max(
        report.max_step_up, report.rows[i].gap - report.rows[i - 1].gap);
  return report;
}

}  // namespace dppt
