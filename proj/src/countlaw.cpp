#include "dppt/countlaw.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "dppt/errors.hpp"

namespace dppt {

std::size_t CountLaw::index(const std::vector<int>& counts) const {
  if (counts.size() != caps.size())
    throw std::domain_error("count vector arity mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0 || counts[i] > caps[i])
      throw std::domain_error("count outside table");
    flat = flat * (caps[i] + 1) + counts[i];
  }
  return flat;
}

double CountLaw::prob(const std::vector<int>& counts) const {
  if (counts.size() != caps.size())
    throw std::domain_error("count vector arity mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] < 0 || counts[i] > caps[i]) return 0.0;
  return pmf[index(counts)];
}

double& CountLaw::at(const std::vector<int>& counts) { return pmf[index(counts)]; }

double CountLaw::total() const {
  double s = 0.0;
  for (double p : pmf) s += p;
  return s;
}

std::vector<int> CountLaw::counts_at(std::size_t flat) const {
  std::vector<int> counts(caps.size());
  for (int i = arity() - 1; i >= 0; --i) {
    counts[i] = static_cast<int>(flat % (caps[i] + 1));
    flat /= caps[i] + 1;
  }
  return counts;
}

CountLaw CountLaw::zeros(std::vector<int> caps, std::vector<std::string> labels) {
  CountLaw law;
  std::size_t n = 1;
  for (int c : caps) {
    if (c < 0) throw validation_error("negative cap");
    n *= static_cast<std::size_t>(c) + 1;
  }
  law.caps = std::move(caps);
  law.labels = std::move(labels);
  law.pmf.assign(n, 0.0);
  return law;
}

CountLaw CountLaw::marginal(int coord) const { return merged({{coord}}); }

CountLaw CountLaw::merged(const std::vector<std::vector<int>>& groups) const {
  std::vector<bool> used(caps.size(), false);
  std::vector<int> new_caps;
  std::vector<std::string> new_labels;
  for (const auto& g : groups) {
    int cap = 0;
    std::string label;
    for (int c : g) {
      if (c < 0 || c >= arity() || used[c])
        throw std::domain_error("merge groups must index each coordinate once");
      used[c] = true;
      cap += caps[c];
      if (!labels.empty()) label += (label.empty() ? "" : "+") + labels[c];
    }
    if (g.empty()) throw std::domain_error("empty merge group");
    new_caps.push_back(cap);
    new_labels.push_back(label);
  }
  CountLaw out = zeros(new_caps, labels.empty() ? std::vector<std::string>{}
                                                : new_labels);
  out.provenance = provenance;
  out.n_samples = n_samples;
  out.imag_residue = imag_residue;

  std::vector<int> merged_counts(groups.size());
  for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
    if (pmf[flat] == 0.0) continue;
    const auto counts = counts_at(flat);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      int s = 0;
      for (int c : groups[g]) s += counts[c];
      merged_counts[g] = s;
    }
    out.at(merged_counts) += pmf[flat];
  }
  return out;
}

CountLaw CountLaw::total_count() const {
  std::vector<int> all(caps.size());
  for (int i = 0; i < arity(); ++i) all[i] = i;
  return merged({all});
}

CountLaw single_cell_law(const CompressedKernel& compressed) {
  const SymmetricEigen eig = spectrum(compressed);
  const int r = static_cast<int>(eig.values.size());
  std::vector<double> pmf{1.0};
  pmf.resize(r + 1, 0.0);
  for (int k = 0; k < r; ++k) {
    const double lam = eig.values[k];
    for (int c = k + 1; c >= 1; --c)
      pmf[c] = pmf[c] * (1.0 - lam) + pmf[c - 1] * lam;
    pmf[0] *= 1.0 - lam;
  }
  CountLaw law = CountLaw::zeros({r});
  law.pmf = std::move(pmf);
  return law;
}

namespace {

// pmf over {0..r}^m from the Gram forms of m disjoint windows:
// pgf(z) = det(I + sum_i (z_i - 1) G_i), sampled at (r+1)-st roots of
// unity and inverted axis by axis.
CountLaw law_from_grams(const std::vector<Matrix>& grams,
                        std::vector<std::string> labels) {
  const int m = static_cast<int>(grams.size());
  if (m == 0) throw validation_error("joint law needs at least one window");
  const int r = grams.front().rows();
  if (r > 64)
    throw validation_error("rank above 64: exact law infeasible, sample instead");
  const int len = r + 1;
  double grid = 1.0;
  for (int i = 0; i < m; ++i) grid *= len;
  if (grid > 2e6)
    throw validation_error(
        "count grid above 2e6 points: exact law infeasible, sample instead");
  const std::size_t total = static_cast<std::size_t>(grid);

  std::vector<std::complex<double>> roots(len);
  for (int j = 0; j < len; ++j)
    roots[j] = std::polar(1.0, 2.0 * M_PI * j / len);

  // pgf on the full root grid
  std::vector<std::complex<double>> tensor(total);
  std::vector<int> idx(m, 0);
  CMatrix a(r, r);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) a(p, q) = p == q ? 1.0 : 0.0;
    for (int i = 0; i < m; ++i) {
      const std::complex<double> w = roots[idx[i]] - 1.0;
      const Matrix& g = grams[i];
      for (int p = 0; p < r; ++p)
        for (int q = 0; q < r; ++q) a(p, q) += w * g(p, q);
    }
    tensor[flat] = lu_determinant(a);
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[i] < len) break;
      idx[i] = 0;
    }
  }

  // inverse DFT, one axis at a time (axis m-1 has stride 1)
  std::vector<std::complex<double>> line(len), out_line(len);
  for (int axis = m - 1; axis >= 0; --axis) {
    std::size_t stride = 1;
    for (int i = axis + 1; i < m; ++i) stride *= len;
    const std::size_t block = stride * len;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int t = 0; t < len; ++t) line[t] = tensor[base + off + t * stride];
        for (int k = 0; k < len; ++k) {
          std::complex<double> s = 0.0;
          for (int t = 0; t < len; ++t)
            s += line[t] * std::conj(roots[(t * k) % len]);
          out_line[k] = s / static_cast<double>(len);
        }
        for (int k = 0; k < len; ++k) tensor[base + off + k * stride] = out_line[k];
      }
    }
  }

  CountLaw law = CountLaw::zeros(std::vector<int>(m, r), std::move(labels));
  double residue = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    residue = std::max(residue, std::fabs(tensor[flat].imag()));
    double p = tensor[flat].real();
    if (p < 0.0) {
      if (p < -1e-12)
        throw std::runtime_error("count law negativity beyond roundoff: " +
                                 std::to_string(p));
      p = 0.0;
    }
    law.pmf[flat] = p;
  }
  law.imag_residue = residue;
  return law;
}

}  // namespace

CountLaw joint_law(const SpectralKernel& kernel, const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (!Cell::disjoint(cells[i], cells[j]))
        throw std::domain_error("joint law needs disjoint windows");
  std::vector<Matrix> grams;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    grams.push_back(compress(kernel, cells[i]).gram);
    labels.push_back("cell" + std::to_string(i));
  }
  return law_from_grams(grams, std::move(labels));
}

CountLaw joint_law(const Matrix& q, const std::vector<std::vector<int>>& blocks) {
  std::vector<bool> seen(q.rows(), false);
  for (const auto& b : blocks)
    for (int s : b) {
      if (s < 0 || s >= q.rows()) throw std::domain_error("block site out of range");
      if (seen[s]) throw std::domain_error("joint law needs disjoint blocks");
      seen[s] = true;
    }
  const SpectralKernel k = spectral_from_matrix(q);
  const int r = k.rank();
  std::vector<Matrix> grams;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Matrix g(r, r);
    for (int p = 0; p < r; ++p)
      for (int l = p; l < r; ++l) {
        double s = 0.0;
        for (int site : blocks[i])
          s += k.eigenfunctions[p].value_at(site) *
               k.eigenfunctions[l].value_at(site);
        const double v = std::sqrt(k.eigenvalues[p] * k.eigenvalues[l]) * s;
        g(p, l) = v;
        g(l, p) = v;
      }
    grams.push_back(std::move(g));
    labels.push_back("block" + std::to_string(i));
  }
  return law_from_grams(grams, std::move(labels));
}

CountLaw joint_law(const TransferredKernel& q) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : q.blocks) {
    std::vector<int> sites(b.len);
    for (int j = 0; j < b.len; ++j) sites[j] = b.start + j;
    blocks.push_back(std::move(sites));
  }
  return joint_law(q.q, blocks);
}

double tv_distance(const CountLaw& a, const CountLaw& b) {
  if (a.arity() != b.arity())
    throw std::domain_error("tv_distance arity mismatch");
  std::vector<int> caps(a.caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i)
    caps[i] = std::max(a.caps[i], b.caps[i]);
  CountLaw grid = CountLaw::zeros(caps);
  double s = 0.0;
  for (std::size_t flat = 0; flat < grid.pmf.size(); ++flat) {
    const auto counts = grid.counts_at(flat);
    s += std::fabs(a.prob(counts) - b.prob(counts));
  }
  return 0.5 * s;
}

TransferenceReport verify_transference(const SpectralKernel& kernel,
                                       const Partition& partition,
                                       const TransferredKernel& q) {
  const CountLaw law_k = joint_law(kernel, partition.cells());
  const CountLaw law_q = joint_law(q);
  TransferenceReport report;
  report.tv = tv_distance(law_k, law_q);
  report.leakage = q.leakage;
  report.bound = kernel.rank() * q.leakage + 1e-8;
  report.spectrum_gap = spectrum_check(kernel, q);
  report.imag_residue = std::max(law_k.imag_residue, law_q.imag_residue);
  report.pass = report.tv <= report.bound;
  return report;
}

namespace {

// regularized incomplete gamma P(a, x) by series, Q(a, x) by continued
// fraction; the split at x = a + 1 keeps both rapidly convergent
double gamma_series_p(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf_q(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_tail(double statistic, int dof) {
  if (dof < 1) throw validation_error("chi-square needs dof >= 1");
  if (statistic <= 0.0) return 1.0;
  const double a = 0.5 * dof;
  const double x = 0.5 * statistic;
  if (x < a + 1.0) return 1.0 - gamma_series_p(a, x);
  return gamma_cf_q(a, x);
}

ChiSquareReport empirical_vs_exact(const CountLaw& exact,
                                   const CountLaw& empirical) {
  if (empirical.provenance != CountLaw::Provenance::Empirical ||
      empirical.n_samples <= 0)
    throw validation_error("second law must be empirical with sample count");
  if (exact.arity() != empirical.arity())
    throw std::domain_error("law arity mismatch");

  const double n = static_cast<double>(empirical.n_samples);
  std::vector<int> caps(exact.caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i)
    caps[i] = std::max(exact.caps[i], empirical.caps[i]);
  const CountLaw grid = CountLaw::zeros(caps);

  ChiSquareReport report;
  report.n_samples = empirical.n_samples;
  report.min_expected = n;
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  for (std::size_t flat = 0; flat < grid.pmf.size(); ++flat) {
    const auto counts = grid.counts_at(flat);
    const double expected = n * exact.prob(counts);
    const double observed = n * empirical.prob(counts);
    if (expected >= 5.0) {
      report.statistic += (observed - expected) * (observed - expected) / expected;
      report.atoms += 1;
      report.min_expected = std::min(report.min_expected, expected);
    } else {
      pooled_expected += expected;
      pooled_observed += observed;
    }
  }
  if (pooled_expected >= 5.0) {
    report.statistic += (pooled_observed - pooled_expected) *
                        (pooled_observed - pooled_expected) / pooled_expected;
    report.atoms += 1;
    report.min_expected = std::min(report.min_expected, pooled_expected);
  }
  if (report.atoms < 1)
    throw validation_error("chi-square needs a bucket with expected >= 5");
  // a degenerate law has one bucket and nothing to test: statistic 0 iff
  // the sample sat entirely on it
  report.dof = report.atoms - 1;
  report.p_value = report.dof == 0
                       ? (report.statistic <= 1e-12 ? 1.0 : 0.0)
                       : chi_square_tail(report.statistic, report.dof);
  return report;
}

}  // namespace dppt
