#include "dppt/ground.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "dppt/errors.hpp"

namespace dppt {

GroundSpace GroundSpace::discrete(int n) {
  if (n < 1) throw validation_error("discrete space needs at least one site");
  GroundSpace s;
  s.kind = Kind::Discrete;
  s.size = n;
  return s;
}

GroundSpace GroundSpace::interval(double lo, double hi) {
  if (!(lo < hi)) throw validation_error("interval space needs lo < hi");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw validation_error("interval bounds must be finite");
  GroundSpace s;
  s.kind = Kind::Interval;
  s.lo = lo;
  s.hi = hi;
  return s;
}

double GroundSpace::total_measure() const {
  return is_discrete() ? static_cast<double>(size) : hi - lo;
}

bool operator==(const GroundSpace& a, const GroundSpace& b) {
  if (a.kind != b.kind) return false;
  if (a.is_discrete()) return a.size == b.size;
  return a.lo == b.lo && a.hi == b.hi;
}

Cell Cell::sites(std::vector<int> sites) {
  std::sort(sites.begin(), sites.end());
  for (std::size_t i = 0; i + 1 < sites.size(); ++i)
    if (sites[i] == sites[i + 1])
      throw validation_error("cell sites must be distinct");
  Cell c;
  c.kind_ = GroundSpace::Kind::Discrete;
  c.sites_ = std::move(sites);
  return c;
}

Cell Cell::intervals(std::vector<Subinterval> pieces) {
  for (const auto& p : pieces) {
    if (!(p.a < p.b)) throw validation_error("subinterval needs a < b");
    if (!std::isfinite(p.a) || !std::isfinite(p.b))
      throw validation_error("subinterval bounds must be finite");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Subinterval& x, const Subinterval& y) { return x.a < y.a; });
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i + 1].a < pieces[i].b - 1e-15)
      throw validation_error("subintervals must be pairwise disjoint");
  Cell c;
  c.kind_ = GroundSpace::Kind::Interval;
  c.pieces_ = std::move(pieces);
  return c;
}

Cell Cell::interval(double a, double b) { return intervals({{a, b}}); }

const std::vector<int>& Cell::site_list() const {
  if (!is_discrete()) throw std::domain_error("site_list on an interval cell");
  return sites_;
}

const std::vector<Subinterval>& Cell::pieces() const {
  if (is_discrete()) throw std::domain_error("pieces on a discrete cell");
  return pieces_;
}

bool Cell::contains(double x) const {
  if (is_discrete()) return false;
  for (const auto& p : pieces_)
    if (x >= p.a && x < p.b) return true;
  return false;
}

bool Cell::contains_site(int s) const {
  if (!is_discrete()) return false;
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

bool Cell::empty() const {
  return is_discrete() ? sites_.empty() : pieces_.empty();
}

double Cell::length() const {
  double len = 0.0;
  for (const auto& p : pieces_) len += p.length();
  return len;
}

int Cell::site_count() const { return static_cast<int>(sites_.size()); }

bool Cell::disjoint(const Cell& a, const Cell& b) {
  if (a.kind_ != b.kind_) throw validation_error("cells of mixed kind");
  if (a.is_discrete()) {
    for (int s : a.sites_)
      if (b.contains_site(s)) return false;
    return true;
  }
  for (const auto& pa : a.pieces_)
    for (const auto& pb : b.pieces_)
      if (std::max(pa.a, pb.a) < std::min(pa.b, pb.b) - 1e-15) return false;
  return true;
}

Cell Cell::merged(const std::vector<Cell>& cells) {
  if (cells.empty()) throw validation_error("merged: no cells");
  const auto kind = cells.front().kind_;
  if (kind == GroundSpace::Kind::Discrete) {
    std::vector<int> all;
    for (const auto& c : cells) {
      if (c.kind_ != kind) throw validation_error("cells of mixed kind");
      all.insert(all.end(), c.sites_.begin(), c.sites_.end());
    }
    return Cell::sites(std::move(all));  // rejects duplicates
  }
  std::vector<Subinterval> all;
  for (const auto& c : cells) {
    if (c.kind_ != kind) throw validation_error("cells of mixed kind");
    all.insert(all.end(), c.pieces_.begin(), c.pieces_.end());
  }
  std::sort(all.begin(), all.end(),
            [](const Subinterval& x, const Subinterval& y) { return x.a < y.a; });
  std::vector<Subinterval> out;
  for (const auto& p : all) {
    if (!out.empty() && p.a < out.back().b - 1e-15)
      throw validation_error("merged: overlapping cells");
    if (!out.empty() && std::fabs(p.a - out.back().b) <= 1e-12)
      out.back().b = p.b;
    else
      out.push_back(p);
  }
  return Cell::intervals(std::move(out));
}

bool Cell::same_window(const Cell& other, double tol) const {
  if (kind_ != other.kind_) return false;
  if (is_discrete()) return sites_ == other.sites_;
  if (pieces_.size() != other.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (std::fabs(pieces_[i].a - other.pieces_[i].a) > tol ||
        std::fabs(pieces_[i].b - other.pieces_[i].b) > tol)
      return false;
  return true;
}

double measure(const GroundSpace& space, const Cell& cell) {
  if (space.is_discrete() != cell.is_discrete())
    throw std::domain_error("cell kind does not match space");
  if (space.is_discrete()) {
    for (int s : cell.site_list())
      if (s < 0 || s >= space.size)
        throw std::domain_error("cell site out of range");
    return static_cast<double>(cell.site_count());
  }
  for (const auto& p : cell.pieces())
    if (p.a < space.lo - 1e-12 || p.b > space.hi + 1e-12)
      throw std::domain_error("cell subinterval out of range");
  return cell.length();
}

Partition::Partition(GroundSpace space, std::vector<Cell> cells, std::string label)
    : space_(space), cells_(std::move(cells)), label_(std::move(label)) {
  if (cells_.empty()) throw validation_error("partition needs at least one cell");
  for (const auto& c : cells_) {
    if (measure(space_, c) <= 0.0)
      throw validation_error("partition cells must have positive measure");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (!Cell::disjoint(cells_[i], cells_[j]))
        throw validation_error("partition cells must be pairwise disjoint");
  window_ = Cell::merged(cells_);
}

double Partition::resolution() const {
  double r = 0.0;
  for (const auto& c : cells_) r = std::max(r, measure(space_, c));
  return r;
}

Partition Partition::uniform_interval(const GroundSpace& space, int m,
                                      const std::string& label) {
  if (space.is_discrete())
    throw validation_error("uniform_interval needs an interval space");
  if (m < 1) throw validation_error("partition needs at least one cell");
  std::vector<Cell> cells;
  cells.reserve(m);
  const double len = space.hi - space.lo;
  for (int i = 0; i < m; ++i) {
    const double a = space.lo + len * i / m;
    const double b = i + 1 == m ? space.hi : space.lo + len * (i + 1) / m;
    cells.push_back(Cell::interval(a, b));
  }
  return Partition(space, std::move(cells), label);
}

Partition Partition::discrete_blocks(const GroundSpace& space, int m,
                                     const std::string& label) {
  if (!space.is_discrete())
    throw validation_error("discrete_blocks needs a discrete space");
  if (m < 1 || m > space.size)
    throw validation_error("block count must be in [1, size]");
  std::vector<Cell> cells;
  cells.reserve(m);
  for (int i = 0; i < m; ++i) {
    const int lo = static_cast<int>(static_cast<long long>(i) * space.size / m);
    const int hi = static_cast<int>(static_cast<long long>(i + 1) * space.size / m);
    std::vector<int> sites;
    for (int s = lo; s < hi; ++s) sites.push_back(s);
    cells.push_back(Cell::sites(std::move(sites)));
  }
  return Partition(space, std::move(cells), label);
}

namespace {

std::vector<Cell> split_interval_cell(const Cell& cell, int factor) {
  // equal-measure children, walking the pieces left to right
  const double total = cell.length();
  const auto& pieces = cell.pieces();
  std::vector<Cell> children;
  std::vector<Subinterval> current;
  double want = total / factor;
  double acc = 0.0;
  std::size_t pi = 0;
  double pos = pieces.front().a;
  while (static_cast<int>(children.size()) < factor - 1) {
    const auto& p = pieces[pi];
    if (pos < p.a) pos = p.a;
    const double room = p.b - pos;
    const double need = want - acc;
    if (room > need + 1e-15) {
      current.push_back({pos, pos + need});
      children.push_back(Cell::intervals(current));
      current.clear();
      pos += need;
      acc = 0.0;
    } else {
      current.push_back({pos, p.b});
      acc += room;
      ++pi;
      if (pi >= pieces.size()) break;
      pos = pieces[pi].a;
      if (std::fabs(acc - want) <= 1e-15 * std::max(1.0, total)) {
        children.push_back(Cell::intervals(current));
        current.clear();
        acc = 0.0;
      }
    }
  }
  // remainder
  if (pi < pieces.size()) {
    const auto& p = pieces[pi];
    if (pos < p.b - 1e-15) current.push_back({std::max(pos, p.a), p.b});
    for (std::size_t k = pi + 1; k < pieces.size(); ++k) current.push_back(pieces[k]);
  }
  if (!current.empty()) children.push_back(Cell::intervals(current));
  return children;
}

std::vector<Cell> split_discrete_cell(const Cell& cell, int factor) {
  const auto& sites = cell.site_list();
  const int s = static_cast<int>(sites.size());
  std::vector<Cell> children;
  if (s <= factor) {
    for (int site : sites) children.push_back(Cell::sites({site}));
    return children;
  }
  for (int j = 0; j < factor; ++j) {
    const int lo = static_cast<int>(static_cast<long long>(j) * s / factor);
    const int hi = static_cast<int>(static_cast<long long>(j + 1) * s / factor);
    std::vector<int> chunk(sites.begin() + lo, sites.begin() + hi);
    if (!chunk.empty()) children.push_back(Cell::sites(std::move(chunk)));
  }
  return children;
}

}  // namespace

Partition refine(const Partition& coarse, int factor) {
  if (factor < 2) throw validation_error("refine factor must be >= 2");
  std::vector<Cell> cells;
  for (const auto& parent : coarse.cells()) {
    const auto children = parent.is_discrete() ? split_discrete_cell(parent, factor)
                                               : split_interval_cell(parent, factor);
    cells.insert(cells.end(), children.begin(), children.end());
  }
  return Partition(coarse.space(), std::move(cells), coarse.label());
}

namespace {

struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GlRule& gl_rule(int order) {
  static std::mutex mu;
  static std::map<int, GlRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GlRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[order - 1 - i] = rule.weights[i];
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

}  // namespace

void Quadrature::gauss_legendre(int order, std::vector<double>& nodes,
                                std::vector<double>& weights) {
  if (order < 1) throw validation_error("quadrature order must be positive");
  const GlRule& rule = gl_rule(order);
  nodes = rule.nodes;
  weights = rule.weights;
}

Quadrature::Quadrature(const Cell& cell, int order) : cell_(cell), order_(order) {
  if (order < 1) throw validation_error("quadrature order must be positive");
  if (cell.is_discrete()) {
    for (int s : cell.site_list()) {
      nodes_.push_back(static_cast<double>(s));
      weights_.push_back(1.0);
    }
    return;
  }
  std::vector<double> z, w;
  gauss_legendre(order, z, w);
  for (const auto& p : cell.pieces()) {
    const double half = 0.5 * (p.b - p.a);
    const double mid = 0.5 * (p.a + p.b);
    for (int q = 0; q < order; ++q) {
      nodes_.push_back(mid + half * z[q]);
      weights_.push_back(half * w[q]);
    }
  }
}

bool Quadrature::covers(const Cell& cell) const {
  return cell_.same_window(cell);
}

double legendre_orthonormal(int degree, double a, double b, double x) {
  const double t = 2.0 * (x - a) / (b - a) - 1.0;
  double p1 = 1.0, p2 = 0.0;
  for (int k = 0; k < degree; ++k) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * k + 1.0) * t * p2 - k * p3) / (k + 1);
  }
  return std::sqrt((2.0 * degree + 1.0) / (b - a)) * p1;
}

namespace {

// all orthonormal Legendre values 0..deg at x, one recurrence pass
void legendre_all(int deg, double a, double b, double x, std::vector<double>& out) {
  out.resize(deg + 1);
  const double t = 2.0 * (x - a) / (b - a) - 1.0;
  double p1 = 1.0, p2 = 0.0;
  for (int k = 0; k <= deg; ++k) {
    out[k] = std::sqrt((2.0 * k + 1.0) / (b - a)) * p1;
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * k + 1.0) * t * p2 - k * p3) / (k + 1);
  }
}

double eval_piece(const FunctionRep::Piece& p, double x) {
  std::vector<double> vals;
  legendre_all(p.degree(), p.a, p.b, x, vals);
  double s = 0.0;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) s += p.coeffs[k] * vals[k];
  return s;
}

}  // namespace

FunctionRep FunctionRep::discrete(std::vector<double> values) {
  FunctionRep f;
  f.discrete_ = true;
  f.values_ = std::move(values);
  return f;
}

FunctionRep FunctionRep::piecewise(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const auto& p : pieces) {
    if (!(p.a < p.b)) throw validation_error("piece needs a < b");
    if (p.coeffs.empty()) throw validation_error("piece needs coefficients");
  }
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i + 1].a < pieces[i].b - 1e-15)
      throw validation_error("pieces must be disjoint");
  FunctionRep f;
  f.discrete_ = false;
  f.pieces_ = std::move(pieces);
  return f;
}

FunctionRep FunctionRep::legendre_basis(double a, double b, int degree) {
  std::vector<double> coeffs(degree + 1, 0.0);
  coeffs[degree] = 1.0;
  return piecewise({Piece{a, b, std::move(coeffs)}});
}

FunctionRep FunctionRep::polynomial(double a, double b, std::vector<double> coeffs) {
  return piecewise({Piece{a, b, std::move(coeffs)}});
}

FunctionRep FunctionRep::project(double a, double b, int degree,
                                 double (*fn)(double, const void*), const void* ctx,
                                 int quad_order) {
  std::vector<double> z, w;
  Quadrature::gauss_legendre(quad_order, z, w);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::vector<double> coeffs(degree + 1, 0.0);
  std::vector<double> vals;
  for (int q = 0; q < quad_order; ++q) {
    const double x = mid + half * z[q];
    const double fx = fn(x, ctx);
    legendre_all(degree, a, b, x, vals);
    const double wq = half * w[q];
    for (int k = 0; k <= degree; ++k) coeffs[k] += wq * fx * vals[k];
  }
  return polynomial(a, b, std::move(coeffs));
}

double FunctionRep::eval(double x) const {
  if (discrete_) throw std::domain_error("eval(double) on a discrete function");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (x >= p.a && x < p.b) return eval_piece(p, x);
    // right endpoint of the final piece: use its left limit
    if (i + 1 == pieces_.size() && x == p.b) return eval_piece(p, x);
  }
  return 0.0;
}

double FunctionRep::value_at(int site) const {
  if (!discrete_) throw std::domain_error("value_at on a continuous function");
  if (site < 0 || site >= static_cast<int>(values_.size()))
    throw std::domain_error("site out of range");
  return values_[site];
}

int FunctionRep::max_degree() const {
  int d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

FunctionRep FunctionRep::linear_combination(const std::vector<const FunctionRep*>& fns,
                                            const std::vector<double>& coeffs) {
  if (fns.size() != coeffs.size() || fns.empty())
    throw validation_error("linear_combination: length mismatch");
  if (fns.front()->is_discrete()) {
    const std::size_t n = fns.front()->values().size();
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < fns.size(); ++j) {
      if (!fns[j]->is_discrete() || fns[j]->values().size() != n)
        throw validation_error("linear_combination: mixed shapes");
      for (std::size_t i = 0; i < n; ++i) out[i] += coeffs[j] * fns[j]->values()[i];
    }
    return FunctionRep::discrete(std::move(out));
  }

  // common breakpoint grid
  std::vector<double> cuts;
  int deg = 0;
  for (const auto* f : fns) {
    if (f->is_discrete()) throw validation_error("linear_combination: mixed shapes");
    for (const auto& p : f->piece_list()) {
      cuts.push_back(p.a);
      cuts.push_back(p.b);
      deg = std::max(deg, p.degree());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> grid;
  for (double c : cuts)
    if (grid.empty() || c - grid.back() > 1e-14 * std::max(1.0, std::fabs(c)))
      grid.push_back(c);

  std::vector<Piece> out;
  std::vector<double> z, w;
  Quadrature::gauss_legendre(deg + 1, z, w);
  std::vector<double> vals;
  for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
    const double a = grid[g], b = grid[g + 1];
    // skip sub-ranges no input covers
    const double xm = 0.5 * (a + b);
    bool covered = false;
    for (const auto* f : fns)
      for (const auto& p : f->piece_list())
        if (xm >= p.a && xm < p.b) covered = true;
    if (!covered) continue;

    std::vector<double> c(deg + 1, 0.0);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int q = 0; q <= deg; ++q) {
      const double x = mid + half * z[q];
      double fx = 0.0;
      for (std::size_t j = 0; j < fns.size(); ++j) {
        for (const auto& p : fns[j]->piece_list())
          if (x >= p.a && x < p.b) {
            fx += coeffs[j] * eval_piece(p, x);
            break;
          }
      }
      legendre_all(deg, a, b, x, vals);
      const double wq = half * w[q];
      for (int k = 0; k <= deg; ++k) c[k] += wq * fx * vals[k];
    }
    out.push_back(Piece{a, b, std::move(c)});
  }
  if (out.empty()) throw validation_error("linear_combination: empty support");
  return piecewise(std::move(out));
}

FunctionRep restrict_to(const FunctionRep& f, const Cell& cell) {
  if (cell.is_discrete()) {
    std::vector<double> out(f.values().size(), 0.0);
    for (int s : cell.site_list()) out[s] = f.value_at(s);
    return FunctionRep::discrete(std::move(out));
  }
  if (f.is_discrete()) throw std::domain_error("interval cell, discrete function");
  std::vector<FunctionRep::Piece> out;
  std::vector<double> z, w, vals;
  for (const auto& pf : f.piece_list()) {
    for (const auto& pc : cell.pieces()) {
      const double a = std::max(pf.a, pc.a);
      const double b = std::min(pf.b, pc.b);
      if (b - a <= 1e-15) continue;
      const int deg = pf.degree();
      Quadrature::gauss_legendre(deg + 1, z, w);
      std::vector<double> c(deg + 1, 0.0);
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (int q = 0; q <= deg; ++q) {
        const double x = mid + half * z[q];
        std::vector<double> pv;
        legendre_all(pf.degree(), pf.a, pf.b, x, pv);
        double fx = 0.0;
        for (std::size_t k = 0; k < pf.coeffs.size(); ++k) fx += pf.coeffs[k] * pv[k];
        legendre_all(deg, a, b, x, vals);
        const double wq = half * w[q];
        for (int k = 0; k <= deg; ++k) c[k] += wq * fx * vals[k];
      }
      out.push_back(FunctionRep::Piece{a, b, std::move(c)});
    }
  }
  if (out.empty())
    return FunctionRep::polynomial(cell.pieces().front().a,
                                   cell.pieces().front().b, {0.0});
  return FunctionRep::piecewise(std::move(out));
}

double inner_product(const FunctionRep& f, const FunctionRep& g, const Cell& cell,
                     const Quadrature& quad) {
  if (cell.is_discrete()) {
    if (!f.is_discrete() || !g.is_discrete())
      throw std::domain_error("discrete cell with continuous functions");
    double s = 0.0;
    for (int site : cell.site_list()) s += f.value_at(site) * g.value_at(site);
    return s;
  }
  if (!quad.covers(cell))
    throw std::domain_error("quadrature was built for a different cell");
  double s = 0.0;
  const auto& xs = quad.nodes();
  const auto& ws = quad.weights();
  for (std::size_t q = 0; q < xs.size(); ++q)
    s += ws[q] * f.eval(xs[q]) * g.eval(xs[q]);
  return s;
}

namespace {

double integrate_product(const FunctionRep::Piece& pf, const FunctionRep::Piece& pg,
                         double a, double b) {
  const int order = (pf.degree() + pg.degree()) / 2 + 1;
  std::vector<double> z, w;
  Quadrature::gauss_legendre(order, z, w);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int q = 0; q < order; ++q) {
    const double x = mid + half * z[q];
    s += half * w[q] * eval_piece(pf, x) * eval_piece(pg, x);
  }
  return s;
}

}  // namespace

double inner_product_exact(const FunctionRep& f, const FunctionRep& g,
                           const Cell& cell) {
  if (cell.is_discrete()) {
    double s = 0.0;
    for (int site : cell.site_list()) s += f.value_at(site) * g.value_at(site);
    return s;
  }
  if (f.is_discrete() || g.is_discrete())
    throw std::domain_error("interval cell with discrete functions");
  double s = 0.0;
  for (const auto& pf : f.piece_list()) {
    for (const auto& pg : g.piece_list()) {
      const double lo0 = std::max(pf.a, pg.a);
      const double hi0 = std::min(pf.b, pg.b);
      if (hi0 <= lo0) continue;
      for (const auto& pc : cell.pieces()) {
        const double lo = std::max(lo0, pc.a);
        const double hi = std::min(hi0, pc.b);
        if (hi - lo > 1e-15) s += integrate_product(pf, pg, lo, hi);
      }
    }
  }
  return s;
}

double inner_product_full(const FunctionRep& f, const FunctionRep& g,
                          const GroundSpace& space) {
  return inner_product_exact(f, g, full_window(space));
}

Cell full_window(const GroundSpace& space) {
  if (space.is_discrete()) {
    std::vector<int> sites(space.size);
    for (int i = 0; i < space.size; ++i) sites[i] = i;
    return Cell::sites(std::move(sites));
  }
  return Cell::interval(space.lo, space.hi);
}

}  // namespace dppt
