#pragma once

#include <string>
#include <vector>

namespace dppt {

// Reference spaces: a finite site set with counting measure, or a single
// real interval with Lebesgue measure.
struct GroundSpace {
  enum class Kind { Discrete, Interval };

  Kind kind = Kind::Discrete;
  int size = 0;       // Discrete
  double lo = 0.0;    // Interval
  double hi = 0.0;

  static GroundSpace discrete(int n);
  static GroundSpace interval(double lo, double hi);

  bool is_discrete() const { return kind == Kind::Discrete; }
  double total_measure() const;
};

bool operator==(const GroundSpace& a, const GroundSpace& b);

// Half-open [a, b).
struct Subinterval {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
};

// A measurable window: a sorted set of sites (discrete) or a finite union
// of disjoint, sorted half-open subintervals (continuous).
class Cell {
 public:
  Cell() = default;

  static Cell sites(std::vector<int> sites);
  static Cell intervals(std::vector<Subinterval> pieces);
  static Cell interval(double a, double b);

  GroundSpace::Kind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == GroundSpace::Kind::Discrete; }

  const std::vector<int>& site_list() const;
  const std::vector<Subinterval>& pieces() const;

  bool contains(double x) const;     // continuous cells
  bool contains_site(int s) const;   // discrete cells
  bool empty() const;

  double length() const;             // total subinterval length
  int site_count() const;

  static bool disjoint(const Cell& a, const Cell& b);
  // Union of pairwise disjoint cells of one kind; adjacent subintervals merge.
  static Cell merged(const std::vector<Cell>& cells);

  bool same_window(const Cell& other, double tol = 1e-12) const;

 private:
  GroundSpace::Kind kind_ = GroundSpace::Kind::Discrete;
  std::vector<int> sites_;
  std::vector<Subinterval> pieces_;
};

// mu(cell): cardinality on discrete spaces, total length on intervals.
// Throws std::domain_error when the cell does not fit the space.
double measure(const GroundSpace& space, const Cell& cell);

// Ordered disjoint cells covering a window.
class Partition {
 public:
  Partition(GroundSpace space, std::vector<Cell> cells, std::string label = "");

  const GroundSpace& space() const { return space_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int i) const { return cells_.at(i); }
  const std::string& label() const { return label_; }
  const Cell& window() const { return window_; }
  int size() const { return static_cast<int>(cells_.size()); }

  // Max cell measure: how far this partition is from separating points.
  double resolution() const;

  static Partition uniform_interval(const GroundSpace& space, int m,
                                    const std::string& label = "");
  static Partition discrete_blocks(const GroundSpace& space, int m,
                                   const std::string& label = "");

 private:
  GroundSpace space_;
  std::vector<Cell> cells_;
  Cell window_;
  std::string label_;
};

// Split every cell into `factor` children (equal-length pieces on
// intervals, near-equal contiguous chunks on sites; cells at or below
// `factor` sites become singletons). Children of one parent stay adjacent
// in the output order.
Partition refine(const Partition& coarse, int factor);

// Nodes and weights integrating over one cell: composite Gauss-Legendre
// with `order` nodes per subinterval; site enumeration with unit weights
// on discrete cells.
class Quadrature {
 public:
  explicit Quadrature(const Cell& cell, int order = 16);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int order() const { return order_; }
  const Cell& cell() const { return cell_; }

  bool covers(const Cell& cell) const;

  // Gauss-Legendre rule on [-1, 1]; cached per order.
  static void gauss_legendre(int order, std::vector<double>& nodes,
                             std::vector<double>& weights);

 private:
  Cell cell_;
  int order_ = 0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// An L^2 element: values per site (discrete) or a piecewise polynomial
// written in the orthonormal Legendre basis of each piece (continuous).
// Pieces are sorted and disjoint; the function vanishes off its pieces.
class FunctionRep {
 public:
  struct Piece {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> coeffs;  // orthonormal Legendre on [a, b)
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  };

  FunctionRep() = default;

  static FunctionRep discrete(std::vector<double> values);
  static FunctionRep piecewise(std::vector<Piece> pieces);
  // Single orthonormal Legendre polynomial of `degree` supported on [a, b).
  static FunctionRep legendre_basis(double a, double b, int degree);
  static FunctionRep polynomial(double a, double b, std::vector<double> coeffs);
  // L^2 projection of an arbitrary callable onto degrees 0..degree on [a, b).
  static FunctionRep project(double a, double b, int degree,
                             double (*fn)(double, const void*), const void* ctx,
                             int quad_order = 64);

  bool is_discrete() const { return discrete_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Piece>& piece_list() const { return pieces_; }

  double eval(double x) const;
  double value_at(int site) const;
  int max_degree() const;

  // sum_j c_j f_j, with pieces refined to a common breakpoint grid
  static FunctionRep linear_combination(const std::vector<const FunctionRep*>& fns,
                                        const std::vector<double>& coeffs);

 private:
  bool discrete_ = true;
  std::vector<double> values_;
  std::vector<Piece> pieces_;
};

// Orthonormal Legendre value: sqrt((2k+1)/(b-a)) P_k(2(x-a)/(b-a) - 1).
double legendre_orthonormal(int degree, double a, double b, double x);

// 1_cell * f: zero outside the cell, unchanged inside (pieces intersected,
// coefficients re-expanded on the clipped pieces).
FunctionRep restrict_to(const FunctionRep& f, const Cell& cell);

// sum_q w_q f(x_q) g(x_q) restricted to `cell` (exact finite sum on
// discrete cells). Throws std::domain_error when `quad` was built for a
// different window.
double inner_product(const FunctionRep& f, const FunctionRep& g, const Cell& cell,
                     const Quadrature& quad);

// Degree-aware inner product over cell ∩ supp f ∩ supp g, exact for the
// piecewise-polynomial representations used throughout.
double inner_product_exact(const FunctionRep& f, const FunctionRep& g,
                           const Cell& cell);
double inner_product_full(const FunctionRep& f, const FunctionRep& g,
                          const GroundSpace& space);

// Window of the whole space as a cell.
Cell full_window(const GroundSpace& space);

}  // namespace dppt
