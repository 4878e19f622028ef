#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dppt/ground.hpp"

using namespace dppt;

TEST_CASE("measure: length, cardinality, additivity") {
  const GroundSpace unit = GroundSpace::interval(0.0, 1.0);
  CHECK(measure(unit, Cell::interval(0.0, 0.5)) == doctest::Approx(0.5));

  const GroundSpace ten = GroundSpace::discrete(10);
  CHECK(measure(ten, Cell::sites({2, 5, 7})) == 3.0);

  CHECK(measure(unit, Cell::intervals({{0.0, 0.25}, {0.75, 1.0}})) ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(measure(unit, Cell::interval(-0.5, 0.5)), std::domain_error);
  CHECK_THROWS_AS(measure(ten, Cell::sites({11})), std::domain_error);
}

TEST_CASE("refine splits intervals evenly and respects the singleton floor") {
  const GroundSpace unit = GroundSpace::interval(0.0, 1.0);
  const Partition one(unit, {Cell::interval(0.0, 1.0)});

  const Partition halves = refine(one, 2);
  REQUIRE(halves.size() == 2);
  CHECK(halves.cell(0).pieces()[0].b == doctest::Approx(0.5));

  const Partition quarters = refine(halves, 2);
  REQUIRE(quarters.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(measure(unit, quarters.cell(i)) == doctest::Approx(0.25));

  const GroundSpace three = GroundSpace::discrete(3);
  const Partition sites(three, {Cell::sites({0, 1, 2})});
  const Partition singles = refine(sites, 4);
  REQUIRE(singles.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(singles.cell(i).site_count() == 1);
}

TEST_CASE("refinement preserves total measure and stays disjoint") {
  const GroundSpace unit = GroundSpace::interval(0.0, 1.0);
  Partition p = Partition::uniform_interval(unit, 3);
  for (int step = 0; step < 3; ++step) {
    p = refine(p, 2);
    double total = 0.0;
    for (const auto& c : p.cells()) total += measure(unit, c);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i + 1 < p.size(); ++i)
      CHECK(Cell::disjoint(p.cell(i), p.cell(i + 1)));
  }
  CHECK(p.resolution() == doctest::Approx(1.0 / 24.0));
}

TEST_CASE("gauss-legendre rule matches the order-5 reference") {
  // frozen from tools/oracles/quadrature.py
  const double nodes[5] = {-9.06179845938663964e-01, -5.38469310105683108e-01,
                           0.0, 5.38469310105683108e-01,
                           9.06179845938663964e-01};
  const double weights[5] = {2.36926885056189085e-01, 4.78628670499366471e-01,
                             5.68888888888888888e-01, 4.78628670499366471e-01,
                             2.36926885056189085e-01};
  std::vector<double> x, w;
  Quadrature::gauss_legendre(5, x, w);
  REQUIRE(x.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(x[i] - nodes[i]) < 1e-14);
    CHECK(std::abs(w[i] - weights[i]) < 1e-14);
  }
}

TEST_CASE("composite quadrature integrates smooth functions over split cells") {
  const Cell cell = Cell::intervals({{0.0, 0.3}, {0.3, 1.0}});
  const Quadrature quad(cell, 16);
  double integral = 0.0;
  for (std::size_t i = 0; i < quad.nodes().size(); ++i) {
    const double x = quad.nodes()[i];
    integral += quad.weights()[i] * x * x * x *
                std::cos(2.0 * std::numbers::pi * x);
  }
  // 3 / (4 pi^2), sympy closed form (tools/oracles/quadrature.py)
  const double truth = 3.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  CHECK(std::abs(integral - truth) < 1e-14);
}

TEST_CASE("legendre basis is orthonormal to degree 20") {
  const Cell cell = Cell::interval(0.25, 0.75);
  for (int j = 0; j <= 20; ++j) {
    const FunctionRep fj = FunctionRep::legendre_basis(0.25, 0.75, j);
    for (int k = j; k <= 20; ++k) {
      const FunctionRep fk = FunctionRep::legendre_basis(0.25, 0.75, k);
      const double ip = inner_product_exact(fj, fk, cell);
      CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("inner products: constants, monomials, orthogonality") {
  const GroundSpace unit = GroundSpace::interval(0.0, 1.0);
  const Cell half = Cell::interval(0.0, 0.5);

  const FunctionRep one = FunctionRep::polynomial(0.0, 1.0, {1.0});
  CHECK(inner_product_exact(one, one, half) == doctest::Approx(0.5));

  // identity in orthonormal Legendre coordinates: x = 1/2 + L1/(2 sqrt 3)
  const FunctionRep x =
      FunctionRep::polynomial(0.0, 1.0, {0.5, 0.5 / std::sqrt(3.0)});
  CHECK(x.eval(0.2) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(inner_product_full(x, one, unit) == doctest::Approx(0.5));

  const FunctionRep p1 = FunctionRep::legendre_basis(0.0, 1.0, 1);
  const FunctionRep p2 = FunctionRep::legendre_basis(0.0, 1.0, 2);
  CHECK(std::abs(inner_product_full(p1, p2, unit)) < 1e-14);
}

TEST_CASE("quadrature-based inner product rejects a mismatched window") {
  const Cell half = Cell::interval(0.0, 0.5);
  const Cell other = Cell::interval(0.5, 1.0);
  const Quadrature quad(half, 8);
  const FunctionRep one = FunctionRep::polynomial(0.0, 1.0, {1.0});
  CHECK(inner_product(one, one, half, quad) == doctest::Approx(0.5));
  CHECK_THROWS_AS(inner_product(one, one, other, quad), std::domain_error);
}

TEST_CASE("discrete function reps behave like coordinate vectors") {
  const FunctionRep f = FunctionRep::discrete({1.0, 0.0, 2.0});
  const FunctionRep g = FunctionRep::discrete({0.5, 3.0, 1.0});
  const Cell all = Cell::sites({0, 1, 2});
  CHECK(inner_product_exact(f, g, all) == doctest::Approx(2.5));
  CHECK(inner_product_exact(f, g, Cell::sites({0})) == doctest::Approx(0.5));
  CHECK(f.value_at(2) == 2.0);
}

TEST_CASE("linear combinations merge breakpoints") {
  const FunctionRep a = FunctionRep::polynomial(0.0, 0.5, {1.0});
  const FunctionRep b = FunctionRep::legendre_basis(0.25, 1.0, 1);
  const FunctionRep sum = FunctionRep::linear_combination({&a, &b}, {2.0, 3.0});
  // overlap region [0.25,0.5) sees both, the flanks see one each
  for (double x : {0.1, 0.3, 0.45, 0.7, 0.95})
    CHECK(sum.eval(x) ==
          doctest::Approx(2.0 * a.eval(x) + 3.0 * b.eval(x)).epsilon(1e-12));
  CHECK(sum.eval(0.3) != doctest::Approx(0.0));
}

TEST_CASE("restrict_to clips support and keeps values inside") {
  const FunctionRep f = FunctionRep::polynomial(0.0, 1.0, {1.0, 1.0});
  const FunctionRep g = restrict_to(f, Cell::interval(0.25, 0.5));
  CHECK(g.eval(0.3) == doctest::Approx(f.eval(0.3)));
  CHECK(g.eval(0.7) == 0.0);
  CHECK(g.eval(0.1) == 0.0);
}

TEST_CASE("projection of a callable reproduces it at quadrature accuracy") {
  const auto fn = [](double x, const void*) {
    return std::sin(2.0 * std::numbers::pi * x);
  };
  const FunctionRep f = FunctionRep::project(0.0, 1.0, 14, fn, nullptr);
  for (double x : {0.05, 0.3, 0.55, 0.9})
    CHECK(f.eval(x) ==
          doctest::Approx(std::sin(2.0 * std::numbers::pi * x)).epsilon(1e-9));
}
