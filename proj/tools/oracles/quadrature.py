"""Reference values for the Gauss-Legendre quadrature tests.

Nodes and weights of the order-5 rule on [-1,1] from the roots of P_5
found by mpmath's polyroots on exact rational coefficients; the test
integral from sympy's closed form.
"""

from fractions import Fraction

import mpmath
import sympy as sp

mpmath.mp.dps = 40


def legendre_coeffs(n):
    x = sp.Symbol("x")
    p = sp.legendre(n, x)
    return [Fraction(str(c)) for c in reversed(sp.Poly(p, x).all_coeffs())]


def main():
    n = 5
    coeffs = legendre_coeffs(n)
    roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator
                              for c in reversed(coeffs)])
    roots = sorted(r.real for r in roots)

    x = sp.Symbol("x")
    dp = sp.diff(sp.legendre(n, x), x)
    print("order-5 nodes / weights on [-1,1]:")
    for r in roots:
        w = 2 / ((1 - r ** 2) * mpmath.mpf(sp.N(dp.subs(x, sp.Float(str(r), 40)), 40)) ** 2)
        print(f"  {float(r):+.17e}  {float(w):.17e}")

    val = sp.integrate(x ** 3 * sp.cos(2 * sp.pi * x), (x, 0, 1))
    print("int_0^1 x^3 cos(2 pi x) dx =", sp.nsimplify(val), "=", float(val))


if __name__ == "__main__":
    main()
