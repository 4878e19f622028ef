"""Reference numbers for the transference tests, by direct quadrature.

All inner products below are mpmath integrals at 40 digits, independent of
the library's piecewise-Legendre algebra:

  * the smallest per-cell basis size for the rank-3 trigonometric
    projection on two half cells at a 5e-11 per-cell residual budget,
    with the residual achieved at that size;
  * the leakage of the same kernel under normalized-indicator bases on
    uniform grids of 64 and 128 cells.
"""

import mpmath
from mpmath import mp, mpf, cos, sin, pi, sqrt, quad

mp.dps = 40

PHIS = [
    lambda x: mpf(1),
    lambda x: sqrt(2) * cos(2 * pi * x),
    lambda x: sqrt(2) * sin(2 * pi * x),
]


def legendre_on(a, b, k):
    def w(x):
        t = 2 * (x - a) / (b - a) - 1
        return sqrt((2 * k + 1) / (b - a)) * mpmath.legendre(k, t)
    return w


def cell_residual(a, b, n):
    res = mpf(0)
    for phi in PHIS:
        mass = quad(lambda x: phi(x) ** 2, [a, b])
        captured = mpf(0)
        for k in range(n):
            w = legendre_on(a, b, k)
            c = quad(lambda x: phi(x) * w(x), [a, b])
            captured += c ** 2
        res += mass - captured
    return res


def indicator_leakage(m):
    leak = mpf(0)
    for phi in PHIS:
        captured = mpf(0)
        for i in range(m):
            a, b = mpf(i) / m, mpf(i + 1) / m
            c = quad(phi, [a, b]) / sqrt(mpf(1) / m)
            captured += c ** 2
        leak += 1 - captured
    return leak


def main():
    budget = mpf("5e-11")  # tol 1e-10 over 2 cells
    for n in range(1, 20):
        r = cell_residual(mpf(0), mpf("0.5"), n)
        print(f"n={n:2d} residual on [0,0.5) = {float(r):.6e}")
        if r <= budget:
            print(f"smallest n meeting 5e-11: {n}, residual {float(r):.17e}")
            break

    for m in (64, 128):
        print(f"indicator leakage, {m} cells: {float(indicator_leakage(m)):.17e}")


if __name__ == "__main__":
    main()
