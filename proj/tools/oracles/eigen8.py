"""Eigenvalues of the 8x8 PSD contraction used in the linalg tests.

The matrix is built from integer data (A[i][j] = ((i*8+j+1)^3) % 101 - 50,
B = A^T A / trace(A^T A)), so C++ reproduces it bit for bit. The
eigenvalues here come from Householder tridiagonalization followed by
bisection on the Sturm sequence of the characteristic polynomial, all in
50-digit arithmetic: a different algorithm family from the Jacobi sweeps
under test.
"""

from mpmath import mp, mpf, sqrt

mp.dps = 50

N = 8


def base_matrix():
    a = [[((i * N + j + 1) ** 3) % 101 - 50 for j in range(N)] for i in range(N)]
    s = [[sum(a[k][i] * a[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    tr = sum(s[i][i] for i in range(N))
    return [[mpf(s[i][j]) / tr for j in range(N)] for i in range(N)], s, tr


def householder_tridiag(m):
    a = [row[:] for row in m]
    n = len(a)
    for k in range(n - 2):
        x = [a[i][k] for i in range(k + 1, n)]
        alpha = sqrt(sum(v * v for v in x))
        if x[0] > 0:
            alpha = -alpha
        if alpha == 0:
            continue
        v = x[:]
        v[0] -= alpha
        vnorm2 = sum(t * t for t in v)
        if vnorm2 == 0:
            continue
        # P = I - 2 vv^T/ (v,v), applied on both sides of the trailing block
        w = [mpf(0)] * n
        for i in range(k + 1, n):
            w[i] = v[i - k - 1]
        for i in range(n):
            dot = sum(a[i][j] * w[j] for j in range(n))
            c = 2 * dot / vnorm2
            for j in range(n):
                a[i][j] -= c * w[j]
        for j in range(n):
            dot = sum(w[i] * a[i][j] for i in range(n))
            c = 2 * dot / vnorm2
            for i in range(n):
                a[i][j] -= c * w[i]
    d = [a[i][i] for i in range(n)]
    e = [a[i + 1][i] for i in range(n - 1)]
    return d, e


def sturm_count(d, e, x):
    """Eigenvalues of the tridiagonal matrix strictly below x."""
    count = 0
    q = mpf(1)
    for i in range(len(d)):
        off = e[i - 1] ** 2 if i else mpf(0)
        q = d[i] - x - (off / q if q != 0 else off / mpf(1e-60))
        if q < 0:
            count += 1
    return count


def bisect_eigen(d, e, k, lo, hi):
    for _ in range(200):
        mid = (lo + hi) / 2
        if sturm_count(d, e, mid) <= k:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def main():
    b, s, tr = base_matrix()
    d, e = householder_tridiag(b)
    bound = max(abs(d[i]) + (abs(e[i - 1]) if i else 0) + (abs(e[i]) if i < N - 1 else 0)
                for i in range(N))
    eigs = [bisect_eigen(d, e, k, -bound, bound) for k in range(N)]
    eigs.sort(reverse=True)

    print("trace(A^T A) =", tr)
    print("eigenvalues (descending):")
    for v in eigs:
        print(f"  {float(v):.17e}")
    print("sum =", float(sum(eigs)))


if __name__ == "__main__":
    main()
