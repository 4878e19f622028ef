"""Exact subset probabilities for K = [[1/2, 49/100], [49/100, 1/2]].

Worked in sympy rationals through the likelihood matrix L = K (I-K)^-1:
P(Y) = det(L_Y) / det(I + L). The frozen targets are the four subset
probabilities and the conditional P(site 0 present | site 1 present).
"""

import sympy as sp


def main():
    k = sp.Matrix([[sp.Rational(1, 2), sp.Rational(49, 100)],
                   [sp.Rational(49, 100), sp.Rational(1, 2)]])
    i2 = sp.eye(2)
    l = k * (i2 - k).inv()
    z = (i2 + l).det()

    def p(rows):
        if not rows:
            return 1 / z
        sub = l[rows, rows]
        return sub.det() / z

    probs = {(): p([]), (0,): p([0]), (1,): p([1]), (0, 1): p([0, 1])}
    total = sum(probs.values())
    assert sp.simplify(total - 1) == 0

    for mask, value in probs.items():
        print(f"P{mask or '{}'} = {sp.nsimplify(value)} = {float(value):.17e}")

    cond = probs[(0, 1)] / (probs[(0, 1)] + probs[(1,)])
    print("P(0 in Y | 1 in Y) =", sp.nsimplify(cond), "=", f"{float(cond):.17e}")


if __name__ == "__main__":
    main()
