"""Slow, independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product


def cube(n):
    """All points of {-1,1}^n in input-index order (x_i = +1 iff bit i-1 set)."""
    return [tuple(1 if (k >> i) & 1 else -1 for i in range(n)) for k in range(1 << n)]


def values(f):
    return [1 if (f.table >> k) & 1 else -1 for k in range(1 << f.arity)]


def lookup(vals, x):
    return vals[sum(1 << i for i, v in enumerate(x) if v == 1)]


def influence(f, i):
    n = f.arity
    vals = values(f)
    flips = 0
    for x in cube(n):
        y = list(x)
        y[i - 1] = -y[i - 1]
        flips += lookup(vals, x) != lookup(vals, y)
    return Fraction(flips, 1 << n)


def total_influence(f):
    return sum((influence(f, i) for i in range(1, f.arity + 1)), Fraction(0))


def fourier(vals, n):
    """fhat(S) = E[f x_S] by direct summation."""
    pts = cube(n)
    out = []
    for s in range(1 << n):
        acc = 0
        for x, v in zip(pts, vals):
            chi = 1
            for i in range(n):
                if (s >> i) & 1:
                    chi *= x[i]
            acc += v * chi
        out.append(Fraction(acc, 1 << n))
    return out


def fm_feasible(A, r):
    """Fourier-Motzkin elimination for A q >= r over free q."""
    rows = [([Fraction(a) for a in row], Fraction(b)) for row, b in zip(A, r)]
    d = len(A[0])
    for k in range(d):
        pos, neg, zero = [], [], []
        for row, b in rows:
            (pos if row[k] > 0 else neg if row[k] < 0 else zero).append((row, b))
        combined = list(zero)
        for (rp, bp), (rn, bn) in product(pos, neg):
            cp, cn = -rn[k], rp[k]
            combined.append(([cp * x + cn * y for x, y in zip(rp, rn)], cp * bp + cn * bn))
        rows = combined
    return all(b <= 0 for _, b in rows)


def evaluate_poly(vec, n, x, edges=None):
    """Evaluate a coefficient vector [c, b_1..b_n, quadratic...] at x."""
    from itertools import combinations

    pairs = list(combinations(range(1, n + 1), 2)) if edges is None else edges
    total = vec[0] + sum(b * xi for b, xi in zip(vec[1 : n + 1], x))
    for a, (i, j) in zip(vec[n + 1 :], pairs):
        total += a * x[i - 1] * x[j - 1]
    return total


def family_table(n):
    """f_n evaluated point by point from the three-variable polynomial."""

    def p(x, y, z):
        return 2 * x * (1 - 7 * y + z) + 4 * y - 7 * y * y + 4 * y * z + 6 * z + 3 * z * z

    out = []
    for x in cube(n):
        v = p(x[0], sum(x[1 : n - 2]), x[n - 2] + x[n - 1])
        assert v != 0
        out.append(1 if v > 0 else -1)
    return out
