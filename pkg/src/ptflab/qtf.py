"""Quadratic threshold functions: LP representability, symmetric PTFs, and the
conjectured maximum influence ``I_GL(n, d)``.

Coefficient vectors use the layout ``[c, b_1..b_n, a_12, a_13, ..., a_(n-1)n]``
with quadratic pairs in lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from ptflab.core import BooleanFunction, sign_points
from ptflab.dyadic import Dyadic
from ptflab.exactlp import Feasible, LinearProgram, solve_feasibility


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class QuadraticPolynomial:
    """c + sum_i b_i x_i + sum_{i<j} a_ij x_i x_j, multilinear."""

    arity: int
    constant: Fraction
    linear: tuple[Fraction, ...]
    quadratic: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.linear) != self.arity:
            raise ValueError("linear part must have one coefficient per variable")
        if len(self.quadratic) != self.arity * (self.arity - 1) // 2:
            raise ValueError("quadratic part must have one coefficient per pair")

    @classmethod
    def from_vector(cls, n: int, vec: Sequence) -> "QuadraticPolynomial":
        vec = [Fraction(v) for v in vec]
        if len(vec) != 1 + n + n * (n - 1) // 2:
            raise ValueError(f"coefficient vector for n={n} has wrong length {len(vec)}")
        return cls(n, vec[0], tuple(vec[1 : n + 1]), tuple(vec[n + 1 :]))

    @classmethod
    def from_terms(
        cls,
        n: int,
        constant=0,
        linear: Mapping[int, object] | None = None,
        quadratic: Mapping[tuple[int, int], object] | None = None,
    ) -> "QuadraticPolynomial":
        lin = [Fraction(0)] * n
        for i, v in (linear or {}).items():
            lin[i - 1] = Fraction(v)
        index = {p: k for k, p in enumerate(pairs(n))}
        quad = [Fraction(0)] * len(index)
        for (i, j), v in (quadratic or {}).items():
            quad[index[(min(i, j), max(i, j))]] = Fraction(v)
        return cls(n, Fraction(constant), tuple(lin), tuple(quad))

    def vector(self) -> tuple[Fraction, ...]:
        return (self.constant, *self.linear, *self.quadratic)

    def coefficient(self, i: int, j: int) -> Fraction:
        i, j = min(i, j), max(i, j)
        return self.quadratic[pairs(self.arity).index((i, j))]

    def evaluate(self, x: Sequence[int]) -> Fraction:
        total = self.constant
        for b, xi in zip(self.linear, x):
            total += b * xi
        for (i, j), a in zip(pairs(self.arity), self.quadratic):
            if a:
                total += a * x[i - 1] * x[j - 1]
        return total

    def integer_cleared(self) -> "QuadraticPolynomial":
        """Same sign pattern with coprime integer coefficients."""
        vec = self.vector()
        den = math.lcm(*(v.denominator for v in vec))
        ints = [int(v * den) for v in vec]
        g = math.gcd(*ints) or 1
        return QuadraticPolynomial.from_vector(self.arity, [v // g for v in ints])

    def integer_vector(self) -> list[int]:
        return [int(v) for v in self.integer_cleared().vector()]

    def sign_function(self) -> BooleanFunction:
        """The QTF sgn(q); raises if q vanishes on the cube."""
        n = self.arity
        vals = _monomial_matrix(n, None) @ np.array(
            [_as_object(v) for v in self.vector()], dtype=object
        )
        if any(v == 0 for v in vals):
            raise ValueError("polynomial vanishes at a cube point; sign undefined")
        return BooleanFunction.from_array(n, np.array([1 if v > 0 else -1 for v in vals]))


def _as_object(v: Fraction):
    return int(v) if v.denominator == 1 else v


@lru_cache(maxsize=64)
def _monomial_matrix(n: int, edges: tuple[tuple[int, int], ...] | None) -> np.ndarray:
    """Rows = cube points in index order, columns = monomials in vector layout.

    With ``edges`` given, only those quadratic columns are kept.
    """
    x = sign_points(n)
    cols = [np.ones(1 << n, dtype=np.int64)] + [x[:, i] for i in range(n)]
    for i, j in pairs(n) if edges is None else edges:
        cols.append(x[:, i - 1] * x[:, j - 1])
    return np.stack(cols, axis=1).astype(object)


def _edge_key(n: int, support) -> tuple[tuple[int, int], ...] | None:
    if support is None:
        return None
    if getattr(support, "n", n) != n:
        raise ValueError(f"support graph has {support.n} vertices but f has arity {n}")
    edges = support.edges if hasattr(support, "edges") else support
    return tuple(sorted((min(i, j), max(i, j)) for i, j in edges))


@dataclass(frozen=True)
class QTFVerdict:
    """Outcome of a representability test.

    ``polynomial`` is an integer-coefficient witness when representable;
    otherwise ``certificate`` is a Farkas vector indexed by cube points.
    """

    representable: bool
    polynomial: QuadraticPolynomial | None = None
    certificate: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.representable


def representability_lp(f: BooleanFunction, support=None) -> LinearProgram:
    """``f(x) * q(x) >= 1`` at every cube point, q over the allowed monomials."""
    n = f.arity
    edges = _edge_key(n, support)
    mono = _monomial_matrix(n, edges)
    signs = f.to_array().astype(np.int64)
    A = [[int(s * v) for v in row] for s, row in zip(signs, mono)]
    return LinearProgram.build(A, [1] * len(A))


def qtf_representable(f: BooleanFunction, support=None) -> QTFVerdict:
    """Decide whether f = sgn(q) for a quadratic q supported on ``support``.

    ``support`` is a graph (anything with ``n`` and ``edges``) or an edge
    iterable; ``None`` allows every pair.  An empty edge set tests for an LTF.
    """
    n = f.arity
    edges = _edge_key(n, support)
    outcome = solve_feasibility(representability_lp(f, support))
    if not isinstance(outcome, Feasible):
        return QTFVerdict(False, certificate=outcome.certificate)
    w = outcome.witness
    quadratic = {}
    for k, (i, j) in enumerate(pairs(n) if edges is None else edges):
        quadratic[(i, j)] = w[1 + n + k]
    poly = QuadraticPolynomial.from_terms(
        n, w[0], {i + 1: w[1 + i] for i in range(n)}, quadratic
    ).integer_cleared()
    if poly.sign_function() != f:
        raise AssertionError("LP witness does not reproduce the truth table")
    return QTFVerdict(True, polynomial=poly)


def support_of(q: QuadraticPolynomial):
    from ptflab.graphs import SupportGraph

    return SupportGraph(q.arity, [p for p, a in zip(pairs(q.arity), q.quadratic) if a != 0])


# symmetric PTFs and I_GL --------------------------------------------------


def symmetric_roots(n: int, d: int) -> list[int]:
    """Roots of p_d in the variable t = sum x_i, shifted by -1 for even n."""
    seq = [0]
    k = 2
    while len(seq) < d:
        seq.extend([k, -k])
        k += 2
    roots = seq[:d]
    return roots if n % 2 else [r - 1 for r in roots]


def symmetric_ptf(n: int, d: int) -> BooleanFunction:
    """sgn(p_d(sum x_i)) with sign alternating at the d+1 central sums."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    roots = symmetric_roots(n, d)
    signs = {}
    for t in range(-n, n + 1, 2):
        value = math.prod(t - r for r in roots)
        if value == 0:
            raise AssertionError(f"root coincides with attainable sum t={t}")
        signs[t] = 1 if value > 0 else -1
    return symmetric_function(n, signs)


def symmetric_function(n: int, signs: Mapping[int, int]) -> BooleanFunction:
    """Function of t = sum x_i given by its sign at each attainable t."""
    k = np.arange(1 << n, dtype=np.int64)
    ones = np.zeros_like(k)
    for j in range(n):
        ones += (k >> j) & 1
    t = 2 * ones - n
    lookup = np.zeros(2 * n + 1, dtype=np.int8)
    for tv, s in signs.items():
        lookup[tv + n] = s
    return BooleanFunction.from_array(n, lookup[t + n])


def igl(n: int, d: int) -> Dyadic:
    """I_GL(n, d) from the binomial sum: floor branch for even n, ceiling for odd n."""
    if d < 2:
        raise ValueError("I_GL is defined for degree d >= 2")
    if d > n:
        raise ValueError(f"degree {d} exceeds n={n}")
    total = 0
    for k in range(d):
        half = (n - k) // 2 if n % 2 == 0 else -(-(n - k) // 2)
        total += math.comb(n, half) * (n - half)
    return Dyadic(total, n - 1)


def igl2_closed(n: int) -> Dyadic:
    """Closed-form influence of the symmetric QTF.

    odd n:  n 2^(1-n) C(n, (n-1)/2)
    even n: n 2^(-n) [C(n, n/2) + 2 C(n-1, (n-2)/2)]
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if n % 2:
        return Dyadic(n * math.comb(n, (n - 1) // 2), n - 1)
    return Dyadic(n * (math.comb(n, n // 2) + 2 * math.comb(n - 1, (n - 2) // 2)), n)


def igl2_even_variant(n: int) -> Dyadic:
    """Variant even-n expression n 2^(-n) [2 C(n, (n-2)/2) + C(n, n/2)].

    Kept as a diagnostic: it overstates the symmetric influence for n >= 4
    (7/2 instead of 3 at n = 4).
    """
    if n < 2 or n % 2:
        raise ValueError("the even-n variant needs even n >= 2")
    return Dyadic(n * (2 * math.comb(n, (n - 2) // 2) + math.comb(n, n // 2)), n)


def igl2_misread(n: int) -> Dyadic:
    """The even-n closed form evaluated at any n, half-integers rounded up.

    At n = 5 this gives 55/16 = 3.4375, the value no symmetric QTF attains.
    """
    a = -(-n // 2)
    b = -(-(n - 2) // 2)
    return Dyadic(n * (math.comb(n, a) + 2 * math.comb(n - 1, b)), n)


def maj(n: int) -> BooleanFunction:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"majority needs odd n, got {n}")
    return symmetric_function(n, {t: 1 if t > 0 else -1 for t in range(-n, n + 1, 2)})


def maj_influence(n: int) -> Dyadic:
    """n 2^(1-n) C(n-1, floor((n-1)/2)), which is E|x_1 + ... + x_n|.

    For odd n this is I[MAJ_n]; for every n it is the largest influence of
    an n-variable LTF.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return Dyadic(n * math.comb(n - 1, (n - 1) // 2), n - 1)


def sign_pattern_qtf(n: int, signs: Mapping[int, int]) -> bool:
    """Is t -> signs[t] over attainable t realized by sgn(a t^2 + b t + c)?"""
    rows = []
    for t, s in signs.items():
        rows.append([s, s * t, s * t * t])
    return isinstance(solve_feasibility(LinearProgram.build(rows, [1] * len(rows))), Feasible)


def symmetric_qtf_functions(n: int) -> Iterable[BooleanFunction]:
    """Every function sgn(p(sum x_i)) with p univariate of degree <= 2."""
    ts = list(range(-n, n + 1, 2))
    for bits in range(1 << len(ts)):
        signs = {t: 1 if (bits >> j) & 1 else -1 for j, t in enumerate(ts)}
        if sign_pattern_qtf(n, signs):
            yield symmetric_function(n, signs)

