"""The odd-n family f_n = sgn(p(x_1, x_2 + ... + x_{n-2}, x_{n-1} + x_n)).

Coordinates split into three blocks: x_1, the middle block x_2..x_{n-2}
(m = n - 3 variables) and the tail pair x_{n-1}, x_n.  Every influence is
a sum over the classes (x_1, s, u) with s the middle sum and u the tail sum,
so exact values cost O(n) big-integer operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ptflab.core import BooleanFunction, sign_points
from ptflab.dyadic import Dyadic
from ptflab.qtf import igl

EXPLICIT_LIMIT = 25
TAIL_WEIGHT = {-2: 1, 0: 2, 2: 1}


def p(x: int, y: int, z: int) -> int:
    return 2 * x * (1 - 7 * y + z) + 4 * y - 7 * y * y + 4 * y * z + 6 * z + 3 * z * z


def _check_n(n: int) -> None:
    if n < 5 or n % 2 == 0:
        raise ValueError(f"the family is defined for odd n >= 5, got {n}")


def _sgn(x: int, s: int, u: int) -> int:
    v = p(x, s, u)
    if v == 0:
        raise AssertionError(f"p vanishes at x={x}, s={s}, u={u}")
    return 1 if v > 0 else -1


@dataclass(frozen=True)
class FamilyInstance:
    """Class-weighted description of f_n; ``sign[(x, s, u)]`` is f_n on that class."""

    n: int
    sign: dict

    @property
    def m(self) -> int:
        return self.n - 3

    def weight(self, x: int, s: int, u: int) -> Dyadic:
        """Probability of the class (x_1, s, u) under the uniform measure."""
        return Dyadic(math.comb(self.m, (self.m - s) // 2) * TAIL_WEIGHT[u], self.n)

    def middle_sums(self) -> range:
        return range(-self.m, self.m + 1, 2)


def family_instance(n: int) -> FamilyInstance:
    _check_n(n)
    m = n - 3
    sign = {
        (x, s, u): _sgn(x, s, u)
        for x in (-1, 1)
        for s in range(-m, m + 1, 2)
        for u in (-2, 0, 2)
    }
    return FamilyInstance(n, sign)


def build_family(n: int) -> BooleanFunction | FamilyInstance:
    """Explicit truth table for n <= 25, the class form beyond."""
    inst = family_instance(n)
    if n > EXPLICIT_LIMIT:
        return inst
    x = sign_points(n)
    s = x[:, 1 : n - 2].sum(axis=1)
    u = x[:, n - 2] + x[:, n - 1]
    vals = p(x[:, 0], s, u)
    if np.any(vals == 0):
        raise AssertionError("p vanishes on the cube")
    return BooleanFunction.from_array(n, np.where(vals > 0, 1, -1))


# influence by class counting ---------------------------------------------------


def influence_first(n: int) -> Dyadic:
    """Inf_1: classes whose sign flips with x_1."""
    inst = family_instance(n)
    m = inst.m
    edges = 0
    for s in inst.middle_sums():
        for u, w in TAIL_WEIGHT.items():
            if inst.sign[(1, s, u)] != inst.sign[(-1, s, u)]:
                edges += math.comb(m, (m - s) // 2) * w
    return Dyadic(edges, n - 1)


def influence_tail(n: int) -> Dyadic:
    """Inf_{n-1} = Inf_n: flipping one tail coordinate moves u by 2."""
    inst = family_instance(n)
    m = inst.m
    edges = 0
    for x in (-1, 1):
        for s in inst.middle_sums():
            c = math.comb(m, (m - s) // 2)
            # the other tail coordinate is -1 (u: -2 <-> 0) or +1 (u: 0 <-> 2)
            for lo in (-2, 0):
                if inst.sign[(x, s, lo)] != inst.sign[(x, s, lo + 2)]:
                    edges += c
    return Dyadic(edges, n - 1)


def influence_middle(n: int) -> Dyadic:
    """Sum of Inf_i over the middle block."""
    inst = family_instance(n)
    m = inst.m
    edges = 0
    for x in (-1, 1):
        for u, w in TAIL_WEIGHT.items():
            for k in range(m):
                # level k (k coordinates at -1) to level k+1: C(m,k)(m-k) edges
                s = m - 2 * k
                if inst.sign[(x, s, u)] != inst.sign[(x, s - 2, u)]:
                    edges += math.comb(m, k) * (m - k) * w
    return Dyadic(edges, n - 1)


def family_influence_fast(n: int) -> Dyadic:
    return influence_first(n) + 2 * influence_tail(n) + influence_middle(n)


# closed forms --------------------------------------------------------------------


def _binom(m: int, k: int) -> int:
    return math.comb(m, k) if 0 <= k <= m else 0


def _closed(m: int, coeffs) -> Dyadic:
    """2^{-m} sum_j C(m, m/2 - j) * coeffs[j]."""
    total = sum((_binom(m, m // 2 - j) * c for j, c in enumerate(coeffs)), Fraction(0))
    return Dyadic.from_value(total / (1 << m))


def _m_of(n: int) -> int:
    _check_n(n)
    return n - 3


def closed_first(n: int) -> Dyadic:
    return _closed(_m_of(n), [Fraction(3, 4), Fraction(5, 4), Fraction(1, 4)])


def closed_tail(n: int) -> Dyadic:
    return _closed(_m_of(n), [Fraction(3, 4), Fraction(3, 4), Fraction(1, 4)])


def closed_middle(n: int, last_denominator: int = 16) -> Dyadic | Fraction:
    """Middle-block sum with last term C(m, m/2-3)(m+6)/last_denominator.

    Only the denominator 16 matches the class count; 15 is accepted so the
    alternative can be evaluated and compared.  The result is returned as a
    Fraction when it is not dyadic.
    """
    m = _m_of(n)
    coeffs = [
        Fraction(11 * m, 16),
        Fraction(15 * m, 16) + Fraction(7, 8),
        Fraction(5 * m, 16) + Fraction(3, 4),
        Fraction(m + 6, last_denominator),
    ]
    total = sum((_binom(m, m // 2 - j) * c for j, c in enumerate(coeffs)), Fraction(0))
    value = total / (1 << m)
    try:
        return Dyadic.from_value(value)
    except ValueError:
        return value


def family_influence_closed(n: int) -> Dyadic:
    """The summed binomial expression for I[f_n] with m = n - 3."""
    m = _m_of(n)
    return _closed(
        m,
        [
            Fraction(11 * m, 16) + Fraction(9, 4),
            Fraction(15 * m, 16) + Fraction(29, 8),
            Fraction(5 * m, 16) + Fraction(3, 2),
            Fraction(m, 16) + Fraction(3, 8),
        ],
    )


def igl2_m_form(n: int) -> Dyadic:
    """I_GL(n, 2) written in m = n - 3: 2^{-m} C(m+3, m/2+1) (m+3)/4."""
    m = _m_of(n)
    return Dyadic.from_value(Fraction(math.comb(m + 3, m // 2 + 1) * (m + 3), 4 << m))


def ratio_formula(n: int) -> Fraction:
    return 1 + Fraction(7, 32 * n) - Fraction(3, 32 * (n - 2)) + Fraction(3, 16 * n * n)


@dataclass(frozen=True)
class FamilyRatio:
    n: int
    influence: Dyadic
    igl: Dyadic
    exact: Fraction
    formula: Fraction

    @property
    def residual(self) -> Fraction:
        """exact - formula; zero iff the displayed expression is an identity at n."""
        return self.exact - self.formula


def family_ratio(n: int) -> FamilyRatio:
    bound = igl(n, 2)
    if igl2_m_form(n) != bound:
        raise AssertionError(f"m-form of I_GL disagrees with the binomial sum at n={n}")
    value = family_influence_fast(n)
    return FamilyRatio(n, value, bound, value.as_fraction() / bound.as_fraction(), ratio_formula(n))
