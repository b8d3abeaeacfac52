"""Exact Walsh-Hadamard (Fourier) spectra.

A coefficient is stored as an integer numerator over a shared power of two,
so ``coefficient(S) = numerators[S] / 2**exponent`` with ``S`` a bitmask
(bit ``i-1`` set iff coordinate ``i`` is in the set).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ptflab.core import BooleanFunction, TernaryFunction
from ptflab.dyadic import Dyadic

DENSE_LIMIT = 20


def _butterfly(values: Sequence[int], n: int, inverse: bool = False) -> list[int]:
    """Unnormalized transform; ``inverse`` evaluates sum_S c_S x_S instead."""
    sign = -1 if inverse else 1
    if n <= DENSE_LIMIT:
        a = np.array(values, dtype=np.int64)
        h = 1
        while h < a.size:
            a = a.reshape(-1, 2, h)
            lo, hi = a[:, 0, :].copy(), a[:, 1, :].copy()
            # x_i = -1 sits in the low half: character x_S flips sign there
            a[:, 0, :] = lo + sign * hi
            a[:, 1, :] = hi - sign * lo
            a = a.reshape(-1)
            h *= 2
        return a.tolist()
    a = list(values)
    h = 1
    while h < len(a):
        for start in range(0, len(a), 2 * h):
            for j in range(start, start + h):
                lo, hi = a[j], a[j + h]
                a[j], a[j + h] = lo + sign * hi, hi - sign * lo
        h *= 2
    return a


@dataclass(frozen=True)
class SpectralVector:
    arity: int
    numerators: tuple[int, ...]
    exponent: int

    def coefficient(self, mask: int) -> Dyadic:
        return Dyadic(self.numerators[mask], self.exponent)

    def nonzero(self) -> list[tuple[int, Dyadic]]:
        """Nonzero coefficients in ascending mask order."""
        return [(s, Dyadic(v, self.exponent)) for s, v in enumerate(self.numerators) if v]

    def as_mapping(self) -> dict[int, Dyadic]:
        return dict(self.nonzero())

    def squared_norm(self) -> Dyadic:
        return Dyadic(sum(v * v for v in self.numerators), 2 * self.exponent)

    def inverse(self) -> list[Dyadic]:
        """Function values f(x) = sum_S fhat(S) x_S in input-index order."""
        back = _butterfly(self.numerators, self.arity, inverse=True)
        return [Dyadic(v, self.exponent) for v in back]

    def to_function(self) -> BooleanFunction:
        vals = self.inverse()
        if any(v not in (1, -1) for v in vals):
            raise ValueError("spectrum is not that of a +-1 valued function")
        return BooleanFunction.from_array(self.arity, np.array([int(v) for v in vals]))


def wht_values(n: int, values: Sequence[int]) -> SpectralVector:
    """Spectrum of an integer-valued function given by its value table."""
    if len(values) != 1 << n:
        raise ValueError("value table must have 2^n entries")
    return SpectralVector(n, tuple(_butterfly(values, n)), n)


def wht(f: BooleanFunction | TernaryFunction) -> SpectralVector:
    """fhat(S) = E_x[f(x) x_S] for every S, by an exact butterfly."""
    if isinstance(f, TernaryFunction):
        return wht_values(f.arity, f.values)
    return wht_values(f.arity, f.to_array().tolist())


def influence_from_spectrum(spec: SpectralVector, i: int) -> Dyadic:
    """Sum of fhat(S)^2 over the sets S containing coordinate i."""
    if not 1 <= i <= spec.arity:
        raise ValueError(f"coordinate {i} out of range 1..{spec.arity}")
    bit = 1 << (i - 1)
    total = sum(v * v for s, v in enumerate(spec.numerators) if s & bit)
    return Dyadic(total, 2 * spec.exponent)


def total_influence_from_spectrum(spec: SpectralVector) -> Dyadic:
    total = sum(v * v * bin(s).count("1") for s, v in enumerate(spec.numerators))
    return Dyadic(total, 2 * spec.exponent)


def _drop_bit(s: int, i: int) -> int:
    low = s & ((1 << (i - 1)) - 1)
    return low | ((s >> i) << (i - 1))


def spectral_derivative(spec: SpectralVector, i: int) -> SpectralVector:
    """Spectrum of D_i f: the sets containing i, re-indexed without i."""
    if not 1 <= i <= spec.arity:
        raise ValueError(f"coordinate {i} out of range 1..{spec.arity}")
    bit = 1 << (i - 1)
    out = [0] * (1 << (spec.arity - 1))
    for s, v in enumerate(spec.numerators):
        if s & bit:
            out[_drop_bit(s, i)] = v
    return SpectralVector(spec.arity - 1, tuple(out), spec.exponent)


def spectral_expectation(spec: SpectralVector, i: int) -> SpectralVector:
    """Spectrum of E_i f: the sets avoiding i, re-indexed without i."""
    bit = 1 << (i - 1)
    out = [0] * (1 << (spec.arity - 1))
    for s, v in enumerate(spec.numerators):
        if not s & bit:
            out[_drop_bit(s, i)] = v
    return SpectralVector(spec.arity - 1, tuple(out), spec.exponent)


def same_spectrum(a: SpectralVector, b: SpectralVector) -> bool:
    """Exact equality of two spectra regardless of their stored scale."""
    if a.arity != b.arity:
        return False
    return all(
        Dyadic(x, a.exponent) == Dyadic(y, b.exponent)
        for x, y in zip(a.numerators, b.numerators)
    )


def format_spectrum(spec: SpectralVector) -> list[str]:
    """Lines ``mask numerator/2^k`` for nonzero coefficients, mask in hex."""
    return [f"{s:x} {c.power_form()}" for s, c in spec.nonzero()]
