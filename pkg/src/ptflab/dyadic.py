"""Exact dyadic rationals ``numerator / 2**exponent``.

Every probability over the uniform cube is dyadic, so influences and Fourier
coefficients never need a general fraction.  Mixed arithmetic with
:class:`fractions.Fraction` falls back to ``Fraction``.
"""

from __future__ import annotations

import numbers
from fractions import Fraction


class Dyadic(numbers.Rational):
    """Immutable value ``numerator / 2**exponent`` kept in canonical form.

    Canonical form means the numerator is odd, or the value is zero with
    exponent 0.
    """

    __slots__ = ("_num", "_exp")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        else:
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        self._num = numerator
        self._exp = exponent

    @classmethod
    def from_value(cls, value) -> "Dyadic":
        """Convert an int, Dyadic or Fraction with power-of-two denominator."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        return cls.from_value(Fraction(text.strip()))

    @property
    def numerator(self) -> int:
        return self._num

    @property
    def denominator(self) -> int:
        return 1 << self._exp

    @property
    def exponent(self) -> int:
        return self._exp

    def as_fraction(self) -> Fraction:
        return Fraction(self._num, 1 << self._exp)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, numbers.Rational):
                return self.as_fraction() + other
            return NotImplemented
        k = max(self._exp, o._exp)
        return Dyadic((self._num << (k - self._exp)) + (o._num << (k - o._exp)), k)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self._num, self._exp)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, numbers.Rational):
                return self.as_fraction() - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, numbers.Rational):
                return self.as_fraction() * other
            return NotImplemented
        return Dyadic(self._num * o._num, self._exp + o._exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division stays dyadic only for powers of two; otherwise return a Fraction
        o = self._coerce(other)
        if o is not None and o._num != 0 and abs(o._num) & (abs(o._num) - 1) == 0:
            sign = -1 if o._num < 0 else 1
            shift = abs(o._num).bit_length() - 1
            return Dyadic(sign * self._num, self._exp + shift - o._exp)
        return self.as_fraction() / Fraction(other)

    def __rtruediv__(self, other):
        return Fraction(other) / self.as_fraction()

    def __floordiv__(self, other):
        return self.as_fraction() // other

    def __rfloordiv__(self, other):
        return other // self.as_fraction()

    def __mod__(self, other):
        return self.as_fraction() % other

    def __rmod__(self, other):
        return other % self.as_fraction()

    def __pow__(self, power):
        if isinstance(power, int) and power >= 0:
            return Dyadic(self._num**power, self._exp * power)
        return self.as_fraction() ** power

    def __rpow__(self, base):
        return base ** self.as_fraction()

    def __abs__(self):
        return Dyadic(abs(self._num), self._exp)

    def __trunc__(self):
        return int(self.as_fraction())

    def __floor__(self):
        return self._num >> self._exp

    def __ceil__(self):
        return -((-self._num) >> self._exp)

    def __round__(self, ndigits=None):
        return round(self.as_fraction(), ndigits)

    # comparison ---------------------------------------------------------

    def _cmp_key(self, other):
        if isinstance(other, Dyadic):
            return self.as_fraction(), other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return self.as_fraction(), other
        if isinstance(other, float):
            return self.as_fraction(), Fraction(other)
        return None

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self._num == other._num and self._exp == other._exp
        pair = self._cmp_key(other)
        if pair is None:
            return NotImplemented
        return pair[0] == pair[1]

    def __lt__(self, other):
        pair = self._cmp_key(other)
        return NotImplemented if pair is None else pair[0] < pair[1]

    def __le__(self, other):
        pair = self._cmp_key(other)
        return NotImplemented if pair is None else pair[0] <= pair[1]

    def __gt__(self, other):
        pair = self._cmp_key(other)
        return NotImplemented if pair is None else pair[0] > pair[1]

    def __ge__(self, other):
        pair = self._cmp_key(other)
        return NotImplemented if pair is None else pair[0] >= pair[1]

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self._num != 0

    def __float__(self):
        return float(self.as_fraction())

    def __str__(self):
        if self._exp == 0:
            return str(self._num)
        return f"{self._num}/{1 << self._exp}"

    def __repr__(self):
        return f"Dyadic({self._num}, {self._exp})"

    def power_form(self) -> str:
        """Render as ``numerator/2^k``."""
        return f"{self._num}/2^{self._exp}"
