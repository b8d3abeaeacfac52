"""Boolean functions on {-1,1}^n stored as packed truth tables.

Input index ``k`` encodes the point ``x`` with ``x_i = +1`` iff bit ``i-1``
of ``k`` is set.  Bit ``k`` of the table is 1 iff ``f = +1`` at that point.
Coordinates are 1-based throughout the public API.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from ptflab.dyadic import Dyadic

MAX_ARITY = 32


def _check_coordinate(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range 1..{n}")


@lru_cache(maxsize=None)
def coordinate_mask(n: int, i: int) -> int:
    """Bits of a 2^n table at the inputs where ``x_i = -1``."""
    s = 1 << (i - 1)
    size = 1 << n
    block = (1 << s) - 1
    # repeat the block of s ones every 2s bits
    repeat = ((1 << size) - 1) // ((1 << (2 * s)) - 1)
    return block * repeat


def point(k: int, n: int) -> tuple[int, ...]:
    """The input x in {-1,1}^n with index k."""
    return tuple(1 if (k >> j) & 1 else -1 for j in range(n))


def index_of(x: Sequence[int]) -> int:
    k = 0
    for j, v in enumerate(x):
        if v == 1:
            k |= 1 << j
        elif v != -1:
            raise ValueError(f"coordinate values must be +-1, got {v}")
    return k


def sign_points(n: int) -> np.ndarray:
    """All 2^n inputs as a (2^n, n) int64 array of +-1, rows in index order."""
    k = np.arange(1 << n, dtype=np.int64)
    return np.stack([((k >> j) & 1) * 2 - 1 for j in range(n)], axis=1)


@dataclass(frozen=True)
class BooleanFunction:
    """A function {-1,1}^n -> {-1,1} held as a packed truth table."""

    arity: int
    table: int

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ARITY:
            raise ValueError(f"arity must be in 1..{MAX_ARITY}, got {self.arity}")
        if self.table < 0 or self.table >> (1 << self.arity):
            raise ValueError(f"table does not fit in 2^{self.arity} bits")

    # construction -------------------------------------------------------

    @classmethod
    def from_hex(cls, text: str, n: int) -> "BooleanFunction":
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        width = hex_width(n)
        if len(text) != width:
            raise ValueError(
                f"table for n={n} needs exactly {width} hex digits, got {len(text)}"
            )
        try:
            table = int(text, 16)
        except ValueError:
            raise ValueError(f"malformed hex table {text!r}") from None
        return cls(n, table)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        table = 0
        for k in range(1 << n):
            if fn(point(k, n)) == 1:
                table |= 1 << k
        return cls(n, table)

    @classmethod
    def from_array(cls, n: int, values: np.ndarray) -> "BooleanFunction":
        """Build from a length-2^n array; entries > 0 (or True) mean +1."""
        bits = np.asarray(values).reshape(-1) > 0
        if bits.size != 1 << n:
            raise ValueError(f"expected {1 << n} values, got {bits.size}")
        packed = np.packbits(bits, bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def constant(cls, n: int, value: int = 1) -> "BooleanFunction":
        return cls(n, (1 << (1 << n)) - 1 if value == 1 else 0)

    @classmethod
    def dictator(cls, n: int, i: int) -> "BooleanFunction":
        _check_coordinate(n, i)
        return cls(n, ((1 << (1 << n)) - 1) ^ coordinate_mask(n, i))

    @classmethod
    def parity(cls, n: int) -> "BooleanFunction":
        """f(x) = x_1 x_2 ... x_n."""
        table = 0
        for k in range(1 << n):
            # product is +1 iff the number of -1 entries is even
            if (n - bin(k).count("1")) % 2 == 0:
                table |= 1 << k
        return cls(n, table)

    @classmethod
    def random(cls, n: int, rng: random.Random | None = None) -> "BooleanFunction":
        rng = rng or random.Random()
        return cls(n, rng.getrandbits(1 << n))

    # views --------------------------------------------------------------

    @property
    def size(self) -> int:
        return 1 << self.arity

    def to_hex(self) -> str:
        return format(self.table, f"0{hex_width(self.arity)}x")

    def to_array(self) -> np.ndarray:
        """Length-2^n int8 array of +-1 values."""
        nbytes = max(1, self.size // 8)
        raw = np.frombuffer(self.table.to_bytes(nbytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[: self.size]
        return bits.astype(np.int8) * 2 - 1

    def evaluate(self, k: int) -> int:
        if not 0 <= k < self.size:
            raise IndexError(f"input index {k} out of range for n={self.arity}")
        return 1 if (self.table >> k) & 1 else -1

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.arity:
            raise ValueError(f"expected {self.arity} coordinates, got {len(x)}")
        return self.evaluate(index_of(x))

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(self.arity, self.table ^ ((1 << self.size) - 1))

    # analysis -----------------------------------------------------------

    def sensitive_edges(self, i: int) -> int:
        """Number of hypercube edges in direction i whose endpoints disagree."""
        _check_coordinate(self.arity, i)
        s = 1 << (i - 1)
        return ((self.table ^ (self.table >> s)) & coordinate_mask(self.arity, i)).bit_count()

    def influence(self, i: int) -> Dyadic:
        """Pr_x[f(x) != f(x with coordinate i flipped)]."""
        return Dyadic(self.sensitive_edges(i), self.arity - 1)

    def influences(self) -> list[Dyadic]:
        return [self.influence(i) for i in range(1, self.arity + 1)]

    def total_influence(self) -> Dyadic:
        edges = sum(self.sensitive_edges(i) for i in range(1, self.arity + 1))
        return Dyadic(edges, self.arity - 1)

    def _halves(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        _check_coordinate(self.arity, i)
        vals = self.to_array().astype(np.int64)
        s = 1 << (i - 1)
        blocks = vals.reshape(-1, 2, s)
        # drop coordinate i; the remaining coordinates keep ascending order
        return blocks[:, 1, :].reshape(-1), blocks[:, 0, :].reshape(-1)

    def derivative(self, i: int) -> "TernaryFunction":
        """D_i f(x) = (f(x^{i->1}) - f(x^{i->-1})) / 2 on the other n-1 coordinates."""
        hi, lo = self._halves(i)
        return TernaryFunction(self.arity - 1, tuple(((hi - lo) // 2).tolist()))

    def expectation(self, i: int) -> "TernaryFunction":
        """E_i f(x) = (f(x^{i->1}) + f(x^{i->-1})) / 2 on the other n-1 coordinates."""
        hi, lo = self._halves(i)
        return TernaryFunction(self.arity - 1, tuple(((hi + lo) // 2).tolist()))

    def restrict(self, keep: Iterable[int], fixed: Sequence[int]) -> "BooleanFunction":
        """Restriction to the coordinates ``keep``.

        ``fixed`` assigns +-1 values to the complementary coordinates in
        ascending order.  The result's coordinates follow ascending order of
        ``keep``.
        """
        n = self.arity
        keep = sorted(set(keep))
        for i in keep:
            _check_coordinate(n, i)
        rest = [i for i in range(1, n + 1) if i not in keep]
        if len(fixed) != len(rest):
            raise ValueError(
                f"restriction fixes {len(rest)} coordinates but {len(fixed)} values given"
            )
        if not keep:
            raise ValueError("restriction must keep at least one coordinate")
        base = 0
        for i, v in zip(rest, fixed):
            if v not in (1, -1):
                raise ValueError(f"fixed values must be +-1, got {v}")
            if v == 1:
                base |= 1 << (i - 1)
        sub = np.arange(1 << len(keep), dtype=np.int64)
        idx = np.full_like(sub, base)
        for j, i in enumerate(keep):
            idx |= ((sub >> j) & 1) << (i - 1)
        return BooleanFunction.from_array(len(keep), self.to_array()[idx])


@dataclass(frozen=True)
class TernaryFunction:
    """A {-1,0,1}-valued function on {-1,1}^arity, values in input-index order."""

    arity: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.arity:
            raise ValueError("values length must be 2^arity")

    def evaluate(self, k: int) -> int:
        return self.values[k]

    def mean_abs(self) -> Dyadic:
        return Dyadic(sum(abs(v) for v in self.values), self.arity)


def hex_width(n: int) -> int:
    """Number of hex digits in a serialized table: ceil(2^n / 4)."""
    return max(1, -(-(1 << n) // 4))


def drop_coordinate(k: int, i: int) -> int:
    """Index on n-1 coordinates obtained by deleting coordinate i from index k."""
    low = k & ((1 << (i - 1)) - 1)
    return low | ((k >> i) << (i - 1))


def evaluate(f: BooleanFunction, k: int) -> int:
    return f.evaluate(k)


def influence(f: BooleanFunction, i: int) -> Dyadic:
    return f.influence(i)


def total_influence(f: BooleanFunction) -> Dyadic:
    return f.total_influence()


def discrete_derivative(f: BooleanFunction, i: int) -> TernaryFunction:
    return f.derivative(i)


def expectation_operator(f: BooleanFunction, i: int) -> TernaryFunction:
    return f.expectation(i)


def restrict(f: BooleanFunction, keep: Iterable[int], fixed: Sequence[int]) -> BooleanFunction:
    return f.restrict(keep, fixed)
