"""Exhaustive and screened searches over truth tables.

Tables are handled in bulk as ``uint64`` numpy arrays (n <= 5, so a table
fits in one word).  Every search screens cheaply first and only runs the
exact LP on survivors:

* influence screen: exact boundary-edge count per table;
* restriction screen: a QTF restricted to any 3 coordinates (or to 2
  coordinates that are not adjacent in the support) is never +-parity there;
* symmetry screen: only the least table in each orbit of a symmetry group
  that preserves influence and representability is LP-tested.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

import numpy as np

from ptflab.core import BooleanFunction, index_of, point
from ptflab.dyadic import Dyadic
from ptflab.graphs import SupportGraph, graph_classes
from ptflab.qtf import QuadraticPolynomial, igl, qtf_representable

CHUNK = 1 << 20

# Reference maxima for seven 4-vertex supports, as (edges, I[G]).
REFERENCE_TABLE = [
    ([(1, 2), (3, 4)], Fraction(2)),
    ([(1, 2), (1, 4), (2, 3), (3, 4)], Fraction(2)),
    ([(1, 2), (1, 3), (2, 3), (3, 4)], Fraction(5, 2)),
    ([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], Fraction(3)),
    ([(1, 2), (2, 3), (3, 4)], Fraction(2)),
    ([(1, 4), (2, 4), (3, 4)], Fraction(5, 2)),
    ([(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], Fraction(5, 2)),
]


# bulk table operations -----------------------------------------------------


@lru_cache(maxsize=None)
def _masks(n: int) -> tuple[tuple[int, np.uint64], ...]:
    out = []
    for i in range(n):
        m = 0
        for k in range(1 << n):
            if not (k >> i) & 1:
                m |= 1 << k
        out.append((1 << i, np.uint64(m)))
    return tuple(out)


def edge_counts(tables: np.ndarray, n: int) -> np.ndarray:
    """Sensitive hypercube edges per table; total influence is count / 2^(n-1)."""
    total = np.zeros(tables.shape, dtype=np.int64)
    for s, m in _masks(n):
        total += np.bitwise_count((tables ^ (tables >> np.uint64(s))) & m)
    return total


def parity_restriction(tables: np.ndarray, n: int, subset: Sequence[int]) -> np.ndarray:
    """True where some restriction to the 0-based coordinates ``subset`` is +-parity."""
    masks = _masks(n)
    v = np.full(tables.shape, np.uint64((1 << (1 << n)) - 1), dtype=np.uint64)
    for i in subset:
        s, m = masks[i]
        sh = np.uint64(s)
        diff = (tables ^ (tables >> sh)) & m
        v &= diff | (diff << sh)
    base = np.uint64((1 << (1 << n)) - 1)
    for i in subset:
        s, m = masks[i]
        v &= v >> np.uint64(s)
        base &= m
    return (v & base) != 0


def restriction_screen(tables: np.ndarray, n: int, non_edges: Iterable[tuple[int, int]]) -> np.ndarray:
    """Mask of tables passing the necessary restriction conditions for a QTF."""
    keep = np.ones(tables.shape, dtype=bool)
    for trio in combinations(range(n), 3):
        keep &= ~parity_restriction(tables, n, trio)
    for i, j in non_edges:
        keep &= ~parity_restriction(tables, n, (i - 1, j - 1))
    return keep


class BitPermutation:
    """Vectorized ``out bit c = in bit source[c]`` with optional complement."""

    def __init__(self, source: Sequence[int], complement: bool = False):
        nbits = len(source)
        self.nbits = nbits
        self.complement = complement
        target = [0] * nbits
        for c, p in enumerate(source):
            target[p] = c
        self.luts = []
        for byte in range((nbits + 7) // 8):
            lut = np.zeros(256, dtype=np.uint64)
            for v in range(256):
                acc = 0
                for b in range(8):
                    p = byte * 8 + b
                    if p < nbits and (v >> b) & 1:
                        acc |= 1 << target[p]
                lut[v] = acc
            self.luts.append(lut)
        self.full = np.uint64((1 << nbits) - 1)

    def apply(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros(arr.shape, dtype=np.uint64)
        for byte, lut in enumerate(self.luts):
            out |= lut[(arr >> np.uint64(8 * byte)) & np.uint64(255)]
        return out ^ self.full if self.complement else out


def input_transforms(n: int, perms: Iterable[Sequence[int]]) -> list[BitPermutation]:
    """Table maps f -> +-f(T x), T permuting (by ``perms``) and negating coordinates."""
    group = []
    for perm in perms:
        for neg in range(1 << n):
            source = []
            for k in range(1 << n):
                x = point(k, n)
                y = [x[perm[i] - 1] * (-1 if (neg >> i) & 1 else 1) for i in range(n)]
                source.append(index_of(y))
            for comp in (False, True):
                group.append(BitPermutation(source, comp))
    return group


def canonical_mask(arr: np.ndarray, group: Sequence[BitPermutation]) -> np.ndarray:
    """True where the entry is the least element of its orbit."""
    best = arr.copy()
    for g in group:
        np.minimum(best, g.apply(arr), out=best)
    return best == arr


def orbit(value: int, group: Sequence[BitPermutation]) -> list[int]:
    arr = np.array([value], dtype=np.uint64)
    return sorted({int(g.apply(arr)[0]) for g in group})


# reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Confirmed:
    table_hex: str
    n: int
    influence: Dyadic
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "table_hex": self.table_hex,
            "n": self.n,
            "influence": str(self.influence),
            "witness": list(self.witness),
        }


@dataclass
class SearchReport:
    space: str
    scanned: int
    threshold: Dyadic
    survivors: int
    after_restriction: int = 0
    lp_tests: int = 0
    confirmed: list[Confirmed] = field(default_factory=list)
    elapsed: float = 0.0
    workers: int = 1

    def summary(self) -> dict:
        return {
            "space": self.space,
            "scanned": self.scanned,
            "threshold": str(self.threshold),
            "survivors": self.survivors,
            "after_restriction": self.after_restriction,
            "lp_tests": self.lp_tests,
            "confirmed": len(self.confirmed),
            "workers": self.workers,
        }


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def resolve_workers(workers: int | None) -> int:
    env = os.environ.get("PTFLAB_WORKERS")
    if env:
        value = int(env)
        if value < 1:
            raise ValueError("PTFLAB_WORKERS must be a positive integer")
        return value
    return max(1, workers or 1)


def _confirm(args) -> Confirmed | None:
    n, table, edges = args
    f = BooleanFunction(n, table)
    verdict = qtf_representable(f, None if edges is None else edges)
    if not verdict:
        return None
    poly = verdict.polynomial
    if poly.sign_function() != f:
        raise AssertionError("witness sign pattern differs from the table")
    return Confirmed(f.to_hex(), n, f.total_influence(), tuple(poly.integer_vector()))


# small-n conjecture check ------------------------------------------------------


def verify_conjecture_small(n: int, workers: int = 1) -> SearchReport:
    """Every n-variable function with influence above I_GL(n, 2), LP-tested."""
    if not 2 <= n <= 4:
        raise ValueError("exhaustive verification supports 2 <= n <= 4")
    start = time.perf_counter()
    limit = igl(n, 2)
    tables = np.arange(1 << (1 << n), dtype=np.uint64)
    counts = edge_counts(tables, n)
    # influence = edges / 2^(n-1) > limit
    over = tables[counts > int(limit.as_fraction() * (1 << (n - 1)))]
    kept = over[restriction_screen(over, n, [])] if n >= 3 else over
    results = _map(_confirm, [(n, int(t), None) for t in kept], workers)
    report = SearchReport(
        space=f"all functions on {n} variables",
        scanned=int(tables.size),
        threshold=limit,
        survivors=int(over.size),
        after_restriction=int(kept.size),
        lp_tests=int(kept.size),
        confirmed=[r for r in results if r is not None],
        workers=workers,
    )
    report.elapsed = time.perf_counter() - start
    return report


# maximum influence per support ----------------------------------------------------


@dataclass(frozen=True)
class SupportMaximum:
    graph: SupportGraph
    influence: Dyadic
    witness: BooleanFunction
    polynomial: QuadraticPolynomial
    lp_tests: int


def max_qtf_influence(g: SupportGraph) -> SupportMaximum:
    """I[G] for a graph on at most 4 vertices, with a maximizing function."""
    n = g.n
    if not 1 <= n <= 4:
        raise ValueError("exhaustive support maximum needs 1 <= n <= 4")
    tables = np.arange(1 << (1 << n), dtype=np.uint64)
    non_edges = [p for p in combinations(range(1, n + 1), 2) if p not in g.edges]
    tables = tables[restriction_screen(tables, n, non_edges)]
    group = input_transforms(n, g.automorphisms())
    tables = tables[canonical_mask(tables, group)]
    counts = edge_counts(tables, n)
    tested = 0
    for level in sorted(set(counts.tolist()), reverse=True):
        for t in sorted(int(v) for v in tables[counts == level]):
            f = BooleanFunction(n, t)
            tested += 1
            verdict = qtf_representable(f, g)
            if verdict:
                return SupportMaximum(g, f.total_influence(), f, verdict.polynomial, tested)
    raise AssertionError("constant functions are always representable")


@dataclass(frozen=True)
class Table1Row:
    graph: SupportGraph
    influence: Dyadic
    witness_hex: str
    witness: tuple[int, ...]
    reference: Fraction | None

    @property
    def matches_reference(self) -> bool | None:
        return None if self.reference is None else self.influence == self.reference

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "influence": str(self.influence),
            "witness_hex": self.witness_hex,
            "witness": list(self.witness),
            "reference": None if self.reference is None else str(self.reference),
        }


def reference_value(g: SupportGraph) -> Fraction | None:
    for edges, value in REFERENCE_TABLE:
        if g.isomorphic(SupportGraph(g.n, edges)):
            return value
    return None


def _table1_row(g: SupportGraph) -> Table1Row:
    best = max_qtf_influence(g)
    return Table1Row(
        g,
        best.influence,
        best.witness.to_hex(),
        tuple(best.polynomial.integer_vector()),
        reference_value(g) if g.n == 4 else None,
    )


def max_influence_per_support(n: int = 4, workers: int = 1) -> list[Table1Row]:
    """I[G] for every isomorphism class of n-vertex graphs."""
    if not 1 <= n <= 4:
        raise ValueError("support maxima are computed for n <= 4")
    return _map(_table1_row, graph_classes(n), workers)


# the n = 5 hunt -------------------------------------------------------------------


class SymmetryReducedIndex:
    """Functions on n variables symmetric in the last two coordinates.

    Class ``8j + b`` (for n = 5) holds the inputs whose first n-2
    coordinates have index ``b`` and whose last two coordinates contain
    ``j`` entries equal to +1, so ``x_{n-1} + x_n = 2j - 2``.  Bit c of a
    reduced index is the function value (1 = +1) on class c.
    """

    def __init__(self, n: int = 5):
        if n < 3:
            raise ValueError("need n >= 3")
        self.n = n
        head = 1 << (n - 2)
        self.head = head
        self.num_classes = 3 * head
        self.class_masks = [0] * self.num_classes
        for k in range(1 << n):
            self.class_masks[self.class_of(k)] |= 1 << k
        if n <= 6:
            self._expand = BitPermutationExpand(self.class_masks)

    def class_of(self, k: int) -> int:
        b = k & (self.head - 1)
        j = ((k >> (self.n - 2)) & 1) + ((k >> (self.n - 1)) & 1)
        return j * self.head + b

    @property
    def size(self) -> int:
        return 1 << self.num_classes

    def expand(self, index: int) -> BooleanFunction:
        table = 0
        for c in range(self.num_classes):
            if (index >> c) & 1:
                table |= self.class_masks[c]
        return BooleanFunction(self.n, table)

    def expand_array(self, indices: np.ndarray) -> np.ndarray:
        return self._expand.apply(indices)

    def reduce(self, f: BooleanFunction) -> int:
        """Index of a function symmetric in the last two coordinates."""
        if f.arity != self.n:
            raise ValueError("arity mismatch")
        index = 0
        for c, m in enumerate(self.class_masks):
            bits = f.table & m
            if bits == m:
                index |= 1 << c
            elif bits:
                raise ValueError("function is not symmetric in the last two coordinates")
        return index

    def group(self) -> list[BitPermutation]:
        """Class permutations from permuting/negating the head coordinates,
        negating both tail coordinates, and negating the output."""
        h = self.n - 2
        out = []
        for perm in permutations(range(h)):
            for neg in range(1 << h):
                for flip in (False, True):
                    source = []
                    for c in range(self.num_classes):
                        j, b = divmod(c, self.head)
                        x = [1 if (b >> i) & 1 else -1 for i in range(h)]
                        y = [x[perm[i]] * (-1 if (neg >> i) & 1 else 1) for i in range(h)]
                        bb = sum(1 << i for i in range(h) if y[i] == 1)
                        jj = 2 - j if flip else j
                        source.append(jj * self.head + bb)
                    for comp in (False, True):
                        out.append(BitPermutation(source, comp))
        return out


class BitPermutationExpand:
    """Vectorized map from class bits to full truth tables."""

    def __init__(self, class_masks: Sequence[int]):
        self.luts = []
        for byte in range((len(class_masks) + 7) // 8):
            lut = np.zeros(256, dtype=np.uint64)
            for v in range(256):
                acc = 0
                for b in range(8):
                    c = byte * 8 + b
                    if c < len(class_masks) and (v >> b) & 1:
                        acc |= class_masks[c]
                lut[v] = acc
            self.luts.append(lut)

    def apply(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros(arr.shape, dtype=np.uint64)
        for byte, lut in enumerate(self.luts):
            out |= lut[(arr >> np.uint64(8 * byte)) & np.uint64(255)]
        return out


@lru_cache(maxsize=4)
def _hunt_setup(n: int):
    index = SymmetryReducedIndex(n)
    return index, index.group()


def _screen_chunk(args) -> tuple[int, int, list[int]]:
    n, start, stop, threshold_edges = args
    index, group = _hunt_setup(n)
    idx = np.arange(start, stop, dtype=np.uint64)
    tables = index.expand_array(idx)
    hot = edge_counts(tables, n) > threshold_edges
    idx, tables = idx[hot], tables[hot]
    survivors = int(idx.size)
    ok = restriction_screen(tables, n, [])
    idx = idx[ok]
    after = int(idx.size)
    reps = idx[canonical_mask(idx, group)]
    return survivors, after, [int(v) for v in reps]


def hunt_n5(threshold=Fraction(25, 8), workers: int = 1, n: int = 5,
            progress: Callable[[str], None] | None = None) -> SearchReport:
    """All QTFs symmetric in the last two coordinates with influence > threshold."""
    start_time = time.perf_counter()
    threshold = Dyadic.from_value(threshold)
    index, group = _hunt_setup(n)
    # influence = edges / 2^(n-1) > threshold  <=>  edges > threshold * 2^(n-1)
    scaled = threshold.as_fraction() * (1 << (n - 1))
    threshold_edges = math.floor(scaled)
    size = index.size
    jobs = [(n, s, min(s + CHUNK, size), threshold_edges) for s in range(0, size, CHUNK)]
    screened = _map(_screen_chunk, jobs, workers)
    survivors = sum(s for s, _, _ in screened)
    after = sum(a for _, a, _ in screened)
    reps = [r for _, _, rs in screened for r in rs]
    if progress:
        progress(f"screened {size} tables: {survivors} above threshold, "
                 f"{after} pass restrictions, {len(reps)} orbit representatives")
    rep_results = _map(_confirm, [(n, index.expand(r).table, None) for r in reps], workers)
    lp_tests = len(reps)
    members = []
    for r, res in zip(reps, rep_results):
        if res is not None:
            members.extend(orbit(r, group))
    if progress:
        progress(f"{sum(1 for r in rep_results if r)} representable orbits, "
                 f"{len(members)} member tables to confirm")
    confirmed = _map(_confirm, [(n, index.expand(m).table, None) for m in members], workers)
    lp_tests += len(members)
    if any(c is None for c in confirmed):
        raise AssertionError("orbit member of a representable table failed the LP")
    confirmed = sorted(confirmed, key=lambda c: int(c.table_hex, 16))
    report = SearchReport(
        space=f"functions on {n} variables symmetric in the last two coordinates",
        scanned=size,
        threshold=threshold,
        survivors=survivors,
        after_restriction=after,
        lp_tests=lp_tests,
        confirmed=confirmed,
        workers=workers,
    )
    report.elapsed = time.perf_counter() - start_time
    return report
