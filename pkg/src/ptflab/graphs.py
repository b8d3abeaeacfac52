"""Support graphs, (fractional) chromatic numbers and the graph-based
influence bounds for quadratic threshold functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

import networkx as nx

from ptflab.exactlp import LinearProgram, Optimal, solve_min
from ptflab.qtf import maj_influence

CHROMATIC_LIMIT = 16
FRACTIONAL_LIMIT = 20
ISOMORPHISM_LIMIT = 6


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SupportGraph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i}, {j}) outside vertices 1..{n}")
            norm.add((min(i, j), max(i, j)))
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    # constructors -------------------------------------------------------

    @classmethod
    def edgeless(cls, n: int) -> "SupportGraph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "SupportGraph":
        return cls(n, combinations(range(1, n + 1), 2))

    @classmethod
    def cycle(cls, n: int) -> "SupportGraph":
        return cls(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def path(cls, n: int) -> "SupportGraph":
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def star(cls, n: int) -> "SupportGraph":
        """K_{1,n-1} with centre n."""
        return cls(n, [(i, n) for i in range(1, n)])

    @classmethod
    def parse(cls, text: str) -> "SupportGraph":
        """Read ``n m`` followed by m lines ``i j`` with 1 <= i < j <= n."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise GraphFormatError("empty graph file")
        try:
            n, m = (int(v) for v in lines[0].split())
        except ValueError:
            raise GraphFormatError(f"bad header line {lines[0]!r}; expected 'n m'") from None
        if len(lines) - 1 != m:
            raise GraphFormatError(f"header announces {m} edges but file has {len(lines) - 1}")
        edges = []
        for ln in lines[1:]:
            try:
                i, j = (int(v) for v in ln.split())
            except ValueError:
                raise GraphFormatError(f"bad edge line {ln!r}") from None
            if not 1 <= i < j <= n:
                raise GraphFormatError(f"edge {i} {j} violates 1 <= i < j <= {n}")
            edges.append((i, j))
        if len(set(edges)) != len(edges):
            raise GraphFormatError("duplicate edge")
        return cls(n, edges)

    @classmethod
    def read(cls, path) -> "SupportGraph":
        with open(path) as fh:
            return cls.parse(fh.read())

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    # structure ----------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbours(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def is_edgeless(self) -> bool:
        return not self.edges

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return not any(i in vs and j in vs for i, j in self.edges)

    def induced(self, vertices: Iterable[int]) -> "SupportGraph":
        """Induced subgraph relabelled to 1..k in ascending vertex order."""
        vs = sorted(set(vertices))
        label = {v: k + 1 for k, v in enumerate(vs)}
        return SupportGraph(
            len(vs), [(label[i], label[j]) for i, j in self.edges if i in label and j in label]
        )

    def remove(self, vertices: Iterable[int]) -> "SupportGraph":
        gone = set(vertices)
        return self.induced(v for v in range(1, self.n + 1) if v not in gone)

    def is_subgraph_of(self, other: "SupportGraph") -> bool:
        return self.n == other.n and self.edges <= other.edges

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g

    def relabel(self, perm: Sequence[int]) -> "SupportGraph":
        """Image under vertex map v -> perm[v-1]."""
        return SupportGraph(self.n, [(perm[i - 1], perm[j - 1]) for i, j in self.edges])

    def canonical_form(self) -> tuple[tuple[int, int], ...]:
        """Lexicographically least sorted edge list over all relabellings."""
        if self.n > ISOMORPHISM_LIMIT:
            raise ValueError(f"brute-force isomorphism limited to n <= {ISOMORPHISM_LIMIT}")
        return min(
            tuple(sorted(self.relabel(p).edges)) for p in permutations(range(1, self.n + 1))
        )

    def isomorphic(self, other: "SupportGraph") -> bool:
        return self.n == other.n and self.canonical_form() == other.canonical_form()

    def automorphisms(self) -> list[tuple[int, ...]]:
        return [
            p for p in permutations(range(1, self.n + 1)) if self.relabel(p).edges == self.edges
        ]


def graph_classes(n: int) -> list[SupportGraph]:
    """One canonical representative per isomorphism class, ordered by edge count."""
    all_pairs = list(combinations(range(1, n + 1), 2))
    seen = {}
    for bits in range(1 << len(all_pairs)):
        g = SupportGraph(n, [p for k, p in enumerate(all_pairs) if bits >> k & 1])
        key = g.canonical_form()
        if key not in seen:
            seen[key] = SupportGraph(n, key)
    return sorted(seen.values(), key=lambda g: (g.num_edges, g.sorted_edges()))


# colourings ----------------------------------------------------------------


def chromatic_number(g: SupportGraph) -> tuple[int, dict[int, int]]:
    """Exact chromatic number with a witness colouring (vertex -> colour 0..k-1)."""
    if g.n > CHROMATIC_LIMIT:
        raise ValueError(f"chromatic number limited to n <= {CHROMATIC_LIMIT}")
    if g.n == 0:
        return 0, {}
    adj = {v: g.neighbours(v) for v in range(1, g.n + 1)}
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))

    def colour(k: int) -> dict[int, int] | None:
        assignment: dict[int, int] = {}

        def place(pos: int) -> bool:
            if pos == len(order):
                return True
            v = order[pos]
            used = {assignment[u] for u in adj[v] if u in assignment}
            # symmetry break: never open more than one new colour at a time
            limit = min(k, max(assignment.values(), default=-1) + 2)
            for c in range(limit):
                if c not in used:
                    assignment[v] = c
                    if place(pos + 1):
                        return True
                    del assignment[v]
            return False

        return dict(assignment) if place(0) else None

    for k in range(1, g.n + 1):
        found = colour(k)
        if found is not None:
            return k, found
    raise AssertionError("unreachable: n colours always suffice")


def maximal_independent_sets(g: SupportGraph) -> list[frozenset[int]]:
    """All maximal independent sets, sorted for deterministic column order."""
    if g.n > FRACTIONAL_LIMIT:
        raise ValueError(f"independent-set enumeration limited to n <= {FRACTIONAL_LIMIT}")
    if g.n == 0:
        return []
    cliques = nx.find_cliques(nx.complement(g.to_networkx()))
    return sorted((frozenset(c) for c in cliques), key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class FractionalColoring:
    weights: dict[frozenset[int], Fraction]
    total: Fraction

    def coverage(self, v: int) -> Fraction:
        return sum((w for s, w in self.weights.items() if v in s), Fraction(0))


def fractional_chromatic(g: SupportGraph) -> tuple[Fraction, FractionalColoring]:
    """chi_f(G) from the covering LP over maximal independent sets."""
    sets = maximal_independent_sets(g)
    if not sets:
        return Fraction(0), FractionalColoring({}, Fraction(0))
    k = len(sets)
    A = [[1 if v in s else 0 for s in sets] for v in range(1, g.n + 1)]
    A += [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    r = [1] * g.n + [0] * k
    outcome = solve_min(LinearProgram.build(A, r, [1] * k))
    if not isinstance(outcome, Optimal):
        raise AssertionError(f"covering LP should be optimal, got {outcome}")
    weights = {s: w for s, w in zip(sets, outcome.witness) if w}
    colouring = FractionalColoring(weights, outcome.value)
    if any(colouring.coverage(v) < 1 for v in range(1, g.n + 1)):
        raise AssertionError("fractional colouring leaves a vertex uncovered")
    return outcome.value, colouring


# bounds --------------------------------------------------------------------


@dataclass(frozen=True)
class RadicalBound:
    """A bound whose value involves square roots.

    ``radicand`` is the exact quantity under the outermost root for
    ``sqrt(chi_f * n)`` and the inner one for ``sqrt(n + sqrt(2|E|n))``.
    """

    value: float
    radicand: Fraction
    formula: str


def fracch_bound(g: SupportGraph) -> RadicalBound:
    """sqrt(chi_f(G)) * sqrt(n)."""
    chi_f, _ = fractional_chromatic(g)
    rad = chi_f * g.n
    return RadicalBound(math.sqrt(rad), rad, "sqrt(chi_f*n)")


def edge_bound(g: SupportGraph) -> RadicalBound:
    """sqrt(n + sqrt(2|E|n))."""
    inner = Fraction(2 * g.num_edges * g.n)
    return RadicalBound(math.sqrt(g.n + math.sqrt(inner)), inner, "sqrt(n+sqrt(2|E|n))")


def fracch_holds(influence, chi_f, n: int) -> bool:
    """Exact test of influence <= sqrt(chi_f) * sqrt(n)."""
    x = Fraction(influence)
    return x <= 0 or x * x <= Fraction(chi_f) * n


def edge_holds(influence, num_edges: int, n: int) -> bool:
    """Exact test of influence <= sqrt(n + sqrt(2|E|n))."""
    x = Fraction(influence)
    if x <= 0:
        return True
    gap = x * x - n
    return gap <= 0 or gap * gap <= 2 * num_edges * n


def _check_parts(g: SupportGraph, parts: Sequence[Iterable[int]]) -> list[list[int]]:
    parts = [sorted(set(p)) for p in parts]
    seen: set[int] = set()
    for p in parts:
        if seen & set(p):
            raise ValueError("cover parts must be disjoint")
        seen |= set(p)
    if seen != set(range(1, g.n + 1)):
        raise ValueError("cover parts do not cover the vertex set")
    return parts


@dataclass(frozen=True)
class PartBound:
    vertices: tuple[int, ...]
    bound: Fraction
    source: str


def part_bound(g: SupportGraph, vertices: Sequence[int]) -> PartBound:
    """Best available value for I[G[vertices]]."""
    sub = g.induced(vertices)
    verts = tuple(sorted(vertices))
    if sub.n == 0:
        return PartBound(verts, Fraction(0), "empty")
    if sub.is_edgeless():
        return PartBound(verts, maj_influence(sub.n).as_fraction(), "majority")
    if sub.n <= 4:
        from ptflab.search import max_qtf_influence

        return PartBound(verts, max_qtf_influence(sub).influence.as_fraction(), "exhaustive")
    return PartBound(verts, Fraction(sub.n), "trivial")


@dataclass(frozen=True)
class CoverBound:
    total: Fraction
    parts: tuple[PartBound, ...]


def covering_bound(
    g: SupportGraph,
    parts: Sequence[Iterable[int]],
    part_bounds: Sequence | None = None,
) -> CoverBound:
    """Sum of I[G_i] over a disjoint induced cover.

    Missing entries of ``part_bounds`` (or ``None``) are filled by
    :func:`part_bound`.
    """
    parts = _check_parts(g, parts)
    if part_bounds is not None and len(part_bounds) != len(parts):
        raise ValueError("need one bound per part")
    out = []
    for k, p in enumerate(parts):
        given = None if part_bounds is None else part_bounds[k]
        if given is None:
            out.append(part_bound(g, p))
        else:
            out.append(PartBound(tuple(p), Fraction(given), "given"))
    return CoverBound(sum((pb.bound for pb in out), Fraction(0)), tuple(out))


def randomized_covering_bound(
    g: SupportGraph,
    parts: Sequence[Iterable[int]],
    probabilities: Sequence,
    part_bounds: Sequence | None = None,
) -> Fraction:
    """(1/eps) E_{G_i ~ P}[I[G_i]] with eps the least vertex coverage probability.

    Parts may overlap here; they must still cover every vertex.
    """
    parts = [sorted(set(p)) for p in parts]
    probs = [Fraction(p) for p in probabilities]
    if len(probs) != len(parts) or any(p < 0 for p in probs) or sum(probs) != 1:
        raise ValueError("probabilities must be a distribution over the parts")
    eps = min(
        (sum((pr for pr, p in zip(probs, parts) if v in p), Fraction(0)) for v in range(1, g.n + 1)),
        default=Fraction(1),
    )
    if eps <= 0:
        raise ValueError("some vertex is never covered")
    bounds = [
        part_bound(g, p).bound if part_bounds is None or part_bounds[k] is None else Fraction(part_bounds[k])
        for k, p in enumerate(parts)
    ]
    return sum((pr * b for pr, b in zip(probs, bounds)), Fraction(0)) / eps


@dataclass(frozen=True)
class ExcisionBound:
    value: float
    remainder_bound: float
    remainder_source: str
    excised: PartBound


def excision_bound(g: SupportGraph, excised: Iterable[int]) -> ExcisionBound:
    """Bound I[G] by a theorem bound on G minus H plus I[H].

    I[H] is exact for |H| <= 4 and the trivial |H| otherwise.  When G minus H
    is edgeless its exact majority value is used if smaller than both bounds.
    """
    h = sorted(set(excised))
    if any(not 1 <= v <= g.n for v in h):
        raise ValueError("excised vertices must lie in the graph")
    rest = g.remove(h)
    if rest.n == 0:
        rem, source = 0.0, "empty"
    else:
        e, f = edge_bound(rest).value, fracch_bound(rest).value
        rem, source = (e, "edge") if e <= f else (f, "fractional-chromatic")
        if rest.is_edgeless():
            m = float(maj_influence(rest.n))
            if m < rem:
                rem, source = m, "majority"
    if not h:
        hb = PartBound((), Fraction(0), "empty")
    elif len(h) <= 4:
        hb = part_bound(g, h)
    else:
        hb = PartBound(tuple(h), Fraction(len(h)), "trivial")
    return ExcisionBound(rem + float(hb.bound), rem, source, hb)


@dataclass(frozen=True)
class CoverDistribution:
    """Independent-set distribution from an optimal fractional colouring,
    with per-vertex thinning probabilities."""

    chi_f: Fraction
    set_probabilities: dict[frozenset[int], Fraction]
    vertex_probabilities: dict[int, Fraction]
    thinning: dict[int, Fraction]
    expected_size: Fraction
    expected_thinned_size: Fraction

    def thinned_inclusion(self, v: int) -> Fraction:
        return self.vertex_probabilities[v] * (1 - self.thinning[v])


def thinned_distribution(g: SupportGraph) -> CoverDistribution:
    chi_f, colouring = fractional_chromatic(g)
    if g.n == 0:
        raise ValueError("empty graph has no cover distribution")
    probs = {s: w / chi_f for s, w in colouring.weights.items()}
    p_v = {v: sum((p for s, p in probs.items() if v in s), Fraction(0)) for v in range(1, g.n + 1)}
    target = 1 / chi_f
    q_v = {}
    for v, p in p_v.items():
        if p < target:
            raise AssertionError(f"vertex {v} covered with probability {p} < 1/chi_f")
        q_v[v] = 1 - target / p
    size = sum((p * len(s) for s, p in probs.items()), Fraction(0))
    thinned = sum((p_v[v] * (1 - q_v[v]) for v in p_v), Fraction(0))
    if thinned != g.n / chi_f:
        raise AssertionError("thinned expected size differs from n/chi_f")
    return CoverDistribution(chi_f, probs, p_v, q_v, size, thinned)


def chromatic_cover_bound(g: SupportGraph) -> Fraction:
    """Covering-lemma bound from an optimal proper colouring: sum of majority values."""
    _, colouring = chromatic_number(g)
    classes: dict[int, list[int]] = {}
    for v, c in colouring.items():
        classes.setdefault(c, []).append(v)
    return covering_bound(g, list(classes.values())).total

