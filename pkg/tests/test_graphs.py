import math
from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import pytest

from ptflab.graphs import (
    GraphFormatError,
    SupportGraph,
    chromatic_cover_bound,
    chromatic_number,
    covering_bound,
    edge_bound,
    edge_holds,
    excision_bound,
    fracch_bound,
    fracch_holds,
    fractional_chromatic,
    graph_classes,
    maximal_independent_sets,
    randomized_covering_bound,
    thinned_distribution,
)
from ptflab.qtf import maj_influence

C4 = SupportGraph.cycle(4)
C5 = SupportGraph.cycle(5)
K4 = SupportGraph.complete(4)


def test_parse_and_write(tmp_path):
    g = SupportGraph.parse("4 3\n1 2\n2 3\n3 4\n")
    assert g == SupportGraph.path(4)
    assert SupportGraph.parse(g.to_text()) == g
    path = tmp_path / "g.txt"
    path.write_text(K4.to_text())
    assert SupportGraph.read(path) == K4


@pytest.mark.parametrize(
    "text",
    ["", "4\n", "3 1\n1 1\n", "3 1\n2 1\n", "3 2\n1 2\n", "3 1\n1 4\n", "3 1\na b\n", "3 2\n1 2\n1 2\n"],
)
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        SupportGraph.parse(text)


def test_chromatic_numbers():
    assert chromatic_number(SupportGraph.edgeless(4))[0] == 1
    assert chromatic_number(K4)[0] == 4
    k, colouring = chromatic_number(C5)
    assert k == 3
    assert all(colouring[i] != colouring[j] for i, j in C5.edges)


def test_chromatic_against_networkx_bound(rng):
    for _ in range(25):
        n = rng.randint(1, 8)
        g = SupportGraph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.4])
        k, colouring = chromatic_number(g)
        assert all(colouring[i] != colouring[j] for i, j in g.edges)
        greedy = max(nx.greedy_color(g.to_networkx()).values(), default=-1) + 1
        assert k <= max(greedy, 1)
        # no proper colouring with k - 1 colours
        if k > 1:
            for cols in product(range(k - 1), repeat=n):
                assert any(cols[i - 1] == cols[j - 1] for i, j in g.edges)


def test_fractional_chromatic():
    assert fractional_chromatic(K4)[0] == 4
    assert fractional_chromatic(C5)[0] == Fraction(5, 2)
    assert fractional_chromatic(SupportGraph.edgeless(6))[0] == 1
    value, colouring = fractional_chromatic(C5)
    assert colouring.total == value
    assert all(colouring.coverage(v) >= 1 for v in range(1, 6))
    assert all(C5.is_independent(s) for s in colouring.weights)


def test_fractional_at_most_chromatic(rng):
    for _ in range(25):
        n = rng.randint(1, 8)
        g = SupportGraph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.5])
        assert fractional_chromatic(g)[0] <= chromatic_number(g)[0]


def test_maximal_independent_sets_c5():
    sets = {frozenset(s) for s in maximal_independent_sets(C5)}
    assert sets == {frozenset(s) for s in ({1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5})}


def test_bound_values():
    assert fracch_bound(SupportGraph.edgeless(9)).value == 3.0
    assert fracch_bound(K4).value == 4.0
    assert math.isclose(fracch_bound(C5).value, math.sqrt(12.5))
    assert fracch_bound(C5).radicand == Fraction(25, 2)
    assert edge_bound(SupportGraph.edgeless(9)).value == 3.0
    assert math.isclose(edge_bound(K4).value, math.sqrt(4 + math.sqrt(48)))
    assert math.isclose(edge_bound(SupportGraph.path(4)).value, math.sqrt(4 + math.sqrt(24)))


def test_exact_bound_comparisons():
    assert fracch_holds(4, 4, 4)
    assert not fracch_holds(Fraction(401, 100), 4, 4)
    assert edge_holds(3, 6, 4)
    assert not edge_holds(Fraction(331, 100), 6, 4)
    assert edge_holds(Fraction(330, 100), 6, 4)


def test_covering_bound_examples():
    assert covering_bound(SupportGraph.edgeless(4), [[1, 2], [3, 4]]).total == 2
    assert covering_bound(K4, [[1], [2], [3], [4]]).total == 4
    assert covering_bound(C4, [[1, 3], [2, 4]]).total == 2
    assert covering_bound(K4, [[1, 2], [3, 4]], [Fraction(5, 2), None]).total == Fraction(9, 2)
    with pytest.raises(ValueError):
        covering_bound(K4, [[1, 2], [3]])
    with pytest.raises(ValueError):
        covering_bound(K4, [[1, 2], [2, 3, 4]])


def test_randomized_cover_matches_deterministic_for_partition():
    det = covering_bound(C4, [[1, 3], [2, 4]]).total
    rand = randomized_covering_bound(C4, [[1, 3], [2, 4]], [Fraction(1, 2), Fraction(1, 2)])
    assert rand == det
    with pytest.raises(ValueError):
        randomized_covering_bound(C4, [[1, 3], [2, 4]], [1, 1])


def test_excision():
    k4 = excision_bound(K4, [])
    assert k4.value == min(edge_bound(K4).value, fracch_bound(K4).value)
    k5 = excision_bound(SupportGraph.complete(5), [5])
    assert k5.excised.bound == 1
    assert k5.value == pytest.approx(min(edge_bound(K4).value, fracch_bound(K4).value) + 1)
    star = excision_bound(SupportGraph.star(6), [6])
    assert star.remainder_source == "majority"
    assert star.value == pytest.approx(float(maj_influence(5)) + 1)


def test_thinned_distribution():
    d = thinned_distribution(SupportGraph.edgeless(4))
    assert d.set_probabilities == {frozenset({1, 2, 3, 4}): 1}
    assert all(q == 0 for q in d.thinning.values())
    assert d.expected_thinned_size == 4
    k3 = thinned_distribution(SupportGraph.complete(3))
    assert set(k3.set_probabilities.values()) == {Fraction(1, 3)}
    assert k3.expected_thinned_size == 1
    c5 = thinned_distribution(C5)
    assert c5.expected_thinned_size == 2
    assert sum(c5.set_probabilities.values()) == 1
    assert all(c5.thinned_inclusion(v) == Fraction(2, 5) for v in range(1, 6))


def test_graph_classes():
    classes = graph_classes(4)
    assert len(classes) == 11
    for a, b in combinations(classes, 2):
        assert not a.isomorphic(b)
    assert sorted(len(graph_classes(n)) for n in range(1, 5)) == [1, 2, 4, 11]


def test_isomorphism_against_networkx(rng):
    for _ in range(30):
        g = SupportGraph(5, [e for e in combinations(range(1, 6), 2) if rng.random() < 0.5])
        perm = list(range(1, 6))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert g.isomorphic(h)
        other = SupportGraph(5, [e for e in combinations(range(1, 6), 2) if rng.random() < 0.5])
        assert g.isomorphic(other) == nx.is_isomorphic(g.to_networkx(), other.to_networkx())


def test_automorphisms():
    assert len(K4.automorphisms()) == 24
    assert len(C4.automorphisms()) == 8
    assert len(SupportGraph.path(4).automorphisms()) == 2


def test_chromatic_cover_bound():
    assert chromatic_cover_bound(C4) == 2
    assert chromatic_cover_bound(K4) == 4
