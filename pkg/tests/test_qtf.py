import math
from fractions import Fraction
from itertools import product

import pytest

import oracles
from ptflab.core import BooleanFunction
from ptflab.graphs import SupportGraph
from ptflab.qtf import (
    QuadraticPolynomial,
    igl,
    igl2_closed,
    igl2_even_variant,
    igl2_misread,
    maj,
    maj_influence,
    qtf_representable,
    support_of,
    symmetric_ptf,
    symmetric_qtf_functions,
)

# c, b_1..b_5, then a_12 a_13 a_14 a_15 a_23 a_24 a_25 a_34 a_35 a_45
F5_POLY = [-4, 1, 2, 2, 3, 3, -7, -7, 1, 1, -7, 2, 2, 2, 2, 3]
F5_HEX = "7e686816"


def test_explicit_counterexample_polynomial():
    q = QuadraticPolynomial.from_vector(5, F5_POLY)
    f = q.sign_function()
    assert f.to_hex() == F5_HEX
    assert f.total_influence() == Fraction(51, 16)
    assert support_of(q) == SupportGraph.complete(5)


def test_lp_recovers_counterexample():
    f = BooleanFunction.from_hex(F5_HEX, 5)
    verdict = qtf_representable(f)
    assert verdict
    vec = verdict.polynomial.integer_vector()
    for k, x in enumerate(oracles.cube(5)):
        assert (oracles.evaluate_poly(vec, 5, x) > 0) == (f.evaluate(k) == 1)


def test_and_is_ltf():
    and2 = BooleanFunction.from_callable(2, lambda x: 1 if x == (1, 1) else -1)
    verdict = qtf_representable(and2, SupportGraph.edgeless(2))
    assert verdict and verdict.polynomial.quadratic == (0,)


def test_parity3_not_quadratic():
    verdict = qtf_representable(BooleanFunction.parity(3))
    assert not verdict
    assert verdict.certificate == tuple([Fraction(1)] * 8)


def test_parity3_no_small_integer_polynomial():
    target = oracles.values(BooleanFunction.parity(3))
    pts = oracles.cube(3)
    for vec in product(range(-2, 3), repeat=7):
        signs = [oracles.evaluate_poly(vec, 3, x) for x in pts]
        assert not all(s * t > 0 for s, t in zip(signs, target))


def test_support_is_respected(rng):
    for _ in range(30):
        n = rng.randint(2, 4)
        edges = [e for e in SupportGraph.complete(n).sorted_edges() if rng.random() < 0.5]
        g = SupportGraph(n, edges)
        vec = [rng.randint(-4, 4) for _ in range(1 + n)] + [
            rng.randint(-4, 4) if e in edges else 0 for e in SupportGraph.complete(n).sorted_edges()
        ]
        vec[0] = 2 * vec[0] + 1  # odd constant never cancels an even sum of +-1 terms
        try:
            f = QuadraticPolynomial.from_vector(n, vec).sign_function()
        except ValueError:
            continue
        verdict = qtf_representable(f, g)
        assert verdict
        assert support_of(verdict.polynomial).is_subgraph_of(g)
        assert verdict.polynomial.sign_function() == f


def test_support_arity_mismatch():
    with pytest.raises(ValueError):
        qtf_representable(BooleanFunction.parity(3), SupportGraph.complete(4))


def test_support_of_examples():
    assert support_of(QuadraticPolynomial.from_terms(3, 1)).is_edgeless()
    assert support_of(QuadraticPolynomial.from_terms(3, quadratic={(1, 2): 1})).sorted_edges() == [(1, 2)]


def test_sign_function_rejects_zero():
    with pytest.raises(ValueError):
        QuadraticPolynomial.from_terms(2, linear={1: 1}, quadratic={(1, 2): 1}).sign_function()


def test_symmetric_ptf_values():
    assert symmetric_ptf(3, 1) == maj(3)
    assert symmetric_ptf(5, 2).total_influence() == Fraction(25, 8)
    assert symmetric_ptf(7, 2).total_influence() == Fraction(245, 64)


def test_igl_values():
    assert igl(5, 2) == Fraction(25, 8)
    assert igl(7, 2) == Fraction(245, 64)
    # the binomial sum at n = 4 gives 3; the variant even-n expression gives 7/2
    assert igl(4, 2) == 3
    assert igl2_even_variant(4) == Fraction(7, 2)
    with pytest.raises(ValueError):
        igl(5, 1)
    with pytest.raises(ValueError):
        igl(3, 4)


def test_igl_cross_checks():
    for n in range(2, 41):
        assert igl(n, 2) == igl2_closed(n)
    for n in range(2, 17):
        assert symmetric_ptf(n, 2).total_influence() == igl2_closed(n)


def test_even_variant_overstates():
    for n in range(4, 21, 2):
        assert igl2_even_variant(n) > symmetric_ptf(n, 2).total_influence()


def test_misread_value():
    assert igl2_misread(5) == Fraction(55, 16)
    assert float(igl2_misread(5)) == 3.4375


def test_symmetric_qtf_maximum_n5():
    infl = {f.total_influence() for f in symmetric_qtf_functions(5)}
    assert max(infl) == Fraction(25, 8)
    assert Fraction(55, 16) not in infl


def test_symmetric_qtf_enumeration_agrees_with_full_lp():
    funcs = list(symmetric_qtf_functions(4))
    for f in funcs:
        assert qtf_representable(f)


def test_majority():
    assert maj_influence(3) == Fraction(3, 2)
    assert maj_influence(5) == Fraction(15, 8)
    for n in range(1, 16, 2):
        assert maj(n).total_influence() == maj_influence(n)
    with pytest.raises(ValueError):
        maj(4)
    ratio = float(maj_influence(10001)) / math.sqrt(10001)
    assert abs(ratio - math.sqrt(2 / math.pi)) < 0.01


def test_ltf_maximum_is_majority_value():
    from ptflab.search import max_qtf_influence

    assert max_qtf_influence(SupportGraph.edgeless(4)).influence == maj_influence(4)
    for n in range(1, 4):
        best = Fraction(0)
        edgeless = SupportGraph.edgeless(n)
        for t in range(1 << (1 << n)):
            f = BooleanFunction(n, t)
            if f.total_influence() > best and qtf_representable(f, edgeless):
                best = f.total_influence()
        assert best == maj_influence(n)


def test_integer_cleared_preserves_sign(rng):
    for _ in range(20):
        vec = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(7)]
        vec[0] += Fraction(1, 1000)
        q = QuadraticPolynomial.from_vector(3, vec)
        try:
            f = q.sign_function()
        except ValueError:
            continue
        c = q.integer_cleared()
        assert all(v.denominator == 1 for v in c.vector())
        assert math.gcd(*[int(v) for v in c.vector()]) == 1
        assert c.sign_function() == f
