"""One test per acceptance criterion; each logs a PASS/FAIL line."""

import math
from fractions import Fraction
from itertools import combinations, product

import oracles
from ptflab.core import BooleanFunction, point
from ptflab.exactlp import Feasible, LinearProgram, solve_feasibility
from ptflab.family import (
    family_influence_closed,
    family_influence_fast,
    family_ratio,
    influence_middle,
    closed_middle,
)
from ptflab.graphs import (
    covering_bound,
    edge_bound,
    edge_holds,
    fracch_bound,
    fracch_holds,
    fractional_chromatic,
)
from ptflab.qtf import igl, maj_influence, qtf_representable
from ptflab.search import hunt_n5, max_influence_per_support, verify_conjecture_small
from ptflab.spectral import influence_from_spectrum, wht

GUARD = 1e-9


def test_c1_counterexample_reproduction(record):
    report = hunt_n5(Fraction(25, 8))
    best = [c for c in report.confirmed if c.influence == Fraction(51, 16)]
    record(1, "n=5 symmetric search finds a QTF with I = 51/16 > 25/8",
           f"{len(report.confirmed)} confirmed, {len(best)} at 51/16, {report.elapsed:.1f}s")
    assert best
    assert igl(5, 2) == Fraction(25, 8)
    for c in report.confirmed:
        f = BooleanFunction.from_hex(c.table_hex, 5)
        assert f.total_influence() > Fraction(25, 8)
        for k in range(32):
            x = point(k, 5)
            assert (oracles.evaluate_poly(c.witness, 5, x) > 0) == (f.evaluate(k) == 1)


def test_c2_family_values(record):
    values = (family_influence_fast(5), family_influence_fast(7), igl(7, 2))
    record(2, "family values 51/16, 249/64 and I_GL(7,2) = 245/64", " ".join(map(str, values)))
    assert values == (Fraction(51, 16), Fraction(249, 64), Fraction(245, 64))


def test_c3_family_beats_conjecture(record):
    odd = range(5, 42, 2)
    beats = all(family_influence_fast(n) > igl(n, 2) for n in odd)
    closed = all(family_influence_closed(n) == family_influence_fast(n) for n in range(9, 42, 2))
    sixteen = all(closed_middle(n, 16) == influence_middle(n) for n in range(9, 42, 2))
    ratio7 = family_ratio(7).exact
    record(3, "I[f_n] > I_GL(n,2) for odd 5..41, closed form exact, ratio(7) = 249/245",
           f"beats={beats} closed={closed} middle-term denominator 16 exact={sixteen} ratio7={ratio7}")
    assert beats and closed and sixteen
    assert ratio7 == Fraction(249, 245)


def test_c4_table1(record):
    rows = max_influence_per_support(4)
    flagged = [r for r in rows if r.reference is not None]
    matched = [r for r in flagged if r.matches_reference]
    record(4, "Table 1 values for the seven listed 4-vertex supports",
           f"{len(matched)}/{len(flagged)} match; " + ", ".join(str(r.influence) for r in flagged))
    assert len(flagged) == 7 and len(matched) == 7


def test_c5_small_n_conjecture(record):
    reports = {n: verify_conjecture_small(n) for n in (2, 3, 4)}
    violators = {n: len(r.confirmed) for n, r in reports.items()}
    record(5, "no QTF exceeds I_GL(n,2) for n = 2, 3, 4", f"violators {violators}")
    assert all(v == 0 for v in violators.values())


def test_c6_bound_theorems(record):
    rows = max_influence_per_support(4)
    checked = 0
    for r in rows:
        g, infl = r.graph, r.influence
        chi_f, _ = fractional_chromatic(g)
        assert fracch_holds(infl, chi_f, 4)
        assert edge_holds(infl, g.num_edges, 4)
        assert float(infl) <= fracch_bound(g).value + GUARD
        assert float(infl) <= edge_bound(g).value + GUARD
        for size in (1, 2):
            for part in combinations(range(1, 5), size):
                rest = [v for v in range(1, 5) if v not in part]
                bounds = [_exact_part(g, p) for p in (list(part), rest)]
                assert infl <= covering_bound(g, [list(part), rest], bounds).total
                checked += 1
    record(6, "fractional-chromatic, edge and covering bounds hold on all 11 classes",
           f"{checked} two-part covers checked")


def _exact_part(g, part):
    from ptflab.search import max_qtf_influence

    return max_qtf_influence(g.induced(part)).influence.as_fraction()


def test_c7_fourier_properties(rng, record):
    count = 0
    for _ in range(120):
        n = rng.randint(1, 10)
        f = BooleanFunction.random(n, rng)
        spec = wht(f)
        assert spec.squared_norm() == 1
        vals = f.to_array()
        for i in range(1, n + 1):
            assert influence_from_spectrum(spec, i) == f.influence(i)
            d, e = f.derivative(i).values, f.expectation(i).values
            for k in range(1 << n):
                rest = (k & ((1 << (i - 1)) - 1)) | ((k >> i) << (i - 1))
                xi = 1 if (k >> (i - 1)) & 1 else -1
                assert vals[k] == xi * d[rest] + e[rest]
        if n >= 2:
            keep = sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1)))
            for i in keep:
                avg = sum(
                    (f.restrict(keep, list(z)).influence(keep.index(i) + 1)
                     for z in product((-1, 1), repeat=n - len(keep))),
                    Fraction(0),
                ) / (1 << (n - len(keep)))
                assert avg == f.influence(i)
        count += 1
    ltfs = 0
    for _ in range(30):
        n = rng.randint(1, 8)
        w = [rng.randint(-9, 9) for _ in range(n)]
        c = rng.randint(-9, 9)
        g = BooleanFunction.from_callable(n, lambda x: 1 if 2 * sum(a * b for a, b in zip(w, x)) + 2 * c + 1 > 0 else -1)
        verdict = qtf_representable(g, [])
        assert verdict
        h = verdict.polynomial.sign_function()
        assert h.total_influence() ** 2 <= n
        ltfs += 1
    record(7, "Parseval, spectral influence, decomposition, restriction lemma, LTF sqrt(n) bound",
           f"{count} random functions, {ltfs} LP-built LTFs")


def test_c8_majority_asymptotics(record):
    n = 10001
    ratio = float(maj_influence(n)) / math.sqrt(n)
    record(8, "maj_influence(10001)/sqrt(10001) in [0.7879, 0.8079]", f"{ratio:.6f}")
    assert 0.7879 <= ratio <= 0.8079


def test_c9_lp_engine(rng, record):
    agree = 0
    for _ in range(1000):
        d, m = rng.randint(1, 3), rng.randint(1, 6)
        A = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(m)]
        r = [rng.randint(-3, 3) for _ in range(m)]
        lp = LinearProgram.build(A, r)
        out = solve_feasibility(lp)
        feasible = isinstance(out, Feasible)
        assert feasible == oracles.fm_feasible(A, r)
        assert lp.satisfied_by(out.witness) if feasible else lp.is_farkas(out.certificate)
        agree += 1
    record(9, "1000 random LPs agree with Fourier-Motzkin, certificates verified", f"{agree}/1000")
