"""Command-line interface: ``ptflab <command> [options]``.

Exit codes: 0 success, 1 invalid input, 2 internal check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ptflab.core import BooleanFunction
from ptflab.graphs import (
    GraphFormatError,
    SupportGraph,
    chromatic_number,
    edge_bound,
    fractional_chromatic,
    fracch_bound,
)
from ptflab.qtf import igl, qtf_representable
from ptflab.spectral import format_spectrum, total_influence_from_spectrum, wht

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class CommandResult:
    body: dict | list
    text: str
    code: int = EXIT_OK
    lines: list[dict] = field(default_factory=list)


def frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec(x) -> str:
    return f"{float(Fraction(x)):.10g}"


def sig6(x: float) -> str:
    return f"{x:.6g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _function(args) -> BooleanFunction:
    if not 1 <= args.n <= 24:
        raise InputError(f"arity must be between 1 and 24, got {args.n}")
    try:
        return BooleanFunction.from_hex(args.table, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _graph(path: str) -> SupportGraph:
    try:
        return SupportGraph.read(path)
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror}") from None
    except GraphFormatError as exc:
        raise InputError(f"malformed graph file {path}: {exc}") from None


def cmd_influence(args) -> CommandResult:
    f = _function(args)
    infs = f.influences()
    total = f.total_influence()
    body = {
        "n": f.arity,
        "table_hex": f.to_hex(),
        "influences": [str(v) for v in infs],
        "total": str(total),
    }
    rows = [f"Inf_{i} = {v} ({dec(v)})" for i, v in enumerate(infs, 1)]
    rows.append(f"I[f] = {total} ({dec(total)})")
    return CommandResult(body, "\n".join(rows))


def cmd_fourier(args) -> CommandResult:
    f = _function(args)
    spec = wht(f)
    lines = format_spectrum(spec)
    body = {
        "n": f.arity,
        "coefficients": {f"{s:x}": str(c) for s, c in spec.nonzero()},
        "total_influence": str(total_influence_from_spectrum(spec)),
    }
    return CommandResult(body, "\n".join(lines))


def cmd_qtf_check(args) -> CommandResult:
    f = _function(args)
    support = None
    if args.support:
        support = _graph(args.support)
        if support.n != f.arity:
            raise InputError(f"support graph has {support.n} vertices but the table has arity {f.arity}")
    verdict = qtf_representable(f, support)
    if verdict:
        vec = verdict.polynomial.integer_vector()
        body = {"representable": True, "witness": vec}
        text = "FEASIBLE\n" + " ".join(map(str, vec))
    else:
        cert = [frac(v) for v in verdict.certificate]
        body = {"representable": False, "certificate": cert}
        text = "INFEASIBLE\n" + " ".join(cert)
    return CommandResult(body, text)


def cmd_igl(args) -> CommandResult:
    try:
        value = igl(args.n, args.d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return CommandResult({"n": args.n, "d": args.d, "igl": str(value)}, f"{value} ({dec(value)})")


def cmd_family(args) -> CommandResult:
    from ptflab.family import family_ratio

    try:
        r = family_ratio(args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    excess = r.exact - 1
    body = {
        "n": r.n,
        "influence": str(r.influence),
        "igl": str(r.igl),
        "ratio": frac(r.exact),
        "ratio_minus_one": frac(excess),
        "formula_residual": frac(r.residual),
    }
    text = "\n".join(
        [
            f"I[f_n]     = {r.influence} ({dec(r.influence)})",
            f"I_GL(n,2)  = {r.igl} ({dec(r.igl)})",
            f"ratio - 1  = {frac(excess)} ({dec(excess)})",
        ]
    )
    return CommandResult(body, text)


def cmd_bounds(args) -> CommandResult:
    g = _graph(args.graph)
    if g.n == 0:
        raise InputError("graph must have at least one vertex")
    chi, _ = chromatic_number(g)
    chi_f, _ = fractional_chromatic(g)
    fb, eb = fracch_bound(g), edge_bound(g)
    body = {
        "n": g.n,
        "edges": g.num_edges,
        "chi": chi,
        "chi_f": frac(chi_f),
        "fractional_chromatic_bound": {"value": sig6(fb.value), "radicand": frac(fb.radicand), "formula": fb.formula},
        "edge_bound": {"value": sig6(eb.value), "radicand": frac(eb.radicand), "formula": eb.formula},
    }
    text = "\n".join(
        [
            f"|E| = {g.num_edges}",
            f"chi = {chi}",
            f"chi_f = {frac(chi_f)}",
            f"{fb.formula} = {sig6(fb.value)} (radicand {frac(fb.radicand)})",
            f"{eb.formula} = {sig6(eb.value)} (inner radicand {frac(eb.radicand)})",
        ]
    )
    return CommandResult(body, text)


def cmd_search(args) -> CommandResult:
    from ptflab.search import hunt_n5, resolve_workers

    if args.sym_last != 2:
        raise InputError("only --sym-last 2 is supported")
    if not 3 <= args.n <= 5:
        raise InputError("the symmetry-reduced search supports 3 <= n <= 5")
    try:
        threshold = Fraction(args.threshold) if args.threshold else igl(args.n, 2).as_fraction()
        workers = resolve_workers(args.workers)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if threshold.denominator & (threshold.denominator - 1):
        raise InputError("threshold must be a dyadic rational")
    report = hunt_n5(threshold, workers=workers, n=args.n)
    lines = [c.to_json() for c in report.confirmed]
    summary = report.summary()
    text = f"{len(lines)} confirmed; " + ", ".join(f"{k}={v}" for k, v in summary.items())
    return CommandResult(summary, text, lines=lines)


def cmd_table1(args) -> CommandResult:
    from ptflab.search import max_influence_per_support, resolve_workers

    try:
        workers = resolve_workers(args.workers)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = max_influence_per_support(4, workers=workers)
    body = [r.to_json() for r in rows]
    text = []
    for r in rows:
        edges = " ".join(f"{i}{j}" for i, j in r.graph.sorted_edges()) or "-"
        flag = "" if r.reference is None else ("  matches" if r.matches_reference else "  MISMATCH")
        text.append(f"{edges:<20} I[G] = {str(r.influence):<5} witness {r.witness_hex}{flag}")
    return CommandResult(body, "\n".join(text))


def cmd_verify_small(args) -> CommandResult:
    from ptflab.search import verify_conjecture_small

    try:
        report = verify_conjecture_small(args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    body = report.summary()
    body["violators"] = [c.to_json() for c in report.confirmed]
    text = f"n={args.n}: {len(report.confirmed)} violators among {report.survivors} functions above {report.threshold}"
    return CommandResult(body, text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptflab", description="Exact influence analysis of threshold functions.")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def table_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--table", required=True, help="truth table in hex")
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(fn=fn)
        return p

    table_cmd("influence", cmd_influence, "per-coordinate and total influence")
    table_cmd("fourier", cmd_fourier, "exact Walsh-Hadamard spectrum")
    p = table_cmd("qtf-check", cmd_qtf_check, "is the table a quadratic threshold function")
    p.add_argument("--support", help="graph file restricting quadratic terms")

    p = sub.add_parser("igl", help="conjectured maximum influence I_GL(n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=cmd_igl)

    p = sub.add_parser("family", help="influence of the odd-n counterexample family")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("bounds", help="chromatic numbers and graph influence bounds")
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("search", help="symmetry-reduced counterexample search")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--sym-last", type=int, default=2)
    p.add_argument("--threshold")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("table1", help="maximum influence for every 4-vertex support")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("verify-small", help="exhaustive check of the conjecture for n <= 4")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_verify_small)
    return parser


def dispatch(argv: Sequence[str]) -> tuple[CommandResult, bool]:
    """Run one command; returns the result and whether JSON was requested."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise InputError("missing command; choose one of: " + ", ".join(COMMANDS))
        return args.fn(args), args.json
    except InputError as exc:
        return CommandResult({"error": str(exc)}, f"error: {exc}", EXIT_INPUT), "--json" in argv
    except AssertionError as exc:
        return CommandResult({"error": f"internal check failed: {exc}"}, f"internal error: {exc}", EXIT_INTERNAL), "--json" in argv


COMMANDS = ("influence", "fourier", "qtf-check", "igl", "family", "bounds", "search", "table1", "verify-small")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    result, as_json = dispatch(argv)
    if result.code != EXIT_OK:
        if as_json:
            print(json.dumps(result.body))
        print(result.text, file=sys.stderr)
        return result.code
    if result.lines:
        for line in result.lines:
            print(json.dumps(line, sort_keys=True))
        print(result.text, file=sys.stderr)
    elif as_json:
        print(json.dumps(result.body, indent=2))
    else:
        print(result.text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
