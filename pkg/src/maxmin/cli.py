"""Command-line frontend.

    maxmin eigen --input example.json
    maxmin solve --input example.json --b 5,6,6,5
    maxmin check-conforming --input example.json --json

Exit codes: 0 the property holds or the system is solved, 1 it fails (a
witness is printed), 2 inapplicable or unsolvable, 3 usage error, 4 the
instance could not be read.

Human output labels nodes from 1; ``--json`` output keeps 0-based indices so
it maps straight back onto library objects.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

import numpy as np

from . import oracle, sampling
from .conformism import ConformismReport, Verdict, check_conforming
from .errors import InstanceError, MaxMinError
from .instance import InstanceFile, parse_instance
from .robustness import robustness_report
from .semiring import Box, Matrix, Vector
from .solver import solve
from .spectral import aggregates, greatest_eigenvector_trace, orbit

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INAPPLICABLE = 2
EXIT_USAGE = 3
EXIT_PARSE = 4

COMMANDS = ("eigen", "orbit", "check-conforming", "solve", "robust", "verify")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="maxmin", description="Max-min linear algebra checks on small instances.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", metavar="PATH", help="JSON instance file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--b", type=_int_list, metavar="LIST", help="right-hand side, e.g. 5,6,6,5")
    p.add_argument("--x0", type=_int_list, metavar="LIST", help="orbit start vector")
    p.add_argument("--force-oracle", action="store_true", help="decide by enumeration when the analytic test does not apply")
    p.add_argument("--max-oracle-n", type=int, metavar="K", default=oracle.DEFAULT_LIMITS.max_n)
    p.add_argument("--seed", type=int, metavar="S", default=0)
    p.add_argument("--trials", type=int, default=200, help="random instances for verify without --input")
    p.add_argument("--grid-refine", action="store_true", help="quadruple the oracle grid denominator")
    return p


# ---------------------------------------------------------------- formatting


def _fmt(v: Vector | Sequence[int] | None, base: int | None = None) -> str:
    if v is None:
        return "-"
    if isinstance(v, Vector):
        s = str(v)
        if base is not None and v.top != base:
            s += f" on 0..{v.top}"
        return s
    return "(" + ",".join(str(x) for x in v) + ")"


def _table(rows: Sequence[tuple[str, Any]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _one_based(cycles) -> str:
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


# ---------------------------------------------------------------- commands


class Context:
    def __init__(self, args: argparse.Namespace, inst: InstanceFile):
        self.args = args
        self.inst = inst
        self.A = inst.A
        self.limits = oracle.OracleLimits(max_n=args.max_oracle_n)
        self.refine = args.grid_refine

    def ppg(self, base: int) -> int:
        return 4 * (base + 1) - 1 if self.refine else base

    def vector(self, flag: str, key: str, command: str) -> Vector:
        raw = getattr(self.args, flag)
        if raw is None:
            raw = getattr(self.inst, key)
        if raw is None:
            raise UsageError(f"{command} needs --{flag.replace('_', '-')} or a {key!r} field")
        if len(raw) != self.A.n:
            raise UsageError(f"--{flag}: length {len(raw)} does not match matrix size {self.A.n}")
        for x in raw:
            if not 0 <= x <= self.A.top:
                raise UsageError(f"--{flag}: tick {x} out of range [0, {self.A.top}]")
        return Vector(tuple(raw), self.A.top)


def cmd_eigen(ctx: Context) -> tuple[int, dict, str]:
    agg = aggregates(ctx.A)
    tr = greatest_eigenvector_trace(ctx.A)
    data = {
        "greatest": list(tr.vector.entries),
        "c": agg.c.ticks,
        "cstar": list(agg.cstar.entries),
        "m_A": agg.m_A.ticks,
        "iterations": tr.iterations,
        "early_exit": tr.early_exit,
    }
    text = _table(
        [
            ("x⊕(A)", _fmt(tr.vector)),
            ("c(A)", agg.c.ticks),
            ("c*(A)", _fmt(agg.cstar)),
            ("m_A", agg.m_A.ticks),
            ("iterations", f"{tr.iterations}{' (early exit)' if tr.early_exit else ''}"),
        ]
    )
    return EXIT_OK, data, text


def cmd_orbit(ctx: Context) -> tuple[int, dict, str]:
    x0 = ctx.vector("x0", "vector", "orbit")
    orb = orbit(ctx.A, x0)
    data = {
        "transient": orb.transient,
        "period": orb.period,
        "trace": [list(v.entries) for v in orb.prefix],
        "hits_eigenvector": orb.hits_eigenvector,
    }
    rows = [("transient", orb.transient), ("period", orb.period)]
    rows += [(f"x^({k})", _fmt(v)) for k, v in enumerate(orb.prefix)]
    text = _table(rows) + (
        "\nreaches a fixed point" if orb.hits_eigenvector else "\ncycles without a fixed point"
    )
    return (EXIT_OK if orb.hits_eigenvector else EXIT_FAILS), data, text


def _conforming_text(rep: ConformismReport) -> str:
    rows: list[tuple[str, Any]] = [("verdict", rep.verdict.value)]
    if rep.reason:
        rows.append(("reason", rep.reason))
    if rep.gamma is not None:
        rows.append(("gamma", rep.gamma))
    if rep.level_perm is not None:
        rows.append(("cycles", _one_based(rep.level_perm.cycles)))
    if rep.greatest is not None:
        rows.append(("x⊕(A)", _fmt(rep.greatest)))
    if rep.ef is not None:
        rows += [("e", _fmt(rep.ef.e)), ("f", _fmt(rep.ef.f))]
    for v in rep.violations:
        where = f"arc ({v.source + 1},{v.target + 1})"
        col = "" if v.column is None else f", column {v.column + 1}"
        rows.append(("violation", f"condition {v.condition} on {where}{col}"))
    if rep.witness is not None:
        w = rep.witness
        rows += [
            ("witness b", _fmt(w.b)),
            ("witness y1", _fmt(w.y1)),
            ("witness y2", _fmt(w.y2)),
            ("witness via", w.cause),
        ]
    if rep.oracle is not None:
        rows.append(("decided by", "enumeration"))
    return _table(rows)


def _conforming_exit(rep: ConformismReport) -> int:
    return {
        Verdict.SIMPLE: EXIT_OK,
        Verdict.NOT_SIMPLE: EXIT_FAILS,
        Verdict.INAPPLICABLE: EXIT_INAPPLICABLE,
    }[rep.verdict]


def cmd_check_conforming(ctx: Context) -> tuple[int, dict, str]:
    rep = check_conforming(
        ctx.A, ctx.inst.box, ctx.args.force_oracle, ctx.ppg(2), ctx.limits
    )
    return _conforming_exit(rep), rep.to_dict(), _conforming_text(rep)


def cmd_solve(ctx: Context) -> tuple[int, dict, str]:
    b = ctx.vector("b", "b", "solve")
    rep = solve(ctx.A, b, ctx.inst.box)
    rows: list[tuple[str, Any]] = [
        ("solvable", "yes" if rep.solvable else "no"),
        ("unique in X", "yes" if rep.unique_in_X else "no"),
        ("principal", _fmt(rep.principal)),
    ]
    rows += [
        (f"M_{j + 1}", "{" + ",".join(str(i + 1) for i in sorted(s)) + "}")
        for j, s in enumerate(rep.cover_sets)
    ]
    if rep.alternative is not None:
        rows.append(("other solution", _fmt(rep.alternative)))
    if rep.reduction.reason:
        rows.append(("reason", rep.reduction.reason))
    code = EXIT_OK if rep.solvable else EXIT_INAPPLICABLE
    return code, rep.to_dict(), _table(rows)


def cmd_robust(ctx: Context) -> tuple[int, dict, str]:
    X = ctx.inst.box if ctx.inst.has_box else None
    rep = robustness_report(ctx.A, X, ctx.ppg(2), ctx.limits)
    yn = {True: "yes", False: "no", None: "-"}
    rows: list[tuple[str, Any]] = [("weakly robust", yn[rep.weakly_robust])]
    if rep.counterexample is not None:
        rows.append(("attracted non-fixed x", _fmt(rep.counterexample, ctx.A.top)))
    if X is not None:
        rows += [("weakly X-robust", yn[rep.weakly_x_robust]), ("X invariant", yn[rep.x_invariant])]
        if rep.x_counterexample is not None:
            rows.append(("attracted non-fixed x in X", _fmt(rep.x_counterexample, ctx.A.top)))
    holds = rep.weakly_robust if X is None else rep.weakly_x_robust
    return (EXIT_OK if holds else EXIT_FAILS), rep.to_dict(), _table(rows)


# ---------------------------------------------------------------- verify


def _verify_instance(A: Matrix, X: Box, b: Vector | None, ctx: Context) -> list[dict]:
    """Analytic verdicts next to brute-force ones for one instance."""
    checks = []
    limits = ctx.limits

    def add(name: str, analytic: Any, brute: Any) -> None:
        checks.append({"check": name, "analytic": analytic, "oracle": brute, "agree": analytic == brute})

    x_plus = greatest_eigenvector_trace(A).vector
    add("greatest eigenvector", list(x_plus.entries), list(oracle.brute_greatest_eigenvector(A, limits).entries))

    rep = check_conforming(A, X, False, ctx.ppg(2), limits)
    if rep.verdict is not Verdict.INAPPLICABLE:
        brute = oracle.brute_x_simple(A, X, ctx.ppg(2), limits)
        add("X-simple image eigenspace", rep.verdict is Verdict.SIMPLE, brute.holds)

    if b is not None:
        s = solve(A, b, X)
        sols = oracle.enumerate_solutions(A, b, X, points_per_gap=ctx.ppg(1), limits=limits)
        add("solvable", s.solvable, len(sols) > 0)
        add("unique in X", s.unique_in_X, len(sols) == 1)
        if s.solvable and len(sols) > 0:
            top = sols.grid.top
            best = tuple(max(col) for col in zip(*(v.entries for v in sols.points)))
            add("principal solution", list(s.principal.lift(top).entries), list(best))
    return checks


def _dump(inst: InstanceFile) -> None:
    print(f"disagreement on instance: {inst.dumps()}", file=sys.stderr)


def cmd_verify(ctx: Context | None, args: argparse.Namespace) -> tuple[int, dict, str]:
    if ctx is not None:
        inst = ctx.inst
        checks = _verify_instance(ctx.A, inst.box, inst.vec("b"), ctx)
        ok = all(c["agree"] for c in checks)
        if not ok:
            _dump(inst)
        rows = [
            (c["check"], f"analytic={c['analytic']} oracle={c['oracle']} {'ok' if c['agree'] else 'MISMATCH'}")
            for c in checks
        ]
        return (EXIT_OK if ok else EXIT_FAILS), {"checks": checks, "agree": ok}, _table(rows)

    rng = np.random.default_rng(args.seed)
    dummy = InstanceFile(1, ((0,),))
    vctx = Context(args, dummy)
    bad = 0
    total = 0
    for t in range(args.trials):
        n = int(rng.integers(2, 4))
        A, X = sampling.conformism_instance(rng, n, biased=bool(t % 2))
        b = Vector(tuple(rng.choice(sampling.palette(rng, A.top), size=n).tolist()), A.top)
        checks = _verify_instance(A, X, b, vctx)
        total += len(checks)
        if not all(c["agree"] for c in checks):
            bad += 1
            _dump(
                InstanceFile(
                    A.top, A.entries, X.lower.entries, X.upper.entries, None, b.entries
                )
            )
    data = {"seed": args.seed, "trials": args.trials, "checks": total, "disagreements": bad}
    text = _table(
        [("seed", args.seed), ("instances", args.trials), ("checks", total), ("disagreements", bad)]
    )
    return (EXIT_OK if bad == 0 else EXIT_FAILS), data, text


# ---------------------------------------------------------------- entry point

HANDLERS: dict[str, Callable[[Context], tuple[int, dict, str]]] = {
    "eigen": cmd_eigen,
    "orbit": cmd_orbit,
    "check-conforming": cmd_check_conforming,
    "solve": cmd_solve,
    "robust": cmd_robust,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        inst = parse_instance(args.input) if args.input else None
    except InstanceError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    try:
        if args.command == "verify":
            ctx = None if inst is None else Context(args, inst)
            code, data, text = cmd_verify(ctx, args)
        else:
            if inst is None:
                raise UsageError(f"{args.command} needs --input")
            code, data, text = HANDLERS[args.command](Context(args, inst))
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except MaxMinError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(json.dumps({"command": args.command, "exit_code": code, "report": data}), file=out)
    else:
        print(text, file=out)
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


__all__ = ["build_parser", "run", "main"]
