"""Deciding whether every eigenvector in a box is its own unique preimage.

Under the two standing assumptions ``lower < c*(A)`` and
``max(lower) < min(upper)`` this holds exactly when ``A`` is a level
``gamma``-permutation whose cycles satisfy three per-arc conditions
(``A`` is *X-conforming*). The check costs ``O(n^2)`` comparisons on top of
computing the greatest eigenvector.

When the answer is negative a concrete pair of distinct preimages of a
common eigenvector is built and verified before being returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .errors import ConstructionError, DimensionError, NotConformingError
from .graphs import CycleDecomposition, gamma, is_level_permutation
from .semiring import Box, Matrix, Vector, _same_top, matvec
from .spectral import aggregates, greatest_eigenvector


class Verdict(str, enum.Enum):
    SIMPLE = "Simple"
    NOT_SIMPLE = "NotSimple"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class EFVectors:
    e: Vector
    f: Vector


@dataclass(frozen=True)
class Violation:
    """A failed condition on the cycle arc ``(source, target)``.

    ``condition`` is 1 or 2 (an off-cycle entry of row ``source`` is too
    large; ``column`` names it) or 3 (the upper bound of ``target`` exceeds
    the greatest eigenvector there).
    """

    source: int
    target: int
    condition: int
    column: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class Witness:
    b: Vector
    y1: Vector
    y2: Vector
    cause: str


@dataclass(frozen=True)
class ConformismReport:
    applicable: bool
    verdict: Verdict
    gamma: int | None = None
    level_perm: CycleDecomposition | None = None
    ef: EFVectors | None = None
    greatest: Vector | None = None
    violations: tuple[Violation, ...] = ()
    witness: Witness | None = None
    reason: str = ""
    oracle: dict | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        lp = self.level_perm
        return {
            "applicable": self.applicable,
            "verdict": self.verdict.value,
            "gamma": self.gamma,
            "level_perm": None
            if lp is None
            else {"sigma": list(lp.sigma), "cycles": [list(c) for c in lp.cycles]},
            "e": None if self.ef is None else list(self.ef.e.entries),
            "f": None if self.ef is None else list(self.ef.f.entries),
            "greatest": None if self.greatest is None else list(self.greatest.entries),
            "top": None if self.greatest is None else self.greatest.top,
            "violations": [
                {
                    "arc": [v.source, v.target],
                    "condition": v.condition,
                    "column": v.column,
                    "detail": v.detail,
                }
                for v in self.violations
            ],
            "witness": None
            if self.witness is None
            else {
                "b": list(self.witness.b.entries),
                "y1": list(self.witness.y1.entries),
                "y2": list(self.witness.y2.entries),
                "top": self.witness.b.top,
                "cause": self.witness.cause,
            },
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ConformismReport:
        top = d["top"]
        lp = d["level_perm"]
        ef = None
        if d["e"] is not None:
            ef = EFVectors(Vector(tuple(d["e"]), top), Vector(tuple(d["f"]), top))
        w = d["witness"]
        witness = None
        if w is not None:
            witness = Witness(
                Vector(tuple(w["b"]), w["top"]),
                Vector(tuple(w["y1"]), w["top"]),
                Vector(tuple(w["y2"]), w["top"]),
                w["cause"],
            )
        return cls(
            applicable=d["applicable"],
            verdict=Verdict(d["verdict"]),
            gamma=d["gamma"],
            level_perm=None
            if lp is None
            else CycleDecomposition(
                tuple(lp["sigma"]), tuple(tuple(c) for c in lp["cycles"])
            ),
            ef=ef,
            greatest=None if d["greatest"] is None else Vector(tuple(d["greatest"]), top),
            violations=tuple(
                Violation(v["arc"][0], v["arc"][1], v["condition"], v["column"], v["detail"])
                for v in d["violations"]
            ),
            witness=witness,
            reason=d["reason"],
        )


def _check_dims(A: Matrix, X: Box) -> None:
    _same_top(A.top, X.top)
    if A.n != X.n:
        raise DimensionError(f"matrix is {A.n}x{A.n} but box has dimension {X.n}")


def preconditions(A: Matrix, X: Box) -> tuple[bool, str]:
    """``lower < c*(A)`` strictly and ``max(lower) < min(upper)``."""
    c = aggregates(A).c.ticks
    lo_max = max(X.lower.entries)
    if lo_max >= c:
        return False, f"lower bound reaches c(A)={c} (max lower = {lo_max})"
    up_min = min(X.upper.entries)
    if lo_max >= up_min:
        return False, f"max lower = {lo_max} is not below min upper = {up_min}"
    return True, ""


def ef_vectors(
    A: Matrix, X: Box, cycles: CycleDecomposition, greatest: Vector | None = None
) -> EFVectors:
    """Per-cycle max of the lower bound and per-cycle min of ``upper ⊗ x⊕``."""
    _check_dims(A, X)
    if greatest is None:
        greatest = greatest_eigenvector(A)
    e = [0] * A.n
    f = [0] * A.n
    for cyc in cycles.cycles:
        ev = max(X.lower[v] for v in cyc)
        fv = min(min(X.upper[v], greatest[v]) for v in cyc)
        for v in cyc:
            e[v], f[v] = ev, fv
    return EFVectors(Vector(tuple(e), A.top), Vector(tuple(f), A.top))


def _violations(
    A: Matrix, X: Box, cycles: CycleDecomposition, ef: EFVectors, greatest: Vector
) -> list[Violation]:
    a = A.array
    lo, up = X.lower, X.upper
    e, f = ef.e, ef.f
    out: list[Violation] = []
    for cyc in cycles.cycles:
        arc_min = min(int(a[i, cycles.sigma[i]]) for i in cyc)
        for i in cyc:
            j = cycles.sigma[i]
            row = a[i].copy()
            row[j] = -1
            k = int(np.argmax(row))
            off = int(row[k])
            if lo[j] < e[j] and off >= e[i]:
                out.append(
                    Violation(i, j, 1, k, f"lower[{j}]={lo[j]} < e={e[j]} but a[{i},{k}]={off} >= e={e[i]}")
                )
            elif lo[j] == e[j] and off > e[i]:
                out.append(
                    Violation(i, j, 2, k, f"lower[{j}]={lo[j]} = e but a[{i},{k}]={off} > e={e[i]}")
                )
            w = int(a[i, j])
            if w == greatest[i]:
                # The greatest eigenvector can only touch the weakest arc of a cycle.
                assert w == arc_min, (i, j, w, arc_min)
            if w == arc_min == greatest[j] == f[j] and up[j] > greatest[j]:
                out.append(
                    Violation(
                        i,
                        j,
                        3,
                        None,
                        f"a[{i},{j}]={w} is the cycle minimum and equals x⊕ and f at {j}, "
                        f"but upper[{j}]={up[j]} > {greatest[j]}",
                    )
                )
    return out


def _verify_witness(A: Matrix, X: Box, w: Witness) -> Witness:
    ok = (
        w.y1 != w.y2
        and w.y1 in X.lift(w.y1.top)
        and w.y2 in X.lift(w.y2.top)
        and w.b in X.lift(w.b.top)
    )
    if ok:
        Al = A.lift(w.b.top)
        ok = matvec(Al, w.y1) == w.b == matvec(Al, w.y2) and matvec(Al, w.b) == w.b
    if not ok:
        raise ConstructionError(f"witness failed substitution: {w}")
    return w


def _non_permutation_witness(A: Matrix, X: Box, g: int) -> Witness:
    a = A.array
    mask = a >= g
    n = A.n
    star = Vector.constant(n, g, A.top)
    empty_cols = np.nonzero(~mask.any(axis=0))[0]
    if empty_cols.size:
        k = int(empty_cols[0])
        cause = f"column {k} has no entry >= {g}"
    else:
        # Columns that are the only large entry of some row cannot be dropped.
        pinned = {int(np.argmax(mask[i])) for i in range(n) if mask[i].sum() == 1}
        k = next(v for v in range(n) if v not in pinned)
        cause = f"every row keeps an entry >= {g} without column {k}"
    return Witness(star, star, star.replace(k, X.lower[k]), cause)


def _cycle_witness(
    A: Matrix,
    X: Box,
    g: int,
    cycles: CycleDecomposition,
    ef: EFVectors,
    viol: Violation,
) -> Witness:
    a = A.array
    sigma = cycles.sigma
    if viol.condition == 3:
        b = ef.f
        t = viol.target
        return Witness(b, b, b.replace(t, X.upper[t]), f"condition 3 on arc ({viol.source},{t})")

    cyc = cycles.cycles[cycles.cycle_of()[viol.source]]
    below = [(int(a[t, v]), t, v) for t in cyc for v in range(A.n) if a[t, v] < g]
    if not below:
        raise ConstructionError("no entry below gamma on the offending cycle")
    d = max(w for w, _, _ in below)
    # Prefer the violating row itself when it attains d: that keeps y2 != y1.
    rows = [t for w, t, _ in below if w == d]
    p = viol.source if viol.source in rows else rows[0]
    target = [d if v in cyc else g for v in range(A.n)]
    b = Vector(tuple(target), A.top)
    q = sigma[p]
    return Witness(
        b, b, b.replace(q, X.lower[q]), f"condition {viol.condition} on arc ({viol.source},{viol.target})"
    )


def witness_second_solution(A: Matrix, X: Box, report: ConformismReport) -> Witness:
    """Two distinct preimages in ``X`` of one eigenvector in ``X``.

    Falls back to a brute-force search when the direct construction does not
    verify (possible only in degenerate corners such as no entries below
    gamma on the offending cycle).
    """
    if report.verdict is not Verdict.NOT_SIMPLE:
        raise ConstructionError(f"no witness exists for verdict {report.verdict.value}")
    g = report.gamma
    try:
        if report.level_perm is None:
            w = _non_permutation_witness(A, X, g)
        else:
            w = _cycle_witness(A, X, g, report.level_perm, report.ef, report.violations[0])
        return _verify_witness(A, X, w)
    except (ConstructionError, StopIteration):
        found = oracle.brute_x_simple(A, X)
        if found.holds:
            raise ConstructionError("oracle found no second preimage either") from None
        b, y1, y2 = found.counterexample
        return _verify_witness(A, X, Witness(b, y1, y2, "oracle search"))


def check_conforming(
    A: Matrix,
    X: Box,
    force_oracle: bool = False,
    points_per_gap: int = 2,
    limits: oracle.OracleLimits = oracle.DEFAULT_LIMITS,
) -> ConformismReport:
    """Decide whether ``A`` has X-simple image eigenspace.

    Returns ``Inapplicable`` outside the standing assumptions unless
    ``force_oracle`` is set, in which case the brute-force verdict is used.
    """
    _check_dims(A, X)
    ok, why = preconditions(A, X)
    if not ok:
        if not force_oracle:
            return ConformismReport(False, Verdict.INAPPLICABLE, reason=why)
        found = oracle.brute_x_simple(A, X, points_per_gap, limits)
        witness = None
        if not found.holds:
            b, y1, y2 = found.counterexample
            witness = _verify_witness(A, X, Witness(b, y1, y2, "oracle search"))
        return ConformismReport(
            False,
            Verdict.SIMPLE if found.holds else Verdict.NOT_SIMPLE,
            witness=witness,
            reason=why + "; decided by brute force",
            oracle={"grid": found.grid.to_dict(), "eigenvectors": found.checked},
        )

    g = gamma(A, X.upper).ticks
    cycles = is_level_permutation(A, g)
    if cycles is None:
        report = ConformismReport(
            True,
            Verdict.NOT_SIMPLE,
            gamma=g,
            reason=f"A is not a level {g}-permutation",
        )
        return _with_witness(A, X, report)

    greatest = greatest_eigenvector(A)
    ef = ef_vectors(A, X, cycles, greatest)
    viol = _violations(A, X, cycles, ef, greatest)
    report = ConformismReport(
        True,
        Verdict.NOT_SIMPLE if viol else Verdict.SIMPLE,
        gamma=g,
        level_perm=cycles,
        ef=ef,
        greatest=greatest,
        violations=tuple(viol),
        reason="" if not viol else f"{len(viol)} violated condition(s)",
    )
    return _with_witness(A, X, report) if viol else report


def _with_witness(A: Matrix, X: Box, report: ConformismReport) -> ConformismReport:
    w = witness_second_solution(A, X, report)
    return ConformismReport(
        report.applicable,
        report.verdict,
        report.gamma,
        report.level_perm,
        report.ef,
        report.greatest,
        report.violations,
        w,
        report.reason,
    )


def eigenspace_structure(
    A: Matrix, X: Box, report: ConformismReport | None = None
) -> list[tuple[tuple[int, ...], tuple[int, int]]]:
    """Per-cycle value ranges describing every eigenvector in ``X``.

    An eigenvector in ``X`` is exactly a vector that is constant on each
    cycle, with the cycle's value inside the returned ``(lo, hi)`` range.
    """
    if report is None:
        report = check_conforming(A, X)
    if report.verdict is not Verdict.SIMPLE or not report.applicable:
        raise NotConformingError(f"verdict is {report.verdict.value}: {report.reason}")
    e, f = report.ef.e, report.ef.f
    return [(cyc, (e[cyc[0]], f[cyc[0]])) for cyc in report.level_perm.cycles]
