"""Attraction, weak (X-)robustness, box invariance and upwardness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .errors import DimensionError, MaxMinError
from .oracle import DEFAULT_LIMITS, OracleLimits, OracleVerdict
from .semiring import Box, Matrix, Vector, _same_top, matvec, scalar_times
from .solver import is_unique
from .spectral import is_eigenvector, orbit


class InconsistentSweepError(MaxMinError):
    """Equivalent brute-force readings of one property disagreed."""


@dataclass(frozen=True)
class RobustnessReport:
    weakly_robust: bool
    weakly_x_robust: bool | None
    x_invariant: bool | None
    counterexample: Vector | None = None
    x_counterexample: Vector | None = None
    grid_top: int | None = None

    def to_dict(self) -> dict:
        return {
            "weakly_robust": self.weakly_robust,
            "weakly_x_robust": self.weakly_x_robust,
            "x_invariant": self.x_invariant,
            "counterexample": _pair(self.counterexample),
            "x_counterexample": _pair(self.x_counterexample),
            "grid_top": self.grid_top,
        }

    @classmethod
    def from_dict(cls, d: dict) -> RobustnessReport:
        def vec(p: dict | None) -> Vector | None:
            return None if p is None else Vector(tuple(p["entries"]), p["top"])

        return cls(
            d["weakly_robust"],
            d["weakly_x_robust"],
            d["x_invariant"],
            vec(d["counterexample"]),
            vec(d["x_counterexample"]),
            d["grid_top"],
        )


def _pair(v: Vector | None) -> dict | None:
    return None if v is None else {"entries": list(v.entries), "top": v.top}


def in_attraction(A: Matrix, x: Vector) -> bool:
    return orbit(A, x).hits_eigenvector


def _confirm_attracted(A: Matrix, x: Vector) -> None:
    A = A.lift(x.top)
    if not in_attraction(A, x) or is_eigenvector(A, x):
        raise InconsistentSweepError(f"counterexample {x} does not verify")


def is_weakly_robust(
    A: Matrix, points_per_gap: int = 2, limits: OracleLimits = DEFAULT_LIMITS
) -> OracleVerdict:
    """Only fixed points are attracted to fixed points.

    Checks ``A⊗x ∈ V(A) ⇒ x ∈ V(A)``, the orbit definition and "every
    eigenvector is a simple image eigenvector" over the critical grid of the
    full box, and insists the three agree.
    """
    sweep = oracle.weak_robustness_sweep(A, None, points_per_gap, limits)
    verdicts = {k: v.holds for k, v in sweep.items()}
    if len(set(verdicts.values())) != 1:
        raise InconsistentSweepError(f"weak robustness readings disagree: {verdicts}")
    result = sweep["implication"]
    if not result.holds:
        _confirm_attracted(A, result.counterexample[0])
    return result


def is_weakly_x_robust(
    A: Matrix, X: Box, points_per_gap: int = 2, limits: OracleLimits = DEFAULT_LIMITS
) -> OracleVerdict:
    """No grid point of ``X`` is attracted without already being fixed."""
    _same_top(A.top, X.top)
    sweep = oracle.weak_robustness_sweep(A, X, points_per_gap, limits)
    result = sweep["orbit"]
    if not result.holds:
        _confirm_attracted(A, result.counterexample[0])
    return result


def is_invariant(A: Matrix, X: Box) -> bool:
    """``A`` maps ``X`` into itself iff ``A⊗lower >= lower`` and ``A⊗upper <= upper``."""
    return matvec(A, X.lower) >= X.lower and matvec(A, X.upper) <= X.upper


def is_x_simple_vector(A: Matrix, X: Box, v: Vector, check_oracle: bool = False) -> bool:
    if v not in X:
        raise ValueError(f"{v} is not in {X}")
    verdict = is_eigenvector(A, v) and is_unique(A, v, X)
    if check_oracle:
        brute = oracle.brute_x_simple_vector(A, X, v)
        if brute != verdict:
            raise InconsistentSweepError(
                f"solver says {verdict}, brute force says {brute} for {v}"
            )
    return verdict


@dataclass(frozen=True)
class UpwardnessResult:
    holds: bool
    simple: dict[int, bool]
    vacuous: bool = False
    violation: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def admissible_range(X: Box) -> tuple[int, int]:
    return max(X.lower.entries), min(X.upper.entries)


def upwardness_check(
    A: Matrix, X: Box, x: Vector, alphas: Sequence[int], check_oracle: bool = False
) -> UpwardnessResult:
    """If ``alpha⊗x`` is X-simple then so is ``beta⊗x`` for every listed ``beta >= alpha``."""
    if not is_eigenvector(A, x):
        raise ValueError(f"{x} is not a fixed point of A")
    lo, hi = admissible_range(X)
    for a in alphas:
        if not lo <= a <= hi:
            raise ValueError(f"alpha={a} outside admissible range [{lo}, {hi}]")
    if len(x) != X.n:
        raise DimensionError("vector and box dimensions differ")
    # alpha⊗x lies in X for one admissible alpha iff x >= lower, and then for all.
    if not x >= X.lower:
        return UpwardnessResult(True, {}, vacuous=True)
    simple = {
        a: is_x_simple_vector(A, X, scalar_times(a, x), check_oracle)
        for a in sorted(set(alphas))
    }
    ordered = sorted(simple)
    for i, a in enumerate(ordered):
        if not simple[a]:
            continue
        for b in ordered[i + 1 :]:
            if not simple[b]:
                return UpwardnessResult(False, simple, violation=(a, b))
    return UpwardnessResult(True, simple)


def robustness_report(
    A: Matrix,
    X: Box | None = None,
    points_per_gap: int = 2,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> RobustnessReport:
    def coarse(v: OracleVerdict) -> Vector | None:
        return None if v.holds else oracle._coarsest(v.counterexample, A.top)[0]

    weak = is_weakly_robust(A, points_per_gap, limits)
    cex = coarse(weak)
    if X is None:
        return RobustnessReport(weak.holds, None, None, cex, None, weak.grid.top)
    wx = is_weakly_x_robust(A, X, points_per_gap, limits)
    return RobustnessReport(
        weak.holds,
        wx.holds,
        is_invariant(A, X),
        cex,
        coarse(wx),
        weak.grid.top,
    )
