"""Max-min linear systems ``A ⊗ x = b`` restricted to a box ``X``.

The analytic path never enumerates solutions. It reports the principal
solution (the greatest candidate in ``X``), the cover sets, and exact
solvability and uniqueness verdicts.

Uniqueness is decided after reducing away rows whose right-hand side is
already attained by the lower bound of ``X``. On the reduced system a
column can be lowered below the principal value without breaking the
equation unless it is pinned at its lower bound or it privately covers a
row at exactly the principal value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .semiring import Box, Matrix, Vector, _same_top


@dataclass(frozen=True)
class Reduction:
    """Equivalent smaller system with some rows folded into upper bounds.

    ``rows`` and ``columns`` index the surviving equations and the free
    unknowns of the original system. ``forced`` maps eliminated columns to the
    only value they can take. Solutions of the reduced system extended by
    ``forced`` are exactly the solutions of the original one in ``X``.
    """

    removed_rows: tuple[int, ...]
    forced: dict[int, int]
    rows: tuple[int, ...]
    columns: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    consistent: bool = True
    reason: str | None = None


@dataclass(frozen=True)
class SolveReport:
    principal: Vector
    cover_sets: tuple[frozenset[int], ...]
    solvable: bool
    unique_in_X: bool
    reduction: Reduction
    alternative: Vector | None = field(default=None)

    def to_dict(self) -> dict:
        red = self.reduction
        return {
            "principal": list(self.principal.entries),
            "top": self.principal.top,
            "cover_sets": [sorted(s) for s in self.cover_sets],
            "solvable": self.solvable,
            "unique_in_X": self.unique_in_X,
            "reduction": {
                "removed_rows": list(red.removed_rows),
                "forced": {str(k): v for k, v in sorted(red.forced.items())},
                "rows": list(red.rows),
                "columns": list(red.columns),
                "consistent": red.consistent,
                "reason": red.reason,
            },
            "alternative": None
            if self.alternative is None
            else list(self.alternative.entries),
        }

    @classmethod
    def from_dict(cls, d: dict, matrix: Matrix, b: Vector, X: Box) -> SolveReport:
        """Rebuild a report; the reduced system is recomputed from the instance."""
        top = d["top"]
        red = reduce_system(matrix, b, X)
        return cls(
            principal=Vector(tuple(d["principal"]), top),
            cover_sets=tuple(frozenset(s) for s in d["cover_sets"]),
            solvable=d["solvable"],
            unique_in_X=d["unique_in_X"],
            reduction=red,
            alternative=None
            if d["alternative"] is None
            else Vector(tuple(d["alternative"]), top),
        )


def _check(A: Matrix, b: Vector, X: Box) -> None:
    _same_top(A.top, b.top, X.top)
    if not (A.n == len(b) == X.n):
        raise DimensionError(
            f"matrix is {A.n}x{A.n}, rhs has length {len(b)}, box has dimension {X.n}"
        )


def _principal(a: np.ndarray, b: np.ndarray, upper: np.ndarray) -> np.ndarray:
    # min over rows with a_ij > b_i, defaulting to the upper bound.
    big = np.where(a > b[:, None], b[:, None], np.iinfo(np.int64).max)
    if a.shape[0] == 0:
        return upper.copy()
    return np.minimum(upper, big.min(axis=0))


def _covers(a: np.ndarray, b: np.ndarray, xs: np.ndarray) -> list[frozenset[int]]:
    hit = np.minimum(a, xs[None, :]) == b[:, None]
    return [frozenset(np.nonzero(hit[:, j])[0].tolist()) for j in range(a.shape[1])]


def _analyse(a, b, lower, upper):
    """Return (principal, covers, solvable, unique, alternative) for arrays."""
    m, f = a.shape
    xs = _principal(a, b, upper)
    covers = _covers(a, b, xs)
    covered = set().union(*covers) if covers else set()
    solvable = bool((xs >= lower).all()) and len(covered) == m
    if not solvable:
        return xs, covers, False, False, None
    for j in range(f):
        if xs[j] == lower[j]:
            continue
        others = set().union(*(covers[k] for k in range(f) if k != j))
        tight = {i for i in covers[j] if b[i] == xs[j]}
        if tight <= others:
            slack = [int(b[i]) for i in covers[j] if b[i] < xs[j]]
            alt = xs.copy()
            alt[j] = max([int(lower[j])] + slack)
            return xs, covers, True, False, alt
    return xs, covers, True, True, None


def reduce_system(A: Matrix, b: Vector, X: Box) -> Reduction:
    """Fold equations already attained at the lower bound into upper bounds.

    Row ``i`` is folded when some column ``k`` has ``a_ik >= b_i`` and
    ``lower_k >= b_i``: every ``y`` in ``X`` then attains ``b_i`` in row
    ``i``, and what remains of the equation is ``y_k <= b_i`` for each ``k``
    with ``a_ik > b_i``. In particular every row with ``b_i = lower_i`` and
    ``a_ii >= lower_i`` is folded. Columns whose upper bound drops to their
    lower bound are fixed there and removed.
    """
    _check(A, b, X)
    a = A.array
    bb = b.array
    lo = X.lower.array
    caps = X.upper.array.copy()
    n = A.n

    foldable = [
        i for i in range(n) if ((a[i] >= bb[i]) & (lo >= bb[i])).any()
    ]
    for i in foldable:
        over = a[i] > bb[i]
        caps[over] = np.minimum(caps[over], bb[i])

    def inconsistent(reason: str) -> Reduction:
        return Reduction(
            tuple(foldable), {}, (), (), (), (), (), (), consistent=False, reason=reason
        )

    bad = np.nonzero(caps < lo)[0]
    if bad.size:
        k = int(bad[0])
        return inconsistent(
            f"column {k} must lie in [{int(lo[k])}, {int(caps[k])}], which is empty"
        )

    forced = {k: int(lo[k]) for k in range(n) if caps[k] == lo[k]}
    free = tuple(k for k in range(n) if k not in forced)
    rows = tuple(i for i in range(n) if i not in set(foldable))
    for i in rows:
        for k, v in forced.items():
            if min(int(a[i, k]), v) > bb[i]:
                return inconsistent(
                    f"row {i}: fixed column {k} contributes {min(int(a[i, k]), v)} > {int(bb[i])}"
                )
    return Reduction(
        removed_rows=tuple(foldable),
        forced=forced,
        rows=rows,
        columns=free,
        matrix=tuple(tuple(int(a[i, k]) for k in free) for i in rows),
        rhs=tuple(int(bb[i]) for i in rows),
        lower=tuple(int(lo[k]) for k in free),
        upper=tuple(int(caps[k]) for k in free),
    )


def principal_solution(A: Matrix, b: Vector, X: Box) -> Vector:
    """``x*_j = min({b_i : a_ij > b_i} ∪ {upper_j})``.

    With the full box this is the classical principal solution.
    """
    _check(A, b, X)
    xs = _principal(A.array, b.array, X.upper.array)
    return Vector(tuple(xs.tolist()), A.top)


def cover_sets(A: Matrix, b: Vector, X: Box) -> tuple[frozenset[int], ...]:
    """``M_j = {i : a_ij ⊗ x*_j = b_i}`` for the principal solution in ``X``."""
    xs = principal_solution(A, b, X)
    return tuple(_covers(A.array, b.array, xs.array))


def solve(A: Matrix, b: Vector, X: Box) -> SolveReport:
    _check(A, b, X)
    principal = principal_solution(A, b, X)
    covers = tuple(_covers(A.array, b.array, principal.array))
    red = reduce_system(A, b, X)
    if not red.consistent:
        return SolveReport(principal, covers, False, False, red)

    a = np.asarray(red.matrix, dtype=np.int64).reshape(len(red.rows), len(red.columns))
    _, _, solvable, unique, alt = _analyse(
        a,
        np.asarray(red.rhs, dtype=np.int64),
        np.asarray(red.lower, dtype=np.int64),
        np.asarray(red.upper, dtype=np.int64),
    )
    alternative = None
    if alt is not None:
        full = list(principal.entries)
        for pos, k in enumerate(red.columns):
            full[k] = int(alt[pos])
        alternative = Vector(tuple(full), A.top)
    return SolveReport(principal, covers, solvable, unique, red, alternative)


def is_solvable(A: Matrix, b: Vector, X: Box) -> bool:
    return solve(A, b, X).solvable


def is_unique(A: Matrix, b: Vector, X: Box) -> bool:
    return solve(A, b, X).unique_in_X
