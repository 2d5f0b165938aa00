"""Threshold digraphs, level permutations and the gamma threshold.

Nodes are 0-based throughout the library; the CLI prints them 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .semiring import Matrix, Scalar, Vector, _same_top


@dataclass(frozen=True)
class ThresholdDigraph:
    n: int
    threshold: int
    arcs: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class CycleDecomposition:
    """Permutation digraph of a level-alpha permutation matrix.

    ``sigma[i]`` is the unique node ``j`` with ``a_ij >= alpha``. Cycles list
    their smallest node first and are sorted by that node.
    """

    sigma: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.sigma)

    def cycle_of(self) -> tuple[int, ...]:
        """Index of the cycle containing each node."""
        owner = [0] * self.n
        for u, cyc in enumerate(self.cycles):
            for v in cyc:
                owner[v] = u
        return tuple(owner)

    def arcs(self) -> list[tuple[int, int]]:
        """Consecutive arcs ``(i_j, i_{j+1})`` in canonical cycle order."""
        out = []
        for cyc in self.cycles:
            for pos, i in enumerate(cyc):
                out.append((i, cyc[(pos + 1) % len(cyc)]))
        return out


def _threshold_of(h: int | Scalar, top: int) -> int:
    if isinstance(h, Scalar):
        _same_top(h.top, top)
        return h.ticks
    return int(h)


def threshold_digraph(A: Matrix, h: int | Scalar) -> ThresholdDigraph:
    t = _threshold_of(h, A.top)
    rows, cols = np.nonzero(A.array >= t)
    return ThresholdDigraph(A.n, t, frozenset(zip(rows.tolist(), cols.tolist())))


def cycles_of_permutation(sigma: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = sigma[i]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def is_level_permutation(A: Matrix, alpha: int | Scalar) -> CycleDecomposition | None:
    """Decompose ``G(A, alpha)`` into disjoint cycles, or ``None``.

    Succeeds iff every row and every column has exactly one entry ``>= alpha``.
    """
    t = _threshold_of(alpha, A.top)
    mask = A.array >= t
    if not (mask.sum(axis=1) == 1).all() or not (mask.sum(axis=0) == 1).all():
        return None
    sigma = tuple(np.argmax(mask, axis=1).tolist())
    # Starting each walk from the smallest unseen node gives canonical order.
    return CycleDecomposition(sigma, cycles_of_permutation(sigma))


def gamma(A: Matrix, upper: Vector) -> Scalar:
    """``min(c(A), min_i upper_i)`` where ``c(A)`` is the least row maximum."""
    _same_top(A.top, upper.top)
    if A.n != len(upper):
        raise DimensionError(f"matrix is {A.n}x{A.n} but bound has length {len(upper)}")
    c = int(A.array.max(axis=1).min())
    return Scalar(min(c, min(upper.entries)), A.top)


def gamma_star(A: Matrix, upper: Vector) -> Vector:
    return Vector.constant(A.n, gamma(A, upper).ticks, A.top)
