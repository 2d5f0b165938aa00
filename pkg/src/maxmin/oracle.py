"""Brute-force ground truth on finite critical grids.

Nothing here calls the analytic modules: every verdict comes from evaluating
``A ⊗ y`` on every point of a grid.

Why a finite grid is enough. Let S be the set of values that occur in the
instance (entries of A, the box bounds, a right-hand side when there is one).
Any non-decreasing map of the chain that fixes S commutes with ``max``,
``min`` and therefore with ``A ⊗ ·``, and keeps boxes with bounds in S
invariant. Collapsing every open gap of S to one interior point therefore
maps a solution of ``A ⊗ y = b`` (b over S) to a grid solution, and keeps it
different from ``b`` if it was. For properties that involve two free vectors
at once (an eigenvector and a second preimage, or a point and its image)
one interior point per gap can merge the two; two interior points per gap,
with the split placed between them, keep them apart. Hence:

* solution sets for a fixed right-hand side use one interior point per gap;
* eigenvector/preimage pairs, weak robustness and attraction use two, and
  the preimages of grid eigenvectors are then searched on the midpoint
  refinement of that grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionError, OracleLimitError
from .semiring import Box, Matrix, Vector, _same_top, common_top

_CHUNK = 250_000


@dataclass(frozen=True)
class OracleLimits:
    max_n: int = 4
    max_per_coordinate: int = 64
    max_points: int = 5_000_000


DEFAULT_LIMITS = OracleLimits()


@dataclass(frozen=True)
class CriticalGrid:
    """Per-coordinate candidate ticks over a refined chain.

    ``top`` is the refined chain size, ``scale`` the refinement factor with
    respect to the instance's own ``top``.
    """

    top: int
    scale: int
    candidates: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.candidates)

    @property
    def size(self) -> int:
        out = 1
        for c in self.candidates:
            out *= len(c)
        return out

    def values(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*map(set, self.candidates))))

    def points(self) -> np.ndarray:
        if self.size == 0:
            return np.zeros((0, self.n), dtype=np.int64)
        mesh = np.meshgrid(*[np.asarray(c, dtype=np.int64) for c in self.candidates], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def chunks(self, size: int = _CHUNK) -> Iterator[np.ndarray]:
        """``points()`` in blocks of at most ``size`` rows, same order."""
        cands = [np.asarray(c, dtype=np.int64) for c in self.candidates]
        shape = tuple(len(c) for c in cands)
        for start in range(0, self.size, size):
            idx = np.unravel_index(np.arange(start, min(start + size, self.size)), shape)
            yield np.stack([c[i] for c, i in zip(cands, idx)], axis=1)

    def image_blocks(self, a: np.ndarray) -> Iterator[tuple[int, np.ndarray]]:
        """``A ⊗ y`` over the whole grid, one block per first-coordinate value.

        Yields ``(offset, images)`` where ``images[k]`` belongs to grid point
        number ``offset + k`` in ``points()`` order. Partial maxima over the
        trailing coordinates are shared between blocks.
        """
        cands = [np.asarray(c, dtype=np.int64) for c in self.candidates]
        if self.size == 0:
            return
        # tables[j][c] = column j of A cut at candidate c
        tables = [np.minimum(a[:, j][None, :], c[:, None]) for j, c in enumerate(cands)]
        tail = np.zeros((1, a.shape[0]), dtype=np.int64)
        for t in tables[1:]:
            tail = np.maximum(tail[:, None, :], t[None, :, :]).reshape(-1, a.shape[0])
        step = len(tail)
        for c0 in range(len(cands[0])):
            yield c0 * step, np.maximum(tail, tables[0][c0][None, :])

    def points_at(self, flat: np.ndarray) -> np.ndarray:
        """Grid points with the given positions in ``points()`` order."""
        shape = tuple(len(c) for c in self.candidates)
        idx = np.unravel_index(flat, shape)
        return np.stack(
            [np.asarray(c, dtype=np.int64)[i] for c, i in zip(self.candidates, idx)], axis=1
        ).reshape(len(flat), self.n)

    def check(self, limits: OracleLimits) -> None:
        if self.n > limits.max_n:
            raise OracleLimitError(f"n={self.n} exceeds oracle limit {limits.max_n}")
        widest = max((len(c) for c in self.candidates), default=0)
        if widest > limits.max_per_coordinate:
            raise OracleLimitError(
                f"{widest} candidates in one coordinate exceeds limit {limits.max_per_coordinate}"
            )
        if self.size > limits.max_points:
            raise OracleLimitError(f"grid of {self.size} points exceeds limit {limits.max_points}")

    def to_dict(self) -> dict:
        return {"top": self.top, "scale": self.scale, "candidates": [list(c) for c in self.candidates]}


@dataclass(frozen=True)
class OracleSet:
    """A set of grid vectors together with the grid it was drawn from."""

    grid: CriticalGrid
    points: frozenset[Vector]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vector]:
        return iter(sorted(self.points, key=lambda v: v.entries))

    def __contains__(self, v: Vector) -> bool:
        if v.top != self.grid.top:
            v = v.lift(self.grid.top)
        return v in self.points

    def coarse(self, top: int) -> frozenset[Vector]:
        """The members that are exactly representable over ``top``."""
        k = self.grid.top // top
        return frozenset(
            Vector(tuple(e // k for e in v.entries), top)
            for v in self.points
            if all(e % k == 0 for e in v.entries)
        )


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of a brute-force sweep; truthy iff the property holds."""

    holds: bool
    grid: CriticalGrid
    counterexample: tuple[Vector, ...] | None = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def critical_grid(
    sources: Iterable[int], box: Box, points_per_gap: int = 1
) -> CriticalGrid:
    """Grid of ``sources`` plus ``points_per_gap`` equally spaced interior
    points in every gap between consecutive sources, clipped to ``box``.

    ``sources`` are ticks over ``box.top``; the box bounds are always added.
    """
    if points_per_gap < 0:
        raise ValueError("points_per_gap must be non-negative")
    scale = points_per_gap + 1
    s = sorted(set(int(v) for v in sources) | set(box.lower) | set(box.upper))
    values = {v * scale for v in s}
    for lo, hi in zip(s, s[1:]):
        values.update(lo * scale + q * (hi - lo) for q in range(1, scale))
    ordered = sorted(values)
    cands = tuple(
        tuple(v for v in ordered if lo * scale <= v <= hi * scale)
        for lo, hi in zip(box.lower, box.upper)
    )
    return CriticalGrid(box.top * scale, scale, cands)


def tick_grid(box: Box) -> CriticalGrid:
    """Every integer tick of ``box``; no refinement."""
    return CriticalGrid(
        box.top, 1, tuple(tuple(range(lo, hi + 1)) for lo, hi in zip(box.lower, box.upper))
    )


def _images(a: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """``A ⊗ y`` for every row ``y`` of ``pts``."""
    n = a.shape[1]
    if len(pts) == 0 or n == 0:
        return np.zeros((len(pts), a.shape[0]), dtype=np.int64)
    out = np.minimum(a[None, :, 0], pts[:, 0:1])
    for j in range(1, n):
        np.maximum(out, np.minimum(a[None, :, j], pts[:, j : j + 1]), out=out)
    return out


def _encode(rows: np.ndarray, top: int) -> np.ndarray:
    """One integer per row, injective for ticks in ``0..top``."""
    if (top + 1) ** rows.shape[1] >= 2**62:
        raise OracleLimitError(f"cannot key {rows.shape[1]}-vectors over 0..{top}")
    weights = (top + 1) ** np.arange(rows.shape[1], dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _vec(row: np.ndarray, top: int) -> Vector:
    return Vector(tuple(int(v) for v in row), top)


def _lexmin(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def _align(A: Matrix, X: Box, *vectors: Vector) -> tuple[int, Matrix, Box, list[Vector]]:
    _same_top(A.top, X.top)
    if A.n != X.n:
        raise DimensionError(f"matrix is {A.n}x{A.n} but box has dimension {X.n}")
    for v in vectors:
        if len(v) != A.n:
            raise DimensionError(f"vector of length {len(v)} for {A.n}x{A.n} matrix")
    top = common_top(A.top, *(v.top for v in vectors))
    return top, A.lift(top), X.lift(top), [v.lift(top) for v in vectors]


def _matrix_values(A: Matrix) -> set[int]:
    return set(int(v) for v in np.unique(A.array))


def enumerate_eigenvectors(
    A: Matrix,
    X: Box,
    grid: CriticalGrid | None = None,
    points_per_gap: int = 2,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> OracleSet:
    """All grid points ``x`` of ``X`` with ``A ⊗ x = x``."""
    top, A, X, _ = _align(A, X)
    if grid is None:
        grid = critical_grid(_matrix_values(A), X, points_per_gap)
    grid.check(limits)
    a = A.lift(grid.top).array
    pts = grid.points()
    fixed = pts[(_images(a, pts) == pts).all(axis=1)]
    return OracleSet(grid, frozenset(_vec(r, grid.top) for r in fixed))


def enumerate_solutions(
    A: Matrix,
    b: Vector,
    X: Box,
    grid: CriticalGrid | None = None,
    points_per_gap: int = 1,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> OracleSet:
    """Grid solutions of ``A ⊗ y = b`` inside ``X``.

    ``b`` may live on a refinement of the instance's chain.
    """
    top, A, X, (b,) = _align(A, X, b)
    if grid is None:
        grid = critical_grid(_matrix_values(A) | set(b.entries), X, points_per_gap)
    grid.check(limits)
    a = A.lift(grid.top).array
    target = b.lift(grid.top).array
    pts = grid.points()
    sols = pts[(_images(a, pts) == target[None, :]).all(axis=1)]
    return OracleSet(grid, frozenset(_vec(r, grid.top) for r in sols))


def _coarsest(vectors: tuple[Vector, ...], base_top: int) -> tuple[Vector, ...]:
    """Re-express ``vectors`` over the smallest chain ``base_top * m`` that holds them."""
    top = vectors[0].top
    ratio = top // base_top
    for m in range(1, ratio + 1):
        if ratio % m:
            continue
        k = ratio // m
        if all(e % k == 0 for v in vectors for e in v.entries):
            return tuple(Vector(tuple(e // k for e in v.entries), base_top * m) for v in vectors)
    return vectors


def brute_x_simple(
    A: Matrix,
    X: Box,
    points_per_gap: int = 2,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> OracleVerdict:
    """Does every eigenvector in ``X`` have ``A ⊗ y = x`` uniquely in ``X``?

    On failure the counterexample is ``(x, x, y)``: a target eigenvector, its
    trivial preimage and a second preimage, all in ``X``.
    """
    base_top = A.top
    top, A, X, _ = _align(A, X)
    eig_grid = critical_grid(_matrix_values(A), X, points_per_gap)
    eig_grid.check(limits)
    # Preimages are searched on the midpoint refinement of the eigenvector grid.
    X_e = X.lift(eig_grid.top)
    y_grid = critical_grid(eig_grid.values(), X_e, 1)
    y_grid.check(limits)

    a_e = A.lift(eig_grid.top).array
    pts = eig_grid.points()
    eig = pts[(_images(a_e, pts) == pts).all(axis=1)] * 2

    a_y = A.lift(y_grid.top).array
    eig_keys = _encode(eig, y_grid.top)
    sorted_keys = np.sort(eig_keys)
    hit_keys, hit_pts = [], []
    for offset, imgs in y_grid.image_blocks(a_y):
        if len(sorted_keys) == 0:
            break
        keys = _encode(imgs, y_grid.top)
        pos = np.minimum(np.searchsorted(sorted_keys, keys), len(sorted_keys) - 1)
        mask = sorted_keys[pos] == keys
        hit_keys.append(keys[mask])
        hit_pts.append(y_grid.points_at(offset + np.nonzero(mask)[0]))
    keys = np.concatenate(hit_keys) if hit_keys else np.zeros(0, dtype=np.int64)
    found = np.concatenate(hit_pts) if hit_pts else np.zeros((0, A.n), dtype=np.int64)

    uniq, counts = np.unique(keys, return_counts=True)
    bad_keys = uniq[counts >= 2]
    details = {"eigenvectors": int(len(eig)), "preimage_grid": y_grid.to_dict()}
    if len(bad_keys) == 0:
        return OracleVerdict(True, eig_grid, None, int(len(eig)), details)
    bad = eig[np.isin(eig_keys, bad_keys)]
    x = _lexmin(bad)
    x_key = _encode(x[None, :], y_grid.top)[0]
    others = found[(keys == x_key) & ~(found == x[None, :]).all(axis=1)]
    y2 = _lexmin(others)
    witness = _coarsest(
        (_vec(x, y_grid.top), _vec(x, y_grid.top), _vec(y2, y_grid.top)), base_top
    )
    return OracleVerdict(False, eig_grid, witness, int(len(eig)), details)


def brute_x_simple_vector(
    A: Matrix, X: Box, v: Vector, limits: OracleLimits = DEFAULT_LIMITS
) -> bool:
    """Is ``v`` a fixed point whose only preimage in ``X`` is itself?"""
    sols = enumerate_solutions(A, v, X, limits=limits)
    top = sols.grid.top
    a, vv = A.lift(top).array, v.lift(top)
    fixed = bool((np.minimum(a, vv.array[None, :]).max(axis=1) == vv.array).all())
    return fixed and sols.points == frozenset({vv})


def _orbit_fixed_flags(a: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """For each start point, does its orbit ever reach a fixed point?"""
    reached = np.zeros(len(pts), dtype=bool)
    state = pts
    seen: set[bytes] = set()
    while True:
        key = state.tobytes()
        if key in seen:
            return reached
        seen.add(key)
        nxt = _images(a, state)
        reached |= (nxt == state).all(axis=1)
        state = nxt


def weak_robustness_sweep(
    A: Matrix,
    X: Box | None = None,
    points_per_gap: int = 2,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> dict[str, OracleVerdict]:
    """Three independent brute-force readings of weak (X-)robustness.

    ``"implication"``: no grid ``x`` in ``X`` with ``A⊗x`` fixed but ``x`` not.
    ``"orbit"``: no grid ``x`` in ``X`` whose orbit reaches a fixed point
    unless ``x`` is one.
    ``"simple_image"`` is only computed for the full box: every grid
    eigenvector is a simple image eigenvector.
    """
    full = X is None
    if X is None:
        X = Box.full(A.n, A.top)
    top, A, X, _ = _align(A, X)
    grid = critical_grid(_matrix_values(A), X, points_per_gap)
    grid.check(limits)
    a = A.lift(grid.top).array
    pts = grid.points()
    img = _images(a, pts)
    img2 = _images(a, img)
    is_fixed = (img == pts).all(axis=1)

    bad_impl = pts[(img2 == img).all(axis=1) & ~is_fixed]
    impl = OracleVerdict(
        len(bad_impl) == 0,
        grid,
        None if len(bad_impl) == 0 else (_vec(_lexmin(bad_impl), grid.top),),
        len(pts),
    )
    attracted = _orbit_fixed_flags(a, pts)
    bad_orbit = pts[attracted & ~is_fixed]
    orb = OracleVerdict(
        len(bad_orbit) == 0,
        grid,
        None if len(bad_orbit) == 0 else (_vec(_lexmin(bad_orbit), grid.top),),
        len(pts),
    )
    out = {"implication": impl, "orbit": orb}
    if full:
        out["simple_image"] = brute_x_simple(A, X, points_per_gap, limits)
    return out


def brute_greatest_eigenvector(A: Matrix, limits: OracleLimits = DEFAULT_LIMITS) -> Vector:
    """Componentwise maximum of all grid eigenvectors over the full box."""
    eig = enumerate_eigenvectors(A, Box.full(A.n, A.top), limits=limits)
    best = tuple(max(col) for col in zip(*(v.entries for v in eig.points)))
    (v,) = _coarsest((Vector(best, eig.grid.top),), A.top)
    return v


def iter_box_ticks(X: Box) -> Iterator[Vector]:
    """Every integer-tick vector of ``X`` in lexicographic order."""
    for combo in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(X.lower, X.upper))):
        yield Vector(combo, X.top)
