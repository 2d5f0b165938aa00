"""Max-min arithmetic over the bounded chain ``{0, 1, ..., top}``.

Every value is an integer tick. ``top`` is the greatest element I and 0 is the
least element O; the represented point is ``ticks / top`` when B = [0, 1], or
``ticks`` itself when the chain is read as [0, top].

``max`` and ``min`` only ever select one of their arguments, so no operation
in this module creates a tick that was not already present in its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ContextError, DimensionError


def _check_tick(value: int, top: int) -> int:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"ticks must be integers, got {value!r}")
    value = int(value)
    if not 0 <= value <= top:
        raise ValueError(f"tick {value} outside [0, {top}]")
    return value


def _check_top(top: int) -> int:
    if isinstance(top, bool) or not isinstance(top, (int, np.integer)) or top < 1:
        raise ValueError(f"top must be a positive integer, got {top!r}")
    return int(top)


def _same_top(*tops: int) -> int:
    first = tops[0]
    for t in tops[1:]:
        if t != first:
            raise ContextError(f"mismatched top contexts: {first} vs {t}")
    return first


@dataclass(frozen=True)
class Scalar:
    """A single point of the chain."""

    ticks: int
    top: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "top", _check_top(self.top))
        object.__setattr__(self, "ticks", _check_tick(self.ticks, self.top))

    @classmethod
    def zero(cls, top: int) -> Scalar:
        return cls(0, top)

    @classmethod
    def one(cls, top: int) -> Scalar:
        return cls(top, top)

    def _cmp(self, other: Scalar) -> tuple[int, int]:
        if not isinstance(other, Scalar):
            return NotImplemented
        _same_top(self.top, other.top)
        return self.ticks, other.ticks

    def __lt__(self, other: Scalar) -> bool:
        a, b = self._cmp(other)
        return a < b

    def __le__(self, other: Scalar) -> bool:
        a, b = self._cmp(other)
        return a <= b

    def __gt__(self, other: Scalar) -> bool:
        a, b = self._cmp(other)
        return a > b

    def __ge__(self, other: Scalar) -> bool:
        a, b = self._cmp(other)
        return a >= b

    def __int__(self) -> int:
        return self.ticks

    def __str__(self) -> str:
        return str(self.ticks)


def oplus(a: Scalar, b: Scalar) -> Scalar:
    """``a ⊕ b = max(a, b)``."""
    _same_top(a.top, b.top)
    return a if a.ticks >= b.ticks else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    """``a ⊗ b = min(a, b)``."""
    _same_top(a.top, b.top)
    return a if a.ticks <= b.ticks else b


@dataclass(frozen=True)
class Vector:
    """An immutable column vector of ticks sharing one ``top``."""

    entries: tuple[int, ...]
    top: int

    def __post_init__(self) -> None:
        top = _check_top(self.top)
        object.__setattr__(self, "top", top)
        object.__setattr__(
            self, "entries", tuple(_check_tick(v, top) for v in self.entries)
        )

    @classmethod
    def constant(cls, n: int, value: int, top: int) -> Vector:
        return cls((value,) * n, top)

    @classmethod
    def zeros(cls, n: int, top: int) -> Vector:
        return cls.constant(n, 0, top)

    @classmethod
    def ones(cls, n: int, top: int) -> Vector:
        return cls.constant(n, top, top)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.entries, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def scalar(self, i: int) -> Scalar:
        return Scalar(self.entries[i], self.top)

    def replace(self, i: int, value: int) -> Vector:
        entries = list(self.entries)
        entries[i] = value
        return Vector(tuple(entries), self.top)

    def lift(self, top: int) -> Vector:
        """Re-express on a finer chain whose ``top`` is a multiple of ours."""
        if top % self.top:
            raise ContextError(f"cannot lift top {self.top} to {top}")
        k = top // self.top
        return Vector(tuple(v * k for v in self.entries), top)

    def _pairs(self, other: Vector) -> Iterable[tuple[int, int]]:
        if not isinstance(other, Vector):
            raise TypeError(f"expected Vector, got {type(other).__name__}")
        _same_top(self.top, other.top)
        if len(self) != len(other):
            raise DimensionError(f"vector lengths {len(self)} and {len(other)} differ")
        return zip(self.entries, other.entries)

    # Componentwise order. ``<`` is strict in every coordinate.
    def __le__(self, other: Vector) -> bool:
        return all(a <= b for a, b in self._pairs(other))

    def __lt__(self, other: Vector) -> bool:
        return all(a < b for a, b in self._pairs(other))

    def __ge__(self, other: Vector) -> bool:
        return all(a >= b for a, b in self._pairs(other))

    def __gt__(self, other: Vector) -> bool:
        return all(a > b for a, b in self._pairs(other))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class Matrix:
    """An immutable square matrix of ticks sharing one ``top``."""

    entries: tuple[tuple[int, ...], ...]
    top: int

    def __post_init__(self) -> None:
        top = _check_top(self.top)
        object.__setattr__(self, "top", top)
        rows = tuple(tuple(_check_tick(v, top) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0:
            raise DimensionError("matrix must have at least one row")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionError(
                    f"matrix is not square: row {i} has {len(row)} entries, expected {n}"
                )
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], top: int) -> Matrix:
        return cls(tuple(tuple(r) for r in rows), top)

    @classmethod
    def from_array(cls, arr: np.ndarray, top: int) -> Matrix:
        return cls(tuple(tuple(int(v) for v in row) for row in arr), top)

    @classmethod
    def identity(cls, n: int, top: int) -> Matrix:
        return cls(
            tuple(tuple(top if i == j else 0 for j in range(n)) for i in range(n)), top
        )

    @classmethod
    def constant(cls, n: int, value: int, top: int) -> Matrix:
        return cls(tuple((value,) * n for _ in range(n)), top)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.entries, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def lift(self, top: int) -> Matrix:
        if top % self.top:
            raise ContextError(f"cannot lift top {self.top} to {top}")
        k = top // self.top
        return Matrix(tuple(tuple(v * k for v in row) for row in self.entries), top)

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{v:>3}" for v in row) for row in self.entries)


@dataclass(frozen=True)
class Box:
    """The interval vector ``X = [lower, upper]``."""

    lower: Vector
    upper: Vector

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise DimensionError("box bounds have different lengths")
        _same_top(self.lower.top, self.upper.top)
        if not self.lower <= self.upper:
            raise ValueError(f"box lower bound {self.lower} exceeds upper {self.upper}")

    @classmethod
    def full(cls, n: int, top: int) -> Box:
        return cls(Vector.zeros(n, top), Vector.ones(n, top))

    @classmethod
    def point(cls, v: Vector) -> Box:
        return cls(v, v)

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def top(self) -> int:
        return self.lower.top

    def __contains__(self, v: Vector) -> bool:
        return self.lower <= v <= self.upper

    def lift(self, top: int) -> Box:
        return Box(self.lower.lift(top), self.upper.lift(top))

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def matvec(A: Matrix, x: Vector) -> Vector:
    """``(A ⊗ x)_i = max_j min(a_ij, x_j)``."""
    _same_top(A.top, x.top)
    if A.n != len(x):
        raise DimensionError(f"matrix is {A.n}x{A.n} but vector has length {len(x)}")
    out = np.minimum(A.array, x.array[None, :]).max(axis=1)
    return Vector(tuple(out.tolist()), A.top)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    _same_top(A.top, B.top)
    if A.n != B.n:
        raise DimensionError(f"cannot multiply {A.n}x{A.n} by {B.n}x{B.n}")
    out = np.minimum(A.array[:, :, None], B.array[None, :, :]).max(axis=1)
    return Matrix.from_array(out, A.top)


def power(A: Matrix, k: int) -> Matrix:
    """``A^k``; ``A^0`` is the identity E."""
    if k < 0:
        raise ValueError("matrix power must be non-negative")
    result = Matrix.identity(A.n, A.top)
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def vec_oplus(x: Vector, y: Vector) -> Vector:
    return Vector(tuple(max(a, b) for a, b in x._pairs(y)), x.top)


def vec_otimes(x: Vector, y: Vector) -> Vector:
    return Vector(tuple(min(a, b) for a, b in x._pairs(y)), x.top)


def scalar_times(alpha: int, x: Vector) -> Vector:
    """``alpha ⊗ x``: every coordinate capped at ``alpha``."""
    alpha = _check_tick(int(alpha), x.top)
    return Vector(tuple(min(alpha, v) for v in x.entries), x.top)


def common_top(*tops: int) -> int:
    """Least common multiple of several chain sizes."""
    return int(np.lcm.reduce(np.asarray(tops, dtype=np.int64)))
