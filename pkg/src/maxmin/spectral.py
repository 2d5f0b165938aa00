"""Fixed points ("eigenvectors") and orbits of a max-min matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError
from .semiring import Matrix, Scalar, Vector, matvec


@dataclass(frozen=True)
class Aggregates:
    m_A: Scalar
    c: Scalar
    cstar: Vector


@dataclass(frozen=True)
class GreatestEigenvector:
    vector: Vector
    iterations: int
    early_exit: bool


@dataclass(frozen=True)
class OrbitSummary:
    """Ultimately periodic orbit ``x, A⊗x, A²⊗x, ...``.

    ``prefix`` holds ``x^(0) .. x^(transient + period - 1)``: every distinct
    vector of the orbit, in order.
    """

    transient: int
    period: int
    prefix: tuple[Vector, ...]

    @property
    def hits_eigenvector(self) -> bool:
        return self.period == 1

    @property
    def cycle(self) -> tuple[Vector, ...]:
        return self.prefix[self.transient :]

    @property
    def limit(self) -> Vector | None:
        return self.prefix[-1] if self.period == 1 else None


def aggregates(A: Matrix) -> Aggregates:
    row_max = A.array.max(axis=1)
    c = int(row_max.min())
    return Aggregates(
        m_A=Scalar(int(row_max.max()), A.top),
        c=Scalar(c, A.top),
        cstar=Vector.constant(A.n, c, A.top),
    )


def greatest_eigenvector_trace(A: Matrix) -> GreatestEigenvector:
    """Iterate from the row maxima; the n-th iterate is the greatest fixed point."""
    x = Vector(tuple(A.array.max(axis=1).tolist()), A.top)
    for k in range(1, A.n):
        nxt = matvec(A, x)
        if nxt == x:
            return GreatestEigenvector(x, k, True)
        x = nxt
    return GreatestEigenvector(x, A.n, False)


def greatest_eigenvector(A: Matrix) -> Vector:
    return greatest_eigenvector_trace(A).vector


def is_eigenvector(A: Matrix, x: Vector) -> bool:
    return matvec(A, x) == x


def orbit(A: Matrix, x0: Vector) -> OrbitSummary:
    if A.n != len(x0):
        raise DimensionError(f"matrix is {A.n}x{A.n} but vector has length {len(x0)}")
    seen: dict[Vector, int] = {}
    trace: list[Vector] = []
    x = x0
    while x not in seen:
        seen[x] = len(trace)
        trace.append(x)
        x = matvec(A, x)
    first = seen[x]
    return OrbitSummary(transient=first, period=len(trace) - first, prefix=tuple(trace))
