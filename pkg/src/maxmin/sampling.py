"""Random desk-scale instances for cross-checking against the oracle."""

from __future__ import annotations

import numpy as np

from .semiring import Box, Matrix, Vector
from .spectral import aggregates


def palette(rng: np.random.Generator, top: int, size: int = 5) -> np.ndarray:
    """``size`` distinct ticks of ``[0, top]``, always including 0 and ``top``."""
    inner = rng.choice(np.arange(1, top), size=size - 2, replace=False)
    return np.sort(np.concatenate([[0, top], inner]))


def random_matrix(rng: np.random.Generator, n: int, values: np.ndarray, top: int) -> Matrix:
    return Matrix.from_array(rng.choice(values, size=(n, n)), top)


def random_box(rng: np.random.Generator, n: int, values: np.ndarray, top: int) -> Box:
    a = rng.choice(values, size=n)
    b = rng.choice(values, size=n)
    return Box(
        Vector(tuple(np.minimum(a, b).tolist()), top),
        Vector(tuple(np.maximum(a, b).tolist()), top),
    )


def permutation_biased_matrix(
    rng: np.random.Generator, n: int, values: np.ndarray, top: int
) -> Matrix:
    """Palette matrix whose largest values tend to sit on one permutation."""
    sigma = rng.permutation(n)
    split = int(rng.integers(1, len(values)))
    a = rng.choice(values[:split], size=(n, n))
    a[np.arange(n), sigma] = rng.choice(values[split - 1 :], size=n)
    return Matrix.from_array(a, top)


def conformism_instance(
    rng: np.random.Generator,
    n: int,
    top: int = 10,
    size: int = 5,
    biased: bool = False,
    tries: int = 10_000,
) -> tuple[Matrix, Box]:
    """A matrix and a box meeting ``lower < c*(A)`` and ``max lower < min upper``.

    With ``biased`` the matrix is drawn so that it is often a level
    permutation, which is where the interesting verdicts live.
    """
    draw = permutation_biased_matrix if biased else random_matrix
    for _ in range(tries):
        values = palette(rng, top, size)
        A = draw(rng, n, values, top)
        X = random_box(rng, n, values, top)
        lo = max(X.lower.entries)
        if lo < aggregates(A).c.ticks and lo < min(X.upper.entries):
            return A, X
    raise RuntimeError("could not draw an admissible instance")


def level_permutation_instance(
    rng: np.random.Generator, n: int, top: int = 1000
) -> tuple[Matrix, Box]:
    """Large instance whose entries on a random permutation dominate the rest."""
    sigma = rng.permutation(n)
    a = rng.integers(0, top // 2, size=(n, n))
    a[np.arange(n), sigma] = rng.integers(top // 2, top + 1, size=n)
    A = Matrix.from_array(a, top)
    lower = rng.integers(0, top // 4, size=n)
    upper = rng.integers(top // 2, top + 1, size=n)
    return A, Box(Vector(tuple(lower.tolist()), top), Vector(tuple(upper.tolist()), top))
