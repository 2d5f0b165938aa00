import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import ALL_TOP2, ALL_ZERO2, EXAMPLE_A, EXAMPLE_X, TOP, v
from maxmin import (
    Box,
    Matrix,
    RobustnessReport,
    Vector,
    greatest_eigenvector,
    in_attraction,
    is_eigenvector,
    is_invariant,
    is_weakly_robust,
    is_weakly_x_robust,
    is_x_simple_vector,
    matvec,
    robustness_report,
    upwardness_check,
)
from maxmin.oracle import brute_x_simple, weak_robustness_sweep
from maxmin.robustness import admissible_range
from maxmin.sampling import palette, random_box, random_matrix
from maxmin.semiring import scalar_times
from maxmin.solver import principal_solution, cover_sets


def test_attraction_examples():
    assert in_attraction(EXAMPLE_A, v(5, 7, 7, 5))
    assert not in_attraction(EXAMPLE_A, v(7, 9, 6, 5))
    assert in_attraction(EXAMPLE_A, v(5, 7, 8, 7))


def test_identity_is_weakly_robust():
    assert is_weakly_robust(Matrix.identity(3, TOP)).holds


def test_all_top_matrix_is_not_weakly_robust():
    res = is_weakly_robust(ALL_TOP2)
    assert not res.holds
    (x,) = res.counterexample
    A = ALL_TOP2.lift(x.top)
    assert is_eigenvector(A, matvec(A, x)) and not is_eigenvector(A, x)
    assert not is_eigenvector(ALL_TOP2, v(5, 0)) and is_eigenvector(ALL_TOP2, matvec(ALL_TOP2, v(5, 0)))


def test_all_zero_matrix_is_not_weakly_robust():
    res = is_weakly_robust(ALL_ZERO2)
    assert not res.holds
    (x,) = res.counterexample
    assert matvec(ALL_ZERO2.lift(x.top), x) == Vector.zeros(2, x.top) != x


def test_weak_x_robustness_examples():
    fixed = v(5, 7, 7, 5)
    assert is_weakly_x_robust(EXAMPLE_A, Box.point(fixed)).holds
    assert not is_weakly_x_robust(ALL_TOP2, Box.full(2, TOP)).holds
    robust = is_weakly_x_robust(EXAMPLE_A, EXAMPLE_X)
    if robust.holds:
        assert brute_x_simple(EXAMPLE_A, EXAMPLE_X).holds


def test_invariance_examples():
    assert is_invariant(EXAMPLE_A, Box.point(v(5, 7, 7, 5)))
    assert not is_invariant(EXAMPLE_A, EXAMPLE_X)
    assert matvec(EXAMPLE_A, EXAMPLE_X.lower) == v(4, 2, 3, 3)
    assert matvec(EXAMPLE_A, EXAMPLE_X.upper) == v(5, 6, 8, 7)
    assert is_invariant(EXAMPLE_A, Box(v(4, 3, 3, 4), v(5, 6, 6, 5)))


def test_x_simple_vector_examples():
    assert is_x_simple_vector(EXAMPLE_A, EXAMPLE_X, v(5, 6, 6, 5), check_oracle=True)
    assert is_x_simple_vector(EXAMPLE_A, EXAMPLE_X, v(4, 4, 4, 4), check_oracle=True)
    assert not is_x_simple_vector(ALL_TOP2, Box.full(2, TOP), v(5, 5), check_oracle=True)
    with pytest.raises(ValueError):
        is_x_simple_vector(EXAMPLE_A, EXAMPLE_X, v(0, 0, 0, 0))


def test_upwardness_worked_example():
    x = greatest_eigenvector(EXAMPLE_A)
    assert scalar_times(5, x) == v(5, 5, 5, 5)
    res = upwardness_check(EXAMPLE_A, EXAMPLE_X, x, [4, 5], check_oracle=True)
    assert res.holds and res.simple == {4: True, 5: True}
    assert upwardness_check(EXAMPLE_A, EXAMPLE_X, x, [4, 4]).holds


def test_upwardness_fails_on_one_dimensional_counterexample():
    # alpha=0: target 0 has the single preimage 0.
    # beta=1: target 1 is hit by every y in [1, 4].
    A = Matrix.from_rows([[1]], 4)
    X = Box(Vector((0,), 4), Vector((4,), 4))
    res = upwardness_check(A, X, Vector((1,), 4), [0, 1], check_oracle=True)
    assert not res.holds and res.violation == (0, 1)


def test_upwardness_rejects_bad_input():
    x = greatest_eigenvector(EXAMPLE_A)
    with pytest.raises(ValueError):
        upwardness_check(EXAMPLE_A, EXAMPLE_X, v(7, 9, 6, 5), [4])
    with pytest.raises(ValueError):
        upwardness_check(EXAMPLE_A, EXAMPLE_X, x, [9])
    assert admissible_range(EXAMPLE_X) == (4, 5)


def test_report_round_trip():
    rep = robustness_report(ALL_TOP2, Box.full(2, TOP))
    again = RobustnessReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert again == rep


def _random_instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    top = int(rng.integers(2, 8))
    vals = palette(rng, top, min(top + 1, 5)) if top >= 4 else np.arange(top + 1)
    return random_matrix(rng, n, vals, top), random_box(rng, n, vals, top)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_weak_robustness_readings_agree(seed):
    A, _ = _random_instance(seed)
    sweep = weak_robustness_sweep(A)
    assert len({r.holds for r in sweep.values()}) == 1
    is_weakly_robust(A)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_x_robustness_implications(seed):
    A, X = _random_instance(seed)
    wx = is_weakly_x_robust(A, X).holds
    simple = brute_x_simple(A, X).holds
    if wx:
        assert simple
    if simple and is_invariant(A, X):
        assert wx


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariance_matches_direct_image_check(seed):
    A, X = _random_instance(seed)
    from maxmin.oracle import critical_grid, _matrix_values, _images

    grid = critical_grid(_matrix_values(A), X, 1)
    pts = grid.points()
    img = _images(A.lift(grid.top).array, pts)
    lo, hi = X.lift(grid.top).lower.array, X.lift(grid.top).upper.array
    inside = bool(((img >= lo) & (img <= hi)).all())
    assert is_invariant(A, X) == inside


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_principal_grows_and_covers_shrink_with_scale(seed):
    A, X = _random_instance(seed)
    x = greatest_eigenvector(A)
    if not x >= X.lower:
        return
    lo, hi = admissible_range(X)
    for a in range(lo, hi + 1):
        for b in range(a, hi + 1):
            ta, tb = scalar_times(a, x), scalar_times(b, x)
            pa, pb = principal_solution(A, ta, X), principal_solution(A, tb, X)
            assert pa <= pb
            for j in range(A.n):
                if pa[j] == X.upper[j]:
                    assert pa[j] == pb[j]
                else:
                    assert pa[j] == min(a, pb[j])
            ca, cb = cover_sets(A, ta, X), cover_sets(A, tb, X)
            assert all(q <= p for p, q in zip(ca, cb))
            assert set().union(*cb) <= set().union(*ca)
