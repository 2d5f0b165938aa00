import pytest
from hypothesis import given
from hypothesis import strategies as st

from instances import ALL_ZERO2, EXAMPLE_A, TOP, v
from maxmin import Matrix, Vector, aggregates, greatest_eigenvector, is_eigenvector, matvec, orbit
from maxmin.errors import DimensionError
from maxmin.oracle import brute_greatest_eigenvector
from maxmin.spectral import greatest_eigenvector_trace
from strategies import matrices, vectors


def test_example_aggregates():
    agg = aggregates(EXAMPLE_A)
    assert agg.m_A.ticks == 8
    assert agg.c.ticks == 5
    assert agg.cstar == v(5, 5, 5, 5)


def test_trivial_aggregates():
    agg = aggregates(ALL_ZERO2)
    assert (agg.m_A.ticks, agg.c.ticks, agg.cstar) == (0, 0, v(0, 0))
    agg = aggregates(Matrix.identity(3, TOP))
    assert (agg.m_A.ticks, agg.c.ticks, agg.cstar) == (TOP, TOP, v(TOP, TOP, TOP))


def test_greatest_eigenvector_examples():
    assert greatest_eigenvector(EXAMPLE_A) == v(5, 7, 7, 5)
    assert greatest_eigenvector(ALL_ZERO2) == v(0, 0)
    assert greatest_eigenvector(Matrix.identity(3, TOP)) == v(TOP, TOP, TOP)


def test_trace_records_early_exit():
    tr = greatest_eigenvector_trace(EXAMPLE_A)
    assert tr.early_exit and tr.iterations <= EXAMPLE_A.n


def test_eigenvector_membership():
    assert is_eigenvector(EXAMPLE_A, v(5, 7, 7, 5))
    assert is_eigenvector(EXAMPLE_A, v(4, 4, 4, 4))
    assert not is_eigenvector(EXAMPLE_A, v(7, 9, 6, 5))


def test_orbit_examples():
    orb = orbit(EXAMPLE_A, v(5, 7, 7, 5))
    assert (orb.transient, orb.period) == (0, 1)

    orb = orbit(EXAMPLE_A, v(7, 9, 6, 5))
    assert (orb.transient, orb.period) == (2, 2)
    assert set(orb.cycle) == {v(5, 7, 6, 5), v(5, 6, 7, 5)}
    assert orb.prefix[1] == v(5, 6, 8, 7)
    assert not orb.hits_eigenvector and orb.limit is None

    orb = orbit(EXAMPLE_A, v(5, 7, 8, 7))
    assert (orb.transient, orb.period) == (1, 1)
    assert orb.limit == v(5, 7, 7, 5)


def test_orbit_dimension_check():
    with pytest.raises(DimensionError):
        orbit(EXAMPLE_A, v(1, 2))


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, 6)))
def test_greatest_eigenvector_is_fixed_and_bounded(A):
    x = greatest_eigenvector(A)
    agg = aggregates(A)
    assert matvec(A, x) == x
    assert agg.cstar <= x
    assert x <= Vector(tuple(A.array.max(axis=1).tolist()), A.top)


@given(st.integers(1, 3).flatmap(lambda n: matrices(n, 4)))
def test_greatest_eigenvector_matches_enumeration(A):
    assert greatest_eigenvector(A) == brute_greatest_eigenvector(A)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, 6), st.integers(0, 6))))
def test_constant_vector_fixed_iff_below_c(args):
    A, k = args
    assert is_eigenvector(A, Vector.constant(A.n, k, A.top)) == (k <= aggregates(A).c.ticks)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, 6), vectors(n, 6))))
def test_orbit_invariants(args):
    A, x = args
    orb = orbit(A, x)
    assert orb.period >= 1
    assert orb.prefix[0] == x
    for a, b in zip(orb.prefix, orb.prefix[1:]):
        assert matvec(A, a) == b
    assert matvec(A, orb.prefix[-1]) == orb.prefix[orb.transient]
    assert len(set(orb.prefix)) == len(orb.prefix)
    if orb.hits_eigenvector:
        assert orb.limit <= greatest_eigenvector(A)
