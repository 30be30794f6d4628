from fractions import Fraction

from hypothesis import given, settings, strategies as st

from kmface import linalg
from oracles import leibniz_det

small = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_leibniz(m):
    assert linalg.det(m) == leibniz_det(m)


@given(st.integers(1, 4).flatmap(square))
def test_rank_and_nullspace_are_complementary(m):
    n = len(m)
    null = linalg.nullspace(m, n)
    assert linalg.rank(m) + len(null) == n
    for v in null:
        assert all(x == 0 for x in linalg.matvec(m, v))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5),
       st.lists(small, min_size=5, max_size=5))
def test_span_coords_reproduce_vector(vectors, coeffs):
    span = linalg.Span(3)
    for v in vectors:
        span.add(v)
    target = [sum(c * Fraction(v[k]) for c, v in zip(coeffs, vectors)) for k in range(3)]
    assert span.contains(target)
    coords = span.coords(target)
    rebuilt = [sum(c * v[k] for c, v in zip(coords, span.accepted)) for k in range(3)]
    assert rebuilt == target


def test_span_coords_example():
    span = linalg.Span(2)
    assert span.add([2, 1]) and span.add([1, 2])
    assert span.coords([3, 3]) == [1, 1]
    assert not span.add([5, 7])


def test_span_rejects_outside_vector():
    span = linalg.Span(3)
    span.add([1, 0, 0])
    assert span.coords([0, 1, 0]) is None


@settings(max_examples=50)
@given(st.integers(1, 3).flatmap(square), st.lists(small, min_size=3, max_size=3))
def test_solve_returns_solution_when_consistent(m, x):
    n = len(m)
    b = linalg.matvec(m, x[:n])
    sol = linalg.solve(m, b)
    assert sol is not None
    assert linalg.matvec(m, sol) == b


def test_psd_examples():
    assert linalg.is_positive_semidefinite([[2, -2], [-2, 2]])
    assert linalg.is_positive_semidefinite([[2, -1], [-1, 2]])
    assert not linalg.is_positive_semidefinite([[2, -2, -2], [-2, 2, -2], [-2, -2, 2]])
