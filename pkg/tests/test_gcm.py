from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kmface import gcm
from kmface.gcm import NotGCM, NotSymmetrizable


def test_validate_symmetric():
    g = gcm.validate([[2, -1], [-1, 2]])
    assert g.d == (1, 1) and g.l == 2 and g.dim == 2


def test_validate_affine_appends_row():
    g = gcm.validate([[2, -2], [-2, 2]])
    assert g.d == (1, 1) and g.l == 1 and g.dim == 3
    # realization[i][j] = a[j][i] on the first n rows
    for i in range(2):
        assert g.simple_root(i)[:2] == tuple(g.a[j][i] for j in range(2))
    # lexicographically first completion is the first unit row
    assert g.realization[2] == (1, 0)


@pytest.mark.parametrize("m", [
    [[2, 1], [1, 2]],          # positive off-diagonal
    [[3, -1], [-1, 2]],        # bad diagonal
    [[2, 0], [-1, 2]],         # zero pattern
    [[2, -1], [-1]],           # not square
])
def test_not_gcm(m):
    with pytest.raises(NotGCM):
        gcm.validate(m)


def test_not_symmetrizable():
    with pytest.raises(NotSymmetrizable):
        gcm.validate([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])


def test_symmetrizer_b2():
    g = gcm.builtin("b2")
    assert g.d == (Fraction(1), Fraction(2))
    for i in range(2):
        for j in range(2):
            assert g.d[i] * g.a[i][j] == g.d[j] * g.a[j][i]


def test_classify_examples(a2, aff, hyp3):
    assert gcm.classify(a2, {0, 1}) == {frozenset({0, 1}): gcm.FINITE}
    assert gcm.classify(aff, {0, 1}) == {frozenset({0, 1}): gcm.AFFINE}
    assert gcm.classify(hyp3) == {frozenset({0, 1, 2}): gcm.INDEFINITE}


def test_classify_splits_components():
    g = gcm.validate([[2, 0, 0], [0, 2, -2], [0, -2, 2]])
    assert gcm.classify(g) == {frozenset({0}): gcm.FINITE, frozenset({1, 2}): gcm.AFFINE}


def test_theta_infinity(aff, hyp3):
    assert gcm.theta_infinity(aff, {0}) == frozenset()
    assert gcm.theta_infinity(aff, {0, 1}) == {0, 1}
    assert gcm.theta_infinity(hyp3, {0, 2}) == {0, 2}
    assert gcm.theta_infinity(hyp3, set()) == frozenset()


def test_special_and_orthogonal(aff, hyp3, a2):
    assert gcm.is_special(aff, set())
    assert gcm.is_special(hyp3, {0, 1})
    assert gcm.orthogonal(hyp3, {0, 1}) == frozenset()
    assert gcm.special_sets(aff) == [frozenset(), frozenset({0, 1})]
    assert gcm.special_sets(a2) == [frozenset()]
    assert len(gcm.special_sets(hyp3)) == 5   # empty, three pairs, everything


def subsets(n):
    return st.sets(st.integers(0, n - 1))


@given(st.sampled_from(["a1", "a2", "b2", "aff", "hyp3"]).flatmap(
    lambda name: st.tuples(st.just(gcm.builtin(name)),
                           subsets(len(gcm.BUILTIN[name])), subsets(len(gcm.BUILTIN[name])))))
def test_theta_properties(data):
    g, theta, other = data
    inf, zero = gcm.theta_infinity(g, theta), gcm.theta_zero(g, theta)
    assert inf | zero == frozenset(theta) and not inf & zero
    assert gcm.is_special(g, inf) and gcm.theta_infinity(g, inf) == inf
    J, K = frozenset(theta), frozenset(theta) | frozenset(other)
    assert gcm.orthogonal(g, K) <= gcm.orthogonal(g, J)
    for i in gcm.orthogonal(g, J):
        assert all(g.a[i][j] == 0 == g.a[j][i] for j in J)


def test_text_round_trip(tmp_path):
    for name in gcm.BUILTIN:
        g = gcm.builtin(name)
        assert gcm.parse_gcm_text(gcm.format_gcm_text(g)) == g


def test_file_with_comments_and_extra_rows(tmp_path):
    p = tmp_path / "mine.gcm"
    p.write_text("# affine A1\n2\n2 -2\n-2 2  # row two\n0 1\n", encoding="utf-8")
    g = gcm.load(str(p))
    assert g.realization[2] == (0, 1)


def test_bad_extra_row_rejected():
    with pytest.raises(NotGCM):
        gcm.parse_gcm_text("2\n2 -2\n-2 2\n1 -1\n")


def test_load_packaged_names():
    assert gcm.load("aff") == gcm.builtin("aff")
    assert gcm.load("hyp3.gcm") == gcm.builtin("hyp3")
    with pytest.raises(FileNotFoundError):
        gcm.load("nonexistent.gcm")
