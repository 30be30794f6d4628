import itertools
import random
from fractions import Fraction

import pytest

from kmface import gcm, titscone as tc, weyl
from kmface.gcm import builtin
from kmface.suites import face_sample_points


def face(g, text):
    return tc.parse_face(g, text)


def oracle_contains(f, lam, radius=6) -> bool:
    """lam in w W_perp F̄_theta: search the W_perp part within a ball."""
    g = f.gcm
    mu = weyl.inverse(f.w).act(lam)
    perp = gcm.orthogonal(g, f.theta)
    for v in weyl.parabolic_ball(g, perp, radius):
        nu = weyl.inverse(v).act(mu)
        if tc.in_closed_facet(g, nu, f.theta):
            return True
    return False


def test_dominant_chamber_rep(a2, aff):
    lam = (Fraction(-2), Fraction(1))
    x, mu = tc.dominant_chamber_rep(a2, lam)
    assert tc.is_dominant(a2, mu) and x.act(mu) == lam
    top = tc.fundamental(a2, 0)
    assert tc.dominant_chamber_rep(a2, top) == (weyl.identity(a2), top)
    lam = tuple(a - b for a, b in zip(tc.fundamental(aff, 0), aff.simple_root(0)))
    x, mu = tc.dominant_chamber_rep(aff, lam)
    assert tc.is_dominant(aff, mu) and x.act(mu) == lam


def test_budget_signal(aff):
    # -delta lies outside the Tits cone; the search never ends
    minus_delta = tuple(-(a + b) for a, b in zip(aff.simple_root(0), aff.simple_root(1)))
    with pytest.raises(tc.NotInConeWithinBudget):
        tc.dominant_chamber_rep(aff, (Fraction(-1), Fraction(0), Fraction(0)), max_iter=50)
    with pytest.raises(ValueError):
        tc.dominant_chamber_rep(aff, minus_delta, max_iter=0)


def test_translate_examples(hyp3):
    base = tc.standard_face(hyp3, {0, 1})
    assert tc.translate(weyl.simple(hyp3, 0), base) == base
    assert tc.translate(weyl.simple(hyp3, 2), base) == tc.Face(frozenset({0, 1}), weyl.simple(hyp3, 2))
    assert tc.translate(weyl.identity(hyp3), base) == base
    with pytest.raises(tc.NotSpecial):
        tc.standard_face(hyp3, {0})


def test_leq_examples(hyp3):
    top = tc.standard_face(hyp3, {0, 1, 2})
    f = face(hyp3, "face{theta=1,2; w=s3}")
    assert tc.face_leq(top, f)
    assert tc.face_leq(f, f)
    assert not tc.face_leq(f, face(hyp3, "face{theta=1,3; w=e}"))


def test_intersect_and_join_examples(hyp3, aff):
    f = face(hyp3, "face{theta=1,2; w=s3}")
    assert tc.face_intersect(f, tc.standard_face(hyp3, {0, 2})) == tc.standard_face(hyp3, {0, 1, 2})
    assert tc.face_intersect(f, f) == f
    x, i = tc.standard_face(aff, ()), tc.standard_face(aff, {0, 1})
    assert tc.face_intersect(x, i) == i
    assert tc.face_join(x, i) == x


def test_contains_examples(aff, hyp3):
    for g in (aff, hyp3):
        zero = tuple(Fraction(0) for _ in range(g.dim))
        for f in tc.faces_in_ball(g, 2):
            assert tc.face_contains(f, zero)
    delta = tuple(a + b for a, b in zip(aff.simple_root(0), aff.simple_root(1)))
    assert tc.face_contains(tc.standard_face(aff, {0, 1}), delta)
    assert not tc.face_contains(tc.standard_face(hyp3, {0, 1}), tc.fundamental(hyp3, 0))


@pytest.mark.parametrize("name,radius", [("aff", 3), ("hyp3", 2)])
def test_face_contains_matches_search_oracle(name, radius):
    g = builtin(name)
    rng = random.Random(3)
    faces = tc.faces_in_ball(g, radius)
    for f1 in faces:
        for lam in face_sample_points(f1, rng, 5):
            for f2 in faces:
                assert tc.face_contains(f2, lam) == oracle_contains(f2, lam)


@pytest.mark.parametrize("name", ["aff", "hyp3"])
def test_meet_is_greatest_lower_bound(name):
    g = builtin(name)
    small = tc.faces_in_ball(g, 2)
    universe = tc.faces_in_ball(g, 4)
    for f1, f2 in itertools.product(small, repeat=2):
        meet = tc.face_intersect(f1, f2)
        assert tc.face_leq(meet, f1) and tc.face_leq(meet, f2)
        for h in universe:
            if tc.face_leq(h, f1) and tc.face_leq(h, f2):
                assert tc.face_leq(h, meet)


@pytest.mark.parametrize("name", ["aff", "hyp3"])
def test_leq_is_partial_order(name):
    g = builtin(name)
    faces = tc.faces_in_ball(g, 2)
    for f1, f2 in itertools.product(faces, repeat=2):
        if tc.face_leq(f1, f2) and tc.face_leq(f2, f1):
            assert f1 == f2
        if tc.face_leq(f1, f2):
            for f3 in faces:
                if tc.face_leq(f2, f3):
                    assert tc.face_leq(f1, f3)


@pytest.mark.parametrize("name", ["aff", "hyp3"])
def test_join_is_upper_bound(name):
    g = builtin(name)
    faces = tc.faces_in_ball(g, 2)
    for f1, f2 in itertools.product(faces, repeat=2):
        join, nonsimple = tc.face_join_trace(f1, f2)
        assert tc.face_leq(f1, join)
        if not nonsimple:
            assert tc.face_leq(f2, join)


def test_facet_formula_on_samples(hyp3):
    """R(theta) ∩ y F̄_J = F̄_{theta ∪ J ∪ red(y)} for y minimal in the double coset."""
    g = hyp3
    rng = random.Random(5)
    subsets = [frozenset(s) for k in range(4) for s in itertools.combinations(range(3), k)]
    for theta in gcm.special_sets(g):
        R = tc.standard_face(g, theta)
        stab = tc.stabilizer_type(g, theta)
        for J in subsets:
            for y in weyl.ball(g, 3):
                if weyl.double_coset_decompose(y, stab, J)[1] != y:
                    continue
                target = theta | J | weyl.red_support(y)
                for _ in range(5):
                    mu = tuple(Fraction(0 if i in J else rng.randint(0, 2)) for i in range(g.dim))
                    lam = y.act(mu)
                    assert tc.face_contains(R, lam) == tc.in_closed_facet(g, lam, target)


def test_syntax_round_trip(hyp3):
    for f in tc.faces_in_ball(hyp3, 3):
        assert tc.parse_face(hyp3, tc.format_face(f)) == f
    lam = (Fraction(1, 2), Fraction(-3), Fraction(0))
    assert tc.parse_weight(hyp3, tc.format_weight(lam)) == lam
    with pytest.raises(ValueError):
        tc.parse_weight(hyp3, "1,2")
