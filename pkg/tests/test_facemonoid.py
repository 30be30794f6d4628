import itertools
import random

import pytest

from kmface import facemonoid as fm, titscone as tc, weyl
from kmface.gcm import builtin
from kmface.suites import face_sample_points


def W(g, text):
    return weyl.parse_word(g, text)


def R(g, theta, w="e"):
    return tc.make_face(theta, W(g, w))


def test_make_examples(aff, hyp3):
    top = R(aff, {0, 1})
    assert fm.make(W(aff, "s1"), top) == fm.make(W(aff, "e"), top)
    f = R(hyp3, {0, 1})
    assert fm.make(W(hyp3, "s1"), f) == fm.idempotent(f)
    assert fm.make(W(hyp3, "s3"), f) != fm.idempotent(f)
    X = R(hyp3, ())
    assert fm.make(W(hyp3, "s1"), X) != fm.make(W(hyp3, "s2"), X)


def test_multiply_examples(aff):
    top = R(aff, {0, 1})
    assert fm.make(W(aff, "s1"), top) * fm.make(W(aff, "s2"), top) == fm.idempotent(top)
    for x in fm.monoid_ball(aff, 2):
        assert fm.unit(aff) * x == x == x * fm.unit(aff)
    for f in tc.faces_in_ball(aff, 2):
        e = fm.idempotent(f)
        assert e * e == e


def test_ball_sizes(aff, a2, b2, hyp3):
    assert len(fm.monoid_ball(aff, 2)) == 6
    assert len(fm.monoid_ball(a2, 3)) == 6
    assert len(fm.monoid_ball(b2, 4)) == 8
    specials = [tc.standard_face(hyp3, t) for t in (set(), {0, 1}, {0, 2}, {1, 2}, {0, 1, 2})]
    assert set(fm.monoid_ball(hyp3, 0)) == {fm.idempotent(f) for f in specials}


def test_congruence_matches_pointwise_fixers(hyp3):
    """make(s, F) == make(s', F) exactly when s^-1 s' fixes sample points of F."""
    rng = random.Random(2)
    elts = weyl.ball(hyp3, 2)
    for f in tc.faces_in_ball(hyp3, 1):
        pts = face_sample_points(f, rng, 25) + [tc.interior_point(f)]
        for s, t in itertools.product(elts, repeat=2):
            x = weyl.inverse(s) * t
            fixes = all(x.act(p) == tuple(p) for p in pts)
            assert (fm.make(s, f) == fm.make(t, f)) == fixes


@pytest.mark.parametrize("name", ["aff", "hyp3"])
def test_representative_independence(name):
    """(s,R)(t,S) = (st, t^-1 R ∩ S) gives the same class for every representative."""
    g = builtin(name)
    ball = weyl.ball(g, 2)
    faces = tc.faces_in_ball(g, 1)
    rng = random.Random(4)
    for _ in range(150):
        s, t = rng.choice(ball), rng.choice(ball)
        f1, f2 = rng.choice(faces), rng.choice(faces)
        x, y = fm.make(s, f1), fm.make(t, f2)
        # other representatives: s·v with v in the pointwise fixer w W_theta w^-1
        for v in weyl.parabolic_ball(g, f1.theta, 2):
            s2 = s * f1.w * v * weyl.inverse(f1.w)
            assert fm.make(s2, f1) == x
            raw = fm.make(s2 * t, tc.face_intersect(tc.translate(weyl.inverse(t), f1), f2))
            assert raw == x * y


@pytest.mark.parametrize("name", ["aff", "hyp3"])
def test_unit_group_and_idempotents(name):
    g = builtin(name)
    elts = fm.monoid_ball(g, 2)
    one = fm.unit(g)
    for x in elts:
        invertible = any(x * y == one for y in elts)
        assert invertible == x.is_unit()
        if x * x == x:
            assert x == fm.idempotent(x.face)


def test_parabolic_submonoid(hyp3):
    assert fm.in_parabolic_submonoid(fm.from_weyl(W(hyp3, "s1*s2")), {0, 1}, 3)
    e12 = fm.idempotent(R(hyp3, {0, 1}))
    assert fm.in_parabolic_submonoid(e12, {0, 1}, 3)
    assert not fm.in_parabolic_submonoid(e12, {0, 2}, 4)


def test_syntax_round_trip(hyp3):
    for x in fm.monoid_ball(hyp3, 2):
        assert fm.parse_elt(hyp3, fm.format_elt(x)) == x
