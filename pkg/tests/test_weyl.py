import random

import pytest

from kmface import weyl
from kmface.gcm import builtin
from oracles import bfs_words, reflection_matrix, mat_mul

NAMES = ["a1", "a2", "b2", "aff", "hyp3"]


def w(g, text):
    return weyl.parse_word(g, text)


@pytest.mark.parametrize("name,radius", [("a2", 4), ("b2", 5), ("aff", 6), ("hyp3", 4)])
def test_ball_matches_bfs_oracle(name, radius):
    g = builtin(name)
    oracle = bfs_words(g.a, radius)
    elts = weyl.ball(g, radius)
    assert sorted(x.word for x in elts) == sorted(oracle.values())
    assert len({x.mat for x in elts}) == len(elts)


@pytest.mark.parametrize("name", NAMES)
def test_random_words_normalize_to_oracle(name):
    g = builtin(name)
    oracle = bfs_words(g.a, 6)
    rng = random.Random(1)
    gens = [reflection_matrix(g.a, i) for i in range(g.n)]
    for _ in range(200):
        word = [rng.randrange(g.n) for _ in range(rng.randrange(9))]
        m = tuple(tuple(int(r == c) for c in range(g.n)) for r in range(g.n))
        for i in word:
            m = mat_mul(m, gens[i])
        x = weyl.from_word(g, word)
        if m in oracle:
            assert x.word == oracle[m]
        else:
            assert len(x.word) > 6


def test_multiply_examples(a2, hyp3):
    assert w(a2, "s1*s2") * w(a2, "s2") == w(a2, "s1")
    assert w(a2, "s2*s1*s2") == w(a2, "s1*s2*s1")
    assert w(a2, "s2*s1*s2").word == (0, 1, 0)
    assert (w(hyp3, "s1*s3") * w(hyp3, "s3*s1")).is_identity()


def test_length_and_descents(a2, aff, hyp3):
    x = w(a2, "s1*s2*s1")
    assert weyl.length(x) == 3 and weyl.descents(x) == {0, 1}
    for k in range(6):
        assert weyl.length(weyl.from_word(aff, [0, 1] * k)) == 2 * k
    for g in (a2, aff, hyp3):
        assert weyl.descents(weyl.identity(g)) == frozenset()
    assert weyl.descents(w(hyp3, "s1*s3"), "right") == {2}


def test_red_support(a2, hyp3):
    assert weyl.red_support(weyl.identity(a2)) == frozenset()
    assert weyl.red_support(w(a2, "s1*s2*s1")) == weyl.red_support(w(a2, "s2*s1*s2")) == {0, 1}
    assert weyl.red_support(w(hyp3, "s3*s1")) == {0, 2}


def test_coset_examples(a2, hyp3):
    assert weyl.parabolic_factor(w(a2, "s1*s2"), {1}) == (w(a2, "s1"), w(a2, "s2"))
    assert weyl.min_coset_rep(w(a2, "s2*s1"), {0, 1}).is_identity()
    assert weyl.parabolic_factor(w(hyp3, "s3*s1"), {0}) == (w(hyp3, "s3"), w(hyp3, "s1"))


def test_double_coset_examples(a2, hyp3):
    e = weyl.identity(a2)
    assert weyl.double_coset_decompose(w(a2, "s2*s1"), {0}, {1}) == (e, w(a2, "s2*s1"), e)
    assert weyl.double_coset_decompose(w(a2, "s1*s2"), {0}, {1}) == (w(a2, "s1"), e, w(a2, "s2"))
    assert weyl.double_coset_decompose(w(hyp3, "s1*s3"), {0, 1}, set()) == (
        w(hyp3, "s1"), w(hyp3, "s3"), weyl.identity(hyp3))
    assert weyl.in_parabolic_product(w(a2, "s1*s2"), {0}, {1})
    assert not weyl.in_parabolic_product(w(a2, "s2*s1"), {0}, {1})
    assert weyl.in_parabolic_product(e, {0}, {1})


def test_ball_sizes(aff, a2, hyp3):
    assert len(weyl.ball(aff, 3)) == 7
    assert len(weyl.ball(a2, 10)) == 6
    assert [x.word for x in weyl.ball(hyp3, 0)] == [()]


def subsets(n):
    return [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]


@pytest.mark.parametrize("name,radius", [("a2", 3), ("b2", 4), ("aff", 4), ("hyp3", 3)])
def test_ball_properties(name, radius):
    g = builtin(name)
    elts = weyl.ball(g, radius)
    for x in elts:
        # exchange property
        for i in weyl.descents(x):
            assert weyl.length(weyl.simple(g, i) * x) == weyl.length(x) - 1
        for y in elts:
            xy = x * y
            assert weyl.length(xy) <= weyl.length(x) + weyl.length(y)
            reduced = weyl.length(weyl.from_word(g, x.word + y.word)) == len(x.word) + len(y.word)
            assert (weyl.length(xy) == weyl.length(x) + weyl.length(y)) == reduced
        for K in subsets(g.n):
            for J in subsets(g.n):
                a, y, c = weyl.double_coset_decompose(x, K, J)
                assert a * y * c == x
                assert weyl.in_parabolic(a, K) and weyl.in_parabolic(c, J)
                assert not weyl.descents(y, "left") & K and not weyl.descents(y, "right") & J
                # the other strip order reaches the same representative
                yy = x
                for _ in range(2 * radius + 2):
                    yy = weyl.min_coset_rep(weyl.min_coset_rep(yy, J, "right"), K, "left")
                assert yy == y


@pytest.mark.parametrize("name", ["a2", "aff", "hyp3"])
def test_red_invariant_under_reduced_words(name):
    """Sample reduced words by random descent paths; all give the same support."""
    g = builtin(name)
    rng = random.Random(7)
    for x in weyl.ball(g, 5):
        supports = set()
        for _ in range(20):
            y, word = x, []
            while y.word:
                i = rng.choice(sorted(weyl.descents(y)))
                word.append(i)
                y = weyl.simple(g, i) * y
            assert weyl.from_word(g, word) == x and len(word) == len(x.word)
            supports.add(frozenset(word))
        assert supports == {weyl.red_support(x)}


def test_length_counts_inversions(aff, hyp3):
    """|word| equals the number of positive real roots in a ball sent negative."""
    for g in (aff, hyp3):
        grp = weyl.weyl_group(g)
        roots = set()
        for y in weyl.ball(g, 4):
            for i in range(g.n):
                c = grp.root_coords(weyl.act_on_root(y, i))
                if all(v >= 0 for v in c):
                    roots.add(tuple(c))
        for x in weyl.ball(g, 2):
            neg = 0
            for beta in roots:
                vec = tuple(sum(b * a for b, a in zip(beta, col)) for col in zip(*grp.alpha))
                img = grp.root_coords(x.act(vec))
                neg += all(v <= 0 for v in img)
            assert neg == weyl.length(x)


def test_word_syntax_round_trip(hyp3):
    for x in weyl.ball(hyp3, 3):
        assert weyl.parse_word(hyp3, weyl.format_word(x)) == x
    with pytest.raises(ValueError):
        weyl.parse_word(hyp3, "s4")
    with pytest.raises(ValueError):
        weyl.parse_word(hyp3, "t1")
