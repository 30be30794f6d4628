"""The truncated Cartan algebra of a finite-type GCM and its evaluation identities.

Dual vectors of L(top) are coordinate vectors in the basis dual to the
module basis, so delta_top is the dual vector with index 0.  The map
L(top1 + top2) -> L(top1) ⊗ L(top2) sends each basis vector f_word v to
f_word (v ⊗ v); the Cartan product is its transpose.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .. import titscone as tc
from ..gcm import GCM
from . import algebra as al
from .modules import TruncatedModule, positive_roots, truncated_module, weyl_dimension


def _grade(top) -> tuple:
    return tuple(int(x) for x in top)


def module(g: GCM, top) -> TruncatedModule:
    return truncated_module(g, tuple(top))


def dual_dim(g: GCM, top) -> int:
    return module(g, top).dim


# ---- the Cartan product ---------------------------------------------------

def _f_on_tensor(m1: TruncatedModule, m2: TruncatedModule, i: int, t: dict) -> dict:
    out: dict = {}
    for (a, b), c in t.items():
        for a2, x in m1.f[i].get(a, {}).items():
            out[(a2, b)] = out.get((a2, b), 0) + c * x
        for b2, x in m2.f[i].get(b, {}).items():
            out[(a, b2)] = out.get((a, b2), 0) + c * x
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def embedding(g: GCM, top1: tuple, top2: tuple) -> tuple:
    """Images of the basis of L(top1 + top2) in L(top1) ⊗ L(top2), as sparse dicts."""
    m1, m2 = module(g, top1), module(g, top2)
    total = module(g, tuple(x + y for x, y in zip(top1, top2)))
    images: list[dict] = []
    for b in total.basis:
        if b.parent is None:
            images.append({(0, 0): Fraction(1)})
        else:
            i, idx = b.parent
            images.append(_f_on_tensor(m1, m2, i, images[idx]))
    return tuple(images)


@lru_cache(maxsize=None)
def product_table(g: GCM, top1: tuple, top2: tuple) -> np.ndarray:
    """T[a, b, k] = coefficient of the k-th dual basis vector in phi_a • psi_b."""
    d1, d2 = dual_dim(g, top1), dual_dim(g, top2)
    images = embedding(g, top1, top2)
    table = np.full((d1, d2, len(images)), Fraction(0), dtype=object)
    for k, img in enumerate(images):
        for (a, b), c in img.items():
            table[a, b, k] = Fraction(c)
    return table


def cartan_product(g: GCM, top1, phi, top2, psi) -> np.ndarray:
    top1, top2 = _grade(top1), _grade(top2)
    table = product_table(g, top1, top2)
    return np.tensordot(np.tensordot(al.vec(phi), table, axes=(0, 0)), al.vec(psi), axes=(0, 0))


def bounded_grades(g: GCM, bound: int) -> list[tuple]:
    return list(itertools.product(range(bound + 1), repeat=g.n))


@lru_cache(maxsize=None)
def cartan_algebra(g: GCM, bound: int = 3) -> al.TabulatedAlgebra:
    """CA on the dominant weights with every coordinate at most `bound`."""
    if g.dim != g.n:
        raise ValueError("the Cartan algebra is tabulated for finite type only")
    grades = bounded_grades(g, bound)
    dims = {lam: dual_dim(g, lam) for lam in grades}
    tables = {}
    for lam in grades:
        for mu in grades:
            total = al.add_grades(lam, mu)
            if total in dims:
                tables[(lam, mu)] = product_table(g, lam, mu)
    return al.TabulatedAlgebra(f"CA({g.name or 'gcm'}, <= {bound})", dims, tables, (0,) * g.n)


def in_closed_facet(lam, J) -> bool:
    return all(lam[j] == 0 for j in J)


def build_P_ideal(A: al.TabulatedAlgebra, J) -> al.GradedIdeal:
    """Keep only the highest line delta_lam for lam in the closed facet of J."""
    J = frozenset(J)
    kept = {}
    for lam in A.grades:
        start = 1 if in_closed_facet(lam, J) else 0
        kept[lam] = range(start, A.dims[lam])
    return al.coordinate_ideal(A, kept)


def ideal_contains(big: al.GradedIdeal, small: al.GradedIdeal) -> bool:
    return all(big.contains(g, v) for g in small.algebra.grades for v in small.grade_basis(g))


def ideal_sum(Q1: al.GradedIdeal, Q2: al.GradedIdeal) -> al.GradedIdeal:
    A = Q1.algebra
    return al.GradedIdeal(A, {g: Q1.grade_basis(g) + Q2.grade_basis(g) for g in A.grades})


def ideals_equal(Q1: al.GradedIdeal, Q2: al.GradedIdeal) -> bool:
    return ideal_contains(Q1, Q2) and ideal_contains(Q2, Q1)


# ---- subspaces L_J ---------------------------------------------------------

def levi_indices(g: GCM, top, J) -> list[int]:
    return module(g, top).indices_supported_on(J)


def levi_dimension_check(g: GCM, top, J):
    """L_J(top) is stable under e_j, f_j (j in J) and has the Weyl dimension of g_J.

    Returns None or a witness string.
    """
    m = module(g, top)
    idx = set(levi_indices(g, top, J))
    for j in J:
        for op in (m.e[j], m.f[j]):
            for k in idx:
                if not set(op.get(k, {})) <= idx:
                    return f"L_J not stable at basis vector {k} under index {j + 1}"
    expected = weyl_dimension(g, top, J)
    if len(idx) != expected:
        return f"dim L_J = {len(idx)}, Weyl dimension {expected}"
    return None


def levi_product_check(g: GCM, top1, top2, J):
    """phi • psi stays in L_J(top1+top2)^(*) for basis duals of L_J(top1), L_J(top2)."""
    top1, top2 = _grade(top1), _grade(top2)
    total = al.add_grades(top1, top2)
    table = product_table(g, top1, top2)
    allowed = set(levi_indices(g, total, J))
    for a in levi_indices(g, top1, J):
        for b in levi_indices(g, top2, J):
            support = {k for k in range(table.shape[2]) if table[a, b, k] != 0}
            if not support <= allowed:
                return (top1, top2, a, b)
    return None


# ---- group elements acting on modules -------------------------------------------

Vec = dict


def _add(u: Vec, v: Vec, c=1) -> Vec:
    out = dict(u)
    for k, x in v.items():
        out[k] = out.get(k, 0) + c * x
    return {k: x for k, x in out.items() if x != 0}


@lru_cache(maxsize=None)
def root_recipe(g: GCM, beta: tuple) -> tuple:
    """(i,) for a simple root, else (i, beta - alpha_i) with F_beta = [f_i, F_{beta - alpha_i}]."""
    if sum(beta) == 1:
        return (beta.index(1),)
    roots = set(positive_roots(g))
    for i in range(g.n):
        rest = tuple(x - (k == i) for k, x in enumerate(beta))
        if beta[i] and rest in roots:
            return (i, rest)
    raise ValueError(f"{beta} is not a positive root")


def apply_root_vector(m: TruncatedModule, beta: tuple, v: Vec) -> Vec:
    """F_beta v for a positive root beta (a lowering operator)."""
    recipe = root_recipe(m.gcm, beta)
    if len(recipe) == 1:
        return m.apply("f", recipe[0], v)
    i, rest = recipe
    first = m.apply("f", i, apply_root_vector(m, rest, v))
    second = apply_root_vector(m, rest, m.apply("f", i, v))
    return _add(first, second, -1)


def _apply_op(m: TruncatedModule, kind: str, label, v: Vec) -> Vec:
    if kind == "F":
        return apply_root_vector(m, label, v)
    return m.apply(kind, label, v)


def exp_action(m: TruncatedModule, kind: str, label, t, v: Vec) -> Vec:
    """exp(t X) v for a nilpotent X given by (kind, label)."""
    out, term, k = dict(v), dict(v), 0
    while term:
        k += 1
        term = {j: x * t / k for j, x in _apply_op(m, kind, label, term).items()}
        out = _add(out, term)
    return out


def act_word(m: TruncatedModule, word, v: Vec) -> Vec:
    """Apply g = word[0] word[1] ... to v.

    Letters are ('e', i, t), ('f', i, t), ('F', beta, t) for exp(t X) and
    ('h', i, s) for the torus element acting by s^lam(h_i) on weight lam.
    """
    for kind, label, t in reversed(list(word)):
        t = Fraction(t)
        if kind == "h":
            v = {k: x * t ** int(m.basis[k].weight[label]) for k, x in v.items()}
        else:
            v = exp_action(m, kind, label, t, v)
    return v


def inverse_word(word) -> list:
    out = []
    for kind, label, t in reversed(list(word)):
        out.append((kind, label, 1 / Fraction(t) if kind == "h" else -Fraction(t)))
    return out


def matrix_coefficient(g: GCM, top, phi, word, v: Vec) -> Fraction:
    """phi(g v) for phi in L(top)^(*) (dense) and v in L(top) (sparse)."""
    m = module(g, top)
    gv = act_word(m, word, v)
    return sum((Fraction(phi[k]) * x for k, x in gv.items()), Fraction(0))


def highest_vector() -> Vec:
    return {0: Fraction(1)}


# ---- sampled identities -------------------------------------------------------

def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 5))


def unipotent_roots(g: GCM, J) -> list[tuple]:
    """Positive roots outside the root lattice of J, whose root groups generate (U^-)^J."""
    J = frozenset(J)
    return [b for b in positive_roots(g) if any(b[i] for i in range(g.n) if i not in J)]


def sample_unipotent(g: GCM, J, rng: random.Random) -> list:
    return [("F", beta, _rational(rng)) for beta in unipotent_roots(g, J)]


def _random_dual(d: int, rng: random.Random, support=None) -> list:
    support = range(d) if support is None else support
    out = [Fraction(0)] * d
    for k in support:
        out[k] = _rational(rng)
    return out


@dataclass
class IdentityReport:
    name: str
    samples: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def gamma_identity_check(g: GCM, J, samples: int = 100, seed: int = 0, bound: int = 3) -> IdentityReport:
    """phi(u v_N) psi(u v_M) = (phi • psi)(u v_{N+M}) for u in (U^-)^J, N, M in the closed facet of J."""
    J = frozenset(J)
    rng = random.Random(seed)
    tops = [lam for lam in bounded_grades(g, bound) if in_closed_facet(lam, J)]
    pairs = [(a, b) for a in tops for b in tops if all(x + y <= bound for x, y in zip(a, b))]
    failures = []
    for _ in range(samples):
        top1, top2 = pairs[rng.randrange(len(pairs))]
        total = al.add_grades(top1, top2)
        phi = _random_dual(dual_dim(g, top1), rng)
        psi = _random_dual(dual_dim(g, top2), rng)
        u = sample_unipotent(g, J, rng)
        left = (matrix_coefficient(g, top1, phi, u, highest_vector())
                * matrix_coefficient(g, top2, psi, u, highest_vector()))
        prod = cartan_product(g, top1, phi, top2, psi)
        right = matrix_coefficient(g, total, list(prod), u, highest_vector())
        if left != right:
            failures.append((top1, top2, phi, psi, u, left, right))
    return IdentityReport("gamma", samples, failures)


def levi_invariance_check(g: GCM, J, samples: int = 100, seed: int = 0, bound: int = 3) -> IdentityReport:
    """phi(u v) = phi(v) for phi in L_J(top)^(*), v in L_J(top), u in (U^-)^J."""
    J = frozenset(J)
    rng = random.Random(seed)
    tops = bounded_grades(g, bound)
    failures = []
    for _ in range(samples):
        top = tops[rng.randrange(len(tops))]
        idx = levi_indices(g, top, J)
        phi = _random_dual(dual_dim(g, top), rng, idx)
        v = {k: _rational(rng) for k in idx}
        v = {k: x for k, x in v.items() if x != 0}
        u = sample_unipotent(g, J, rng)
        before = matrix_coefficient(g, top, phi, [], v)
        after = matrix_coefficient(g, top, phi, u, v)
        if before != after:
            failures.append((top, phi, v, u, before, after))
    return IdentityReport("levi invariance", samples, failures)


def sample_group_word(g: GCM, rng: random.Random, length: int = 3) -> list:
    word = []
    for _ in range(length):
        kind = rng.choice("ef")
        word.append((kind, rng.randrange(g.n), _rational(rng) or Fraction(1)))
    return word


def stabilizer_shadow_check(g: GCM, J, samples: int = 20, seed: int = 0, bound: int = 2) -> IdentityReport:
    """g·P(J) = P(J) exactly when g fixes the highest line in every grade of the closed facet.

    The left side transforms the ideal through g^-1 on every basis vector;
    the right side only looks at g v_lam.
    """
    J = frozenset(J)
    rng = random.Random(seed)
    tops = [lam for lam in bounded_grades(g, bound) if in_closed_facet(lam, J)]
    failures = []
    for _ in range(samples):
        word = sample_group_word(g, rng)
        # bias half the samples towards the stabilizer: raising letters and f_j with j in J
        if rng.random() < 0.5:
            word = [(k, i, t) for k, i, t in word if k == "e" or i in J] or [("e", 0, Fraction(1))]
        inv = inverse_word(word)
        stable, fixes = True, True
        for top in tops:
            m = module(g, top)
            # (g·phi_k)(v_top) = phi_k(g^-1 v_top); P(J)_top is spanned by phi_k, k >= 1
            moved = act_word(m, inv, highest_vector())
            if any(k != 0 for k in moved):
                stable = False
            image = act_word(m, word, highest_vector())
            if any(k != 0 for k in image):
                fixes = False
        if stable != fixes:
            failures.append((word, stable, fixes))
    return IdentityReport("stabilizer", samples, failures)


# ---- orbit closures -----------------------------------------------------------

@dataclass
class OrbitReport:
    J: frozenset
    K: frozenset
    contained: bool        # closure of Or(K) inside closure of Or(J), read off P(K) ⊇ P(J)
    expected: bool         # K ⊇ J
    intersection: frozenset | None
    strata: int

    @property
    def passed(self) -> bool:
        return (self.contained == self.expected and self.intersection == self.J | self.K
                and self.strata == 2 ** self._free)

    _free: int = 0


def _subsets(n: int):
    for k in range(1 << n):
        yield frozenset(i for i in range(n) if k >> i & 1)


def orbit_closure_poset(g: GCM, J, K, bound: int = 2) -> OrbitReport:
    J, K = frozenset(J), frozenset(K)
    A = cartan_algebra(g, bound)
    ideals = {L: build_P_ideal(A, L) for L in _subsets(g.n)}
    contained = ideal_contains(ideals[K], ideals[J])
    total = ideal_sum(ideals[J], ideals[K])
    meet = [L for L, Q in ideals.items() if ideals_equal(Q, total)]
    strata = sum(1 for L, Q in ideals.items() if ideal_contains(Q, ideals[J]))
    report = OrbitReport(J, K, contained, K >= J, meet[0] if len(meet) == 1 else None, strata)
    report._free = g.n - len(J)
    return report


def format_dual(top, phi) -> str:
    terms = [f"{c}*w{k}" for k, c in enumerate(phi) if c != 0]
    return f"{tc.format_weight(top)}: " + (" + ".join(terms) if terms else "0")
