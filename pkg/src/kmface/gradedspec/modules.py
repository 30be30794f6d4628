"""Truncated irreducible highest-weight modules with explicit e/f/h tables.

A vector of weight lambda != Lambda in L(Lambda) is zero iff every e_j kills
it, so a vector is faithfully represented by its "e-image"
(e_1 v, ..., e_n v), which lives in higher weight spaces that are already
built.  Weight spaces are filled by lowering: the candidates f_i b (b a basis
vector one step up) are taken in lexicographic order of their f-words and
kept when their e-images are independent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .. import gcm as gcm_mod
from .. import titscone as tc
from .. import weights as wt
from ..gcm import GCM
from ..linalg import Span

Vec = dict  # basis index -> Fraction (sparse)

MAX_FINITE_RANK = 2


@dataclass
class BasisVector:
    beta: tuple[int, ...]
    weight: tuple
    word: tuple[int, ...]          # f_{word[0]} ... f_{word[-1]} v_Lambda
    parent: tuple[int, int] | None  # (i, index): this vector is f_i applied to basis[index]


@dataclass
class TruncatedModule:
    gcm: GCM
    highest: tuple
    depth: int | None
    basis: list = field(default_factory=list)
    by_beta: dict = field(default_factory=dict)
    e: list = field(default_factory=list)   # e[i][k] = sparse image of basis k
    f: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight_of(self, k: int):
        return self.basis[k].weight

    def apply(self, op: str, i: int, v: Vec) -> Vec:
        table = (self.e if op == "e" else self.f)[i]
        out: dict[int, Fraction] = {}
        for k, c in v.items():
            for j, x in table.get(k, {}).items():
                out[j] = out.get(j, 0) + c * x
        return {j: x for j, x in out.items() if x != 0}

    def h(self, i: int, v: Vec) -> Vec:
        return {k: c * self.basis[k].weight[i] for k, c in v.items() if self.basis[k].weight[i] != 0}

    def matrix(self, op: str, i: int):
        """Dense matrix of e_i or f_i (columns = images of basis vectors)."""
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        table = (self.e if op == "e" else self.f)[i]
        for k, img in table.items():
            for j, x in img.items():
                m[j][k] = x
        return m

    def indices_supported_on(self, J) -> list[int]:
        """Basis vectors of weight in Lambda - Q_J+ (they span L_J(Lambda))."""
        J = frozenset(J)
        return [k for k, b in enumerate(self.basis)
                if all(x == 0 for i, x in enumerate(b.beta) if i not in J)]


def _build(g: GCM, top: tuple, depth: int | None) -> TruncatedModule:
    n = g.n
    mod = TruncatedModule(g, top, depth)
    mod.e = [dict() for _ in range(n)]
    mod.f = [dict() for _ in range(n)]
    zero = (0,) * n
    mod.basis.append(BasisVector(zero, top, (), None))
    mod.by_beta[zero] = [0]
    height = 0
    while depth is None or height < depth:
        height += 1
        added = False
        for beta in [b for b in wt.betas_up_to(n, height) if sum(b) == height]:
            cands = []
            for i in range(n):
                if beta[i] == 0:
                    continue
                up = tuple(x - (k == i) for k, x in enumerate(beta))
                for idx in mod.by_beta.get(up, []):
                    cands.append(((i,) + mod.basis[idx].word, i, idx))
            if not cands:
                continue
            cands.sort()
            # coordinates of the e-image: basis vectors of the weights beta - alpha_j
            targets = []
            for j in range(n):
                if beta[j]:
                    up = tuple(x - (k == j) for k, x in enumerate(beta))
                    targets += [(j, t) for t in mod.by_beta.get(up, [])]
            pos = {jt: p for p, jt in enumerate(targets)}
            sel = Span(len(targets))
            images = []
            new_idx = []
            lam = tuple(x - y for x, y in zip(top, wt.beta_to_weight(g, beta)))
            for word, i, idx in cands:
                img = _e_image(mod, top, beta, i, idx)
                dense = [Fraction(0)] * len(targets)
                for jt, x in img.items():
                    dense[pos[jt]] = x
                images.append(dense)
                if sel.add(dense):
                    k = len(mod.basis)
                    mod.basis.append(BasisVector(beta, lam, word, (i, idx)))
                    new_idx.append(k)
                    for (j, t), x in img.items():
                        mod.e[j].setdefault(k, {})[t] = x
            if not new_idx:
                continue
            added = True
            mod.by_beta[beta] = new_idx
            # f-tables: every candidate f_i b in terms of the new basis
            for (word, i, idx), dense in zip(cands, images):
                coords = sel.coords(dense)
                img = {new_idx[p]: c for p, c in enumerate(coords) if c != 0}
                if img:
                    mod.f[i][idx] = img
        if not added:
            break
    return mod


def _e_image(mod: TruncatedModule, top, beta, i: int, idx: int) -> dict:
    """e_j (f_i b) = f_i (e_j b) + delta_ij lambda_b(h_i) b, for b = basis[idx]."""
    out: dict[tuple[int, int], Fraction] = {}
    b = mod.basis[idx]
    for j in range(mod.gcm.n):
        ejb = mod.e[j].get(idx, {})
        for t, c in ejb.items():
            for s, x in mod.f[i].get(t, {}).items():
                out[(j, s)] = out.get((j, s), 0) + c * x
        if j == i and b.weight[i] != 0:
            out[(j, idx)] = out.get((j, idx), 0) + b.weight[i]
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def _module(g: GCM, top: tuple, depth: int | None) -> TruncatedModule:
    return _build(g, top, depth)


def truncated_module(g: GCM, top, depth: int | None = None) -> TruncatedModule:
    """L(top); with depth=None the module is built completely (finite type only)."""
    top = tuple(Fraction(x) for x in top)
    if any(x.denominator != 1 for x in top) or not tc.is_dominant(g, top):
        raise wt.NotDominant(f"{tc.format_weight(top)} is not dominant integral")
    if depth is None:
        types = gcm_mod.classify(g).values()
        if any(t != gcm_mod.FINITE for t in types):
            raise ValueError("complete modules need a finite-type matrix; pass a depth")
    return _module(g, top, depth)


def positive_roots(g: GCM, J=None) -> list[tuple[int, ...]]:
    """Positive roots of the finite-type subsystem on J, in simple-root coordinates."""
    J = frozenset(range(g.n)) if J is None else frozenset(J)
    if not J:
        return []
    if any(t != gcm_mod.FINITE for t in gcm_mod.classify(g, J).values()):
        raise ValueError("subsystem is not of finite type")
    out = []
    height = 0
    while True:
        height += 1
        level = [b for b, m in wt.root_multiplicities(g, height).items()
                 if sum(b) == height and all(b[i] == 0 for i in range(g.n) if i not in J)]
        if not level:
            return out
        out.extend(sorted(level))


def weyl_dimension(g: GCM, top, J=None) -> Fraction:
    """Weyl's dimension formula for the J-subalgebra at top restricted to h_J."""
    rho = tuple([1] * g.n + [0] * (g.dim - g.n))
    value = Fraction(1)
    for alpha in positive_roots(g, J):
        shifted = tuple(Fraction(x) + y for x, y in zip(top, rho))
        value *= wt.pair_weight(g, shifted, alpha) / wt.pair_weight(g, rho, alpha)
    return value
