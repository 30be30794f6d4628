"""Truncated weight systems and the weight-level model of apartment points.

Weights are tuples of Fractions in the Lambda basis; elements of the root
lattice are tuples of ints in simple-root coordinates ("beta").
Freudenthal's recursion needs root multiplicities of the Kac-Moody algebra;
they come from Peterson's recursion, which only uses the symmetric form
(alpha_i | alpha_j) = d_i a_ij.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import building
from . import gcm as gcm_mod
from . import titscone as tc
from . import weyl
from .facemonoid import FaceMonoidElt
from .gcm import GCM
from .weyl import WeylElt


class NotDominant(ValueError):
    pass


class Mismatch(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# ---- root lattice helpers ---------------------------------------------------

def form(g: GCM, b1, b2) -> Fraction:
    """(b1 | b2) for b1, b2 in simple-root coordinates."""
    return sum((g.d[i] * g.a[i][j] * x * y
                for i, x in enumerate(b1) if x
                for j, y in enumerate(b2) if y), Fraction(0))


def pair_weight(g: GCM, lam, beta) -> Fraction:
    """(lam | beta) = sum_i beta_i d_i lam(h_i)."""
    return sum((g.d[i] * b * lam[i] for i, b in enumerate(beta) if b), Fraction(0))


def betas_up_to(n: int, height: int) -> list[tuple[int, ...]]:
    """All of Q+ with 0 < ht <= height, ordered by height then lexicographically."""
    out = []
    for h in range(1, height + 1):
        level = []
        for cut in itertools.combinations(range(h + n - 1), n - 1):
            parts, prev = [], -1
            for c in cut + (h + n - 1,):
                parts.append(c - prev - 1)
                prev = c
            level.append(tuple(parts))
        out.extend(sorted(level))
    return out


def beta_to_weight(g: GCM, beta) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * g.dim
    for i, b in enumerate(beta):
        if b:
            for k, x in enumerate(g.simple_root(i)):
                out[k] += b * x
    return tuple(out)


def weight_to_beta(g: GCM, vec):
    """Simple-root coordinates of vec, or None if vec is not in the rational root span."""
    return weyl.weyl_group(g).root_coords(vec)


@lru_cache(maxsize=None)
def root_multiplicities(g: GCM, height: int) -> dict[tuple[int, ...], int]:
    """Multiplicities of positive roots of height <= height (Peterson's recursion)."""
    n = g.n
    rho_pair = lambda b: sum((g.d[i] * x for i, x in enumerate(b)), Fraction(0))
    c: dict[tuple[int, ...], Fraction] = {}
    mult: dict[tuple[int, ...], int] = {}
    for beta in betas_up_to(n, height):
        if sum(beta) == 1:
            c[beta] = Fraction(1)
        else:
            rhs = Fraction(0)
            for b1, c1 in c.items():
                if c1 == 0:
                    continue
                b2 = tuple(x - y for x, y in zip(beta, b1))
                if min(b2) < 0 or not any(b2):
                    continue
                c2 = c.get(b2, 0)
                if c2:
                    rhs += form(g, b1, b2) * c1 * c2
            lhs = form(g, beta, beta) - 2 * rho_pair(beta)
            if lhs == 0:
                # only non-roots reach this branch (for positive roots other
                # than simple ones the coefficient is negative), so c_beta
                # comes from the proper divisors alone
                if rhs != 0:
                    raise ArithmeticError(f"Peterson recursion degenerate at {beta}")
                c[beta] = sum((Fraction(mult.get(tuple(x // k for x in beta), 0), k)
                               for k in range(2, max(beta) + 1)
                               if all(x % k == 0 for x in beta)), Fraction(0))
            else:
                c[beta] = rhs / lhs
        val = c[beta]
        for k in range(2, max(beta) + 1):
            if all(x % k == 0 for x in beta):
                sub = tuple(x // k for x in beta)
                val -= Fraction(mult.get(sub, 0), k)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral root multiplicity {val} at {beta}")
        if val:
            mult[beta] = int(val)
    return mult


# ---- weight systems ---------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    gcm: GCM
    highest: tuple
    depth: int
    entries: dict = field(compare=False)     # weight -> multiplicity (> 0)
    by_beta: dict = field(compare=False)     # beta -> multiplicity (> 0)

    def mult(self, lam) -> int:
        return self.entries.get(tuple(Fraction(x) for x in lam), 0)

    def __len__(self):
        return len(self.entries)


def _check_dominant(g: GCM, lam):
    if any(Fraction(x).denominator != 1 for x in lam) or not tc.is_dominant(g, lam):
        raise NotDominant(f"{tc.format_weight(lam)} is not dominant integral")


@lru_cache(maxsize=None)
def _freudenthal(g: GCM, top: tuple, depth: int) -> WeightSystem:
    n = g.n
    roots = root_multiplicities(g, depth) if depth > 0 else {}
    root_list = sorted(roots.items())
    rho = tuple([Fraction(1)] * n + [Fraction(0)] * (g.dim - n))
    top_rho = tuple(x + y for x, y in zip(top, rho))
    m: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for beta in betas_up_to(n, depth):
        denom = 2 * pair_weight(g, top_rho, beta) - form(g, beta, beta)
        num = Fraction(0)
        for alpha, mu in root_list:
            if any(a > b for a, b in zip(alpha, beta)):
                continue
            # (lam + k alpha | alpha) with lam = top - beta
            base = pair_weight(g, top, alpha) - form(g, beta, alpha)
            aa = form(g, alpha, alpha)
            k = 1
            rest = tuple(b - a for a, b in zip(alpha, beta))
            while min(rest) >= 0:
                mk = m.get(rest)
                if mk:
                    num += mu * (base + k * aa) * mk
                k += 1
                rest = tuple(b - a for a, b in zip(alpha, rest))
        num *= 2
        if denom == 0:
            if num != 0:
                raise ArithmeticError(f"Freudenthal recursion degenerate at {beta}")
            continue
        val = num / denom
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral multiplicity {val} at depth {sum(beta)}")
        if val:
            m[beta] = int(val)
    entries = {}
    for beta, mult in m.items():
        lam = tuple(x - y for x, y in zip(top, beta_to_weight(g, beta)))
        entries[lam] = mult
    return WeightSystem(g, top, depth, entries, m)


def freudenthal(g: GCM, top, depth: int) -> WeightSystem:
    top = tuple(Fraction(x) for x in top)
    _check_dominant(g, top)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return _freudenthal(g, top, depth)


def saturation_member(g: GCM, top, lam) -> bool:
    """lam is a weight of L(top).

    Criterion: the dominant W-conjugate mu of lam satisfies top - mu in Q+,
    and every connected component of supp(top - mu) contains some i with
    top(h_i) != 0.  The support condition matters outside finite type: in
    rank-3 hyperbolic type 5·Lambda_1 = Lambda_1 - alpha_2 - alpha_3 is
    dominant and below Lambda_1 but is not a weight.
    If lam is a weight, every reflection step keeps top - mu in Q+ and
    lowers its height, so the loop ends after at most ht(top - lam) steps.
    """
    top = tuple(Fraction(x) for x in top)
    grp = weyl.weyl_group(g)
    mu = tuple(Fraction(x) for x in lam)
    while True:
        beta = weight_to_beta(g, [x - y for x, y in zip(top, mu)])
        if beta is None or any(b.denominator != 1 or b < 0 for b in beta):
            return False
        i = next((k for k in range(g.n) if mu[k] < 0), None)
        if i is None:
            break
        mu = grp.reflect(i, mu)
    support = [k for k, b in enumerate(beta) if b]
    return all(any(top[k] != 0 for k in comp)
               for comp in gcm_mod.components(g, support))


def saturation_disagreements(g: GCM, top, depth: int) -> list:
    """Weights of the depth window where Freudenthal and saturation disagree."""
    ws = freudenthal(g, top, depth)
    top = ws.highest
    bad = []
    for beta in [(0,) * g.n] + betas_up_to(g.n, depth):
        lam = tuple(x - y for x, y in zip(top, beta_to_weight(g, beta)))
        if (ws.by_beta.get(beta, 0) > 0) != saturation_member(g, top, lam):
            bad.append(lam)
    return bad


@lru_cache(maxsize=None)
def _validated(g: GCM, top: tuple, depth: int) -> bool:
    bad = saturation_disagreements(g, top, depth)
    if bad:
        raise Mismatch("saturation disagrees with Freudenthal", witness=bad[0])
    return True


# ---- apartment points -------------------------------------------------------

@dataclass(frozen=True)
class PointModel:
    """The point w P(J), with w minimal in W^J."""

    w: WeylElt
    J: frozenset

    def facet(self) -> building.Facet:
        return building.Facet(self.w, self.J)

    def __repr__(self):
        return f"({weyl.format_word(self.w)}, {tc.fmt_set(self.J)})"


def point(w: WeylElt, J) -> PointModel:
    J = frozenset(J)
    return PointModel(weyl.min_coset_rep(w, J), J)


@dataclass(frozen=True)
class Profile:
    """The grade-Lambda part of an ideal: everything except at most one line.

    `deleted` is the weight of the missing line (None: the ideal is the full
    dual space in this grade).  `table` maps each weight of the depth window to
    (multiplicity, dimension of the ideal in that weight).
    """

    highest: tuple
    deleted: tuple | None
    in_window: bool
    table: dict = field(compare=False)


def _profile(ws: WeightSystem, deleted) -> Profile:
    table = {lam: (m, m) for lam, m in ws.entries.items()}
    in_window = False
    if deleted is not None and deleted in table:
        m, _ = table[deleted]
        table[deleted] = (m, m - 1)
        in_window = True
    return Profile(ws.highest, deleted, in_window, table)


def ideal_profile(p: PointModel, top, depth: int) -> Profile:
    g = p.w.gcm
    ws = freudenthal(g, top, depth)
    if not tc.in_closed_facet(g, ws.highest, p.J):
        return _profile(ws, None)
    return _profile(ws, p.w.act(ws.highest))


def is_weight_line_union(prof: Profile) -> bool:
    """Every weight space is either inside the ideal or misses exactly a full line."""
    for lam, (m, dim) in prof.table.items():
        if dim != m and not (lam == prof.deleted and m == 1 and dim == 0):
            return False
    return True


def act_point_formula(x: FaceMonoidElt, p: PointModel) -> PointModel:
    res = building.monoid_action(x, p.facet())
    return PointModel(res.w, res.J)


def default_samples(g: GCM) -> list[tuple]:
    """Fundamental weights and their pairwise sums."""
    fund = [tc.fundamental(g, i) for i in range(g.dim)]
    sums = [tuple(a + b for a, b in zip(fund[i], fund[j]))
            for i in range(g.dim) for j in range(i + 1, g.dim)]
    return fund + sums


def point_profiles(x: FaceMonoidElt, p: PointModel, samples) -> dict:
    """deleted weight (or None) of x·wP(J) in each sampled grade, traced through
    the weight lines: n_w v_Lambda, then w_face^-1, then the projection
    e(R(theta)), then the group part."""
    g = x.gcm
    theta_face = tc.standard_face(g, x.theta)
    tau = weyl.multiply(weyl.inverse(x.face.w), p.w)
    out = {}
    for top in samples:
        if not tc.in_closed_facet(g, top, p.J):
            out[top] = None
            continue
        nu = tau.act(top)
        out[top] = x.u.act(nu) if tc.face_contains(theta_face, nu) else None
    return out


def reconstruct(g: GCM, profiles: dict) -> PointModel:
    """Read (w', J') off the deleted lines of the fundamental grades."""
    J = frozenset(i for i in range(g.n) if profiles[tc.fundamental(g, i)] is None)
    total = [Fraction(0)] * g.dim
    for i in range(g.n):
        if i not in J:
            total = [a + b for a, b in zip(total, profiles[tc.fundamental(g, i)])]
    grp = weyl.weyl_group(g)
    w = grp.from_word(grp.strip(tuple(total)))
    return PointModel(w, J)


def act_point_oracle(x: FaceMonoidElt, p: PointModel, samples=None, depth: int = 6) -> PointModel:
    g = x.gcm
    samples = default_samples(g) if samples is None else [tuple(map(Fraction, s)) for s in samples]
    for i in range(g.n):
        if tc.fundamental(g, i) not in samples:
            raise ValueError("samples must contain all fundamental weights")
    profiles = point_profiles(x, p, samples)

    # the case split of the proof: y Lambda in R(theta) iff Lambda in closed F_K
    trace = building.action_trace(x, p.facet())
    K = x.theta | p.J | trace.red_y
    theta_face = tc.standard_face(g, x.theta)
    for top in samples:
        if tc.in_closed_facet(g, top, p.J):
            lhs = tc.face_contains(theta_face, trace.y.act(top))
            if lhs != tc.in_closed_facet(g, top, K):
                raise Mismatch("facet criterion fails", witness=top)

    found = reconstruct(g, profiles)
    for top in samples:
        expect = found.w.act(top) if tc.in_closed_facet(g, top, found.J) else None
        if expect != profiles[top]:
            raise Mismatch("profiles are not those of a single apartment point", witness=top)
        if depth >= 0 and profiles[top] is not None:
            prof = _profile(freudenthal(g, top, depth), profiles[top])
            if not is_weight_line_union(prof):
                raise Mismatch("profile is not a union of weight lines", witness=top)
    formula = act_point_formula(x, p)
    if formula != found:
        raise Mismatch(f"formula gives {formula}, weights give {found}",
                       witness=next((t for t in samples if profiles[t] is not None), None))
    return found


# ---- TSV --------------------------------------------------------------------

def weight_table_tsv(ws: WeightSystem) -> str:
    g = ws.gcm
    head = "\t".join([f"L{k + 1}" for k in range(g.dim)] + ["depth", "mult"])
    rows = [head]
    for beta in sorted(ws.by_beta, key=lambda b: (sum(b), b)):
        lam = tuple(x - y for x, y in zip(ws.highest, beta_to_weight(g, beta)))
        rows.append("\t".join([str(x) for x in lam] + [str(sum(beta)), str(ws.by_beta[beta])]))
    return "\n".join(rows) + "\n"
