"""Tits cone, its faces R(theta) and their translates.

Weights are tuples of rationals: the values lambda(h_j) for j < dim.
A face is stored as (theta, w) with theta special and w minimal in
W^(theta u theta-perp); it stands for w·R(theta).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gcm as gcm_mod
from . import weyl
from .gcm import GCM
from .weyl import WeylElt


class NotInConeWithinBudget(Exception):
    """The dominance algorithm ran out of steps; membership is undecided."""


class NotSpecial(ValueError):
    pass


class SpecialityViolated(Exception):
    pass


Weight = tuple


def weight(coords) -> Weight:
    return tuple(Fraction(c) for c in coords)


def fundamental(g: GCM, i: int) -> Weight:
    return tuple(Fraction(int(k == i)) for k in range(g.dim))


def is_dominant(g: GCM, lam) -> bool:
    return all(lam[i] >= 0 for i in range(g.n))


def in_closed_facet(g: GCM, lam, J) -> bool:
    """lam in the closure of F_J: dominant and vanishing on h_j for j in J."""
    return is_dominant(g, lam) and all(lam[j] == 0 for j in J)


def dominant_chamber_rep(g: GCM, lam, max_iter: int = 10_000):
    """(w, mu) with mu dominant and w·mu = lam, or NotInConeWithinBudget."""
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    grp = weyl.weyl_group(g)
    mu = tuple(lam)
    word = []
    for _ in range(max_iter + 1):
        i = next((k for k in range(g.n) if mu[k] < 0), None)
        if i is None:
            # lam = s_{i1}...s_{ik} mu for the recorded sequence i1..ik
            return grp.from_word(word), mu
        mu = grp.reflect(i, mu)
        word.append(i)
    raise NotInConeWithinBudget(f"no dominant representative within {max_iter} steps")


def in_tits_cone(g: GCM, lam, max_iter: int = 10_000) -> bool:
    dominant_chamber_rep(g, lam, max_iter)
    return True


@dataclass(frozen=True)
class Face:
    theta: frozenset
    w: WeylElt

    def __repr__(self):
        return format_face(self)

    @property
    def gcm(self) -> GCM:
        return self.w.gcm


def face_key(f: Face):
    return (len(f.theta), sorted(f.theta), weyl.shortlex_key(f.w))


def stabilizer_type(g: GCM, theta) -> frozenset:
    """theta u theta-perp: the setwise stabilizer of R(theta) is W of this set."""
    theta = frozenset(theta)
    return theta | gcm_mod.orthogonal(g, theta)


def standard_face(g: GCM, theta) -> Face:
    theta = frozenset(theta)
    if not gcm_mod.is_special(g, theta):
        raise NotSpecial(f"{fmt_set(theta)} is not special")
    return Face(theta, weyl.identity(g))


def make_face(theta, w: WeylElt) -> Face:
    """Face w·R(theta), canonicalized."""
    return translate(w, standard_face(w.gcm, theta))


def translate(x: WeylElt, f: Face) -> Face:
    stab = stabilizer_type(x.gcm, f.theta)
    return Face(f.theta, weyl.min_coset_rep(weyl.multiply(x, f.w), stab))


def face_leq(f1: Face, f2: Face) -> bool:
    """f1 is contained in f2."""
    if not f1.theta >= f2.theta:
        return False
    x = weyl.multiply(weyl.inverse(f2.w), f1.w)
    return weyl.in_parabolic_product(x, gcm_mod.orthogonal(x.gcm, f2.theta), f1.theta)


def _base_position(f1: Face, f2: Face):
    g = f1.gcm
    x = weyl.multiply(weyl.inverse(f1.w), f2.w)
    return weyl.double_coset_decompose(x, stabilizer_type(g, f1.theta),
                                       stabilizer_type(g, f2.theta))


def face_intersect(f1: Face, f2: Face) -> Face:
    g = f1.gcm
    a, tau, _ = _base_position(f1, f2)
    theta = f1.theta | f2.theta | weyl.red_support(tau)
    if not gcm_mod.is_special(g, theta):
        raise SpecialityViolated(
            f"{fmt_set(theta)} from {format_face(f1)} and {format_face(f2)} is not special")
    return translate(weyl.multiply(f1.w, a), Face(theta, weyl.identity(g)))


def face_join_trace(f1: Face, f2: Face) -> tuple[Face, tuple[int, ...]]:
    """Join together with the indices j in theta_2 whose image tau·alpha_j
    is not a simple root (these are left out of tau·theta_2)."""
    g = f1.gcm
    grp = weyl.weyl_group(g)
    a, tau, _ = _base_position(f1, f2)
    image = set()
    nonsimple = []
    for j in sorted(f2.theta):
        i = grp.simple_index(weyl.act_on_root(tau, j))
        if i is None:
            nonsimple.append(j)
        else:
            image.add(i)
    theta = gcm_mod.theta_infinity(g, f1.theta & frozenset(image))
    face = translate(weyl.multiply(f1.w, a), Face(theta, weyl.identity(g)))
    return face, tuple(nonsimple)


def face_join(f1: Face, f2: Face) -> Face:
    return face_join_trace(f1, f2)[0]


def face_contains(f: Face, lam, max_iter: int = 10_000) -> bool:
    g = f.gcm
    dominant_chamber_rep(g, lam, max_iter)
    mu = weyl.inverse(f.w).act(lam)
    return all(mu[i] == 0 for i in f.theta)


def interior_point(f: Face) -> Weight:
    """A lattice point in the relative interior of the face."""
    g = f.gcm
    base = tuple(Fraction(0 if (k in f.theta or k >= g.n) else 1) for k in range(g.dim))
    return f.w.act(base)


def faces_in_ball(g: GCM, radius: int) -> list[Face]:
    out = set()
    elts = weyl.ball(g, radius)
    for theta in gcm_mod.special_sets(g):
        base = standard_face(g, theta)
        for w in elts:
            out.add(translate(w, base))
    return sorted(out, key=face_key)


def cone_generators(g: GCM, J=()) -> list[Weight]:
    """Lattice generators of the closed facet F_J (as a cone, with lines)."""
    gens = [fundamental(g, i) for i in range(g.n) if i not in J]
    for k in range(g.n, g.dim):
        e = fundamental(g, k)
        gens += [e, tuple(-x for x in e)]
    return gens


# ---- text syntax -----------------------------------------------------------

def fmt_set(s) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(s)) + "}"


def format_index_list(s) -> str:
    return ",".join(str(i + 1) for i in sorted(s))


def parse_index_list(g: GCM, text: str) -> frozenset:
    text = text.strip().strip("{}").strip()
    if not text:
        return frozenset()
    out = set()
    for tok in text.split(","):
        i = int(tok) - 1
        if not 0 <= i < g.n:
            raise ValueError(f"index {tok.strip()} out of range")
        out.add(i)
    return frozenset(out)


def format_face(f: Face) -> str:
    return f"face{{theta={format_index_list(f.theta)}; w={weyl.format_word(f.w)}}}"


def parse_fields(text: str, head: str) -> dict[str, str]:
    text = text.strip()
    if not (text.startswith(head + "{") and text.endswith("}")):
        raise ValueError(f"expected {head}{{...}}, got {text!r}")
    body = text[len(head) + 1:-1]
    fields = {}
    for part in body.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"bad field {part!r}")
        fields[key.strip()] = val.strip()
    return fields


def parse_face(g: GCM, text: str) -> Face:
    fields = parse_fields(text, "face")
    theta = parse_index_list(g, fields.get("theta", ""))
    return make_face(theta, weyl.parse_word(g, fields.get("w", "e")))


def format_weight(lam) -> str:
    return ",".join(str(Fraction(x)) for x in lam)


def parse_weight(g: GCM, text: str) -> Weight:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != g.dim:
        raise ValueError(f"weight needs {g.dim} coordinates, got {len(parts)}")
    return tuple(Fraction(p) for p in parts)
