"""The face monoid: pairs (sigma, R) modulo the pointwise-stabilizer congruence.

An element sigma[w R(theta)] is stored as its face (theta, w) together with
u = min_rep(sigma·w, theta): two pairs are congruent exactly when sigma·w
lies in the same right coset of W_theta.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import gcm as gcm_mod
from . import titscone as tc
from . import weyl
from .gcm import GCM
from .titscone import Face
from .weyl import WeylElt


@dataclass(frozen=True)
class FaceMonoidElt:
    face: Face
    u: WeylElt

    @property
    def gcm(self) -> GCM:
        return self.u.gcm

    @property
    def theta(self) -> frozenset:
        return self.face.theta

    @property
    def sigma(self) -> WeylElt:
        """A representative of the group part: u·w^-1."""
        return weyl.multiply(self.u, weyl.inverse(self.face.w))

    def is_unit(self) -> bool:
        return not self.face.theta

    def __mul__(self, other: "FaceMonoidElt") -> "FaceMonoidElt":
        return multiply(self, other)

    def __repr__(self):
        return format_elt(self)


def elt_key(x: FaceMonoidElt):
    return (tc.face_key(x.face), weyl.shortlex_key(x.u))


def make(sigma: WeylElt, face: Face) -> FaceMonoidElt:
    u = weyl.min_coset_rep(weyl.multiply(sigma, face.w), face.theta)
    return FaceMonoidElt(face, u)


def unit(g: GCM) -> FaceMonoidElt:
    return make(weyl.identity(g), tc.standard_face(g, ()))


def from_weyl(sigma: WeylElt) -> FaceMonoidElt:
    return make(sigma, tc.standard_face(sigma.gcm, ()))


def idempotent(face: Face) -> FaceMonoidElt:
    return make(weyl.identity(face.gcm), face)


@lru_cache(maxsize=None)
def _intersect(f1: Face, f2: Face) -> Face:
    return tc.face_intersect(f1, f2)


@lru_cache(maxsize=None)
def multiply(x: FaceMonoidElt, y: FaceMonoidElt) -> FaceMonoidElt:
    sigma, tau = x.sigma, y.sigma
    moved = tc.translate(weyl.inverse(tau), x.face)
    return make(weyl.multiply(sigma, tau), _intersect(moved, y.face))


def monoid_ball(g: GCM, radius: int) -> list[FaceMonoidElt]:
    return list(_monoid_ball(g, radius))


@lru_cache(maxsize=None)
def _monoid_ball(g: GCM, radius: int) -> tuple[FaceMonoidElt, ...]:
    elts = weyl.ball(g, radius)
    out = set()
    for theta in gcm_mod.special_sets(g):
        base = tc.standard_face(g, theta)
        faces = {tc.translate(w, base) for w in elts}
        for f in faces:
            for sigma in elts:
                out.add(make(sigma, f))
    return tuple(sorted(out, key=elt_key))


def parabolic_generators(g: GCM, J, radius: int) -> list[FaceMonoidElt]:
    J = frozenset(J)
    group_part = weyl.parabolic_ball(g, J, radius)
    gens = {from_weyl(s) for s in group_part}
    for theta in gcm_mod.special_sets(g):
        if theta <= J:
            base = tc.standard_face(g, theta)
            gens |= {idempotent(tc.translate(w, base)) for w in group_part}
    return sorted(gens, key=elt_key)


@lru_cache(maxsize=None)
def parabolic_submonoid(g: GCM, J, radius: int) -> frozenset:
    """Closure of the generators under products that stay in monoid_ball."""
    window = set(_monoid_ball(g, radius))
    found = [x for x in parabolic_generators(g, frozenset(J), radius) if x in window]
    seen = set(found)
    frontier = list(found)
    while frontier:
        new = []
        for x in frontier:
            for y in list(seen):
                for z in (multiply(x, y), multiply(y, x)):
                    if z in window and z not in seen:
                        seen.add(z)
                        new.append(z)
        frontier = new
    return frozenset(seen)


def in_parabolic_submonoid(x: FaceMonoidElt, J, radius: int) -> bool:
    return x in parabolic_submonoid(x.gcm, frozenset(J), radius)


# ---- text syntax -----------------------------------------------------------

def format_elt(x: FaceMonoidElt) -> str:
    return (f"fm{{w={weyl.format_word(x.sigma)}; theta={tc.format_index_list(x.theta)}; "
            f"tw={weyl.format_word(x.face.w)}}}")


def parse_elt(g: GCM, text: str) -> FaceMonoidElt:
    fields = tc.parse_fields(text, "fm")
    sigma = weyl.parse_word(g, fields.get("w", "e"))
    theta = tc.parse_index_list(g, fields.get("theta", ""))
    tw = weyl.parse_word(g, fields.get("tw", "e"))
    return make(sigma, tc.make_face(theta, tw))
