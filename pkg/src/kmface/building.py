"""The apartment of the building as facets wW_J, and the face-monoid action."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import facemonoid as fm
from . import gcm as gcm_mod
from . import titscone as tc
from . import weyl
from .facemonoid import FaceMonoidElt
from .gcm import GCM
from .weyl import WeylElt


@dataclass(frozen=True)
class Facet:
    """The coset wW_J, with w minimal in W^J."""

    w: WeylElt
    J: frozenset

    def __repr__(self):
        return format_facet(self)


@dataclass(frozen=True)
class ActionTrace:
    a: WeylElt
    y: WeylElt
    c: WeylElt
    red_y: frozenset
    a_perp: WeylElt
    result: Facet


def facet_key(f: Facet):
    return (len(f.J), sorted(f.J), weyl.shortlex_key(f.w))


def make_facet(w: WeylElt, J) -> Facet:
    J = frozenset(J)
    return Facet(weyl.min_coset_rep(w, J), J)


def standard_facet(g: GCM, J) -> Facet:
    return Facet(weyl.identity(g), frozenset(J))


def facet_leq(f1: Facet, f2: Facet) -> bool:
    """f1 <= f2 in the reverse-inclusion order: w2 W_J2 is inside w1 W_J1."""
    if not f1.J >= f2.J:
        return False
    return weyl.in_parabolic(weyl.multiply(weyl.inverse(f1.w), f2.w), f1.J)


def w_action(x: WeylElt, f: Facet) -> Facet:
    return Facet(weyl.min_coset_rep(weyl.multiply(x, f.w), f.J), f.J)


@lru_cache(maxsize=None)
def _decompose(tau_u: WeylElt, theta: frozenset, J: frozenset):
    g = tau_u.gcm
    perp = gcm_mod.orthogonal(g, theta)
    a, y, c = weyl.double_coset_decompose(tau_u, theta | perp, J)
    # W_theta and W_perp commute, so the letters of a split cleanly
    a_perp = weyl.from_word(g, [i for i in a.word if i in perp])
    return a, y, c, a_perp


def action_trace(x: FaceMonoidElt, f: Facet) -> ActionTrace:
    """x = sigma[w R(theta)] acts as (sigma w)·e(R(theta))·w^-1."""
    theta = x.theta
    tau_u = weyl.multiply(weyl.inverse(x.face.w), f.w)
    a, y, c, a_perp = _decompose(tau_u, theta, f.J)
    red_y = weyl.red_support(y)
    K = theta | f.J | red_y
    result = Facet(weyl.min_coset_rep(weyl.multiply(x.u, a_perp), K), K)
    return ActionTrace(a, y, c, red_y, a_perp, result)


@lru_cache(maxsize=None)
def monoid_action(x: FaceMonoidElt, f: Facet) -> Facet:
    return action_trace(x, f).result


def facets_in_ball(g: GCM, radius: int) -> list[Facet]:
    out = set()
    elts = weyl.ball(g, radius)
    for k in range(1 << g.n):
        J = frozenset(i for i in range(g.n) if k >> i & 1)
        for w in elts:
            out.add(make_facet(w, J))
    return sorted(out, key=facet_key)


def stabilizer_in_ball(f: Facet, radius: int) -> list[FaceMonoidElt]:
    if not f.w.is_identity():
        raise ValueError("stabilizer_in_ball expects a standard facet (e, J)")
    return [x for x in fm.monoid_ball(f.w.gcm, radius) if monoid_action(x, f) == f]


# ---- text syntax -----------------------------------------------------------

def format_facet(f: Facet) -> str:
    return f"facet{{w={weyl.format_word(f.w)}; J={tc.format_index_list(f.J)}}}"


def format_facet_short(f: Facet) -> str:
    return f"({weyl.format_word(f.w)}, {tc.fmt_set(f.J)})"


def parse_facet(g: GCM, text: str) -> Facet:
    fields = tc.parse_fields(text, "facet")
    J = tc.parse_index_list(g, fields.get("J", ""))
    return make_facet(weyl.parse_word(g, fields.get("w", "e")), J)
