"""Principal elements of finitely generated monoids inside a lattice.

s0 is principal in S when every element of S divides some power n·s0,
i.e. n·s0 - s lies in S.  It suffices to test the generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..gcm import GCM


@dataclass(frozen=True)
class Monoid:
    gens: tuple    # generators as integer tuples

    @property
    def rank(self) -> int:
        return len(self.gens[0]) if self.gens else 0


def monoid(gens) -> Monoid:
    gens = tuple(tuple(int(x) for x in g) for g in gens)
    gens = tuple(g for g in gens if any(g))
    return Monoid(gens)


def _functional(S: Monoid) -> tuple:
    """A linear form positive on every generator (needed to bound searches)."""
    if all(all(x >= 0 for x in g) for g in S.gens):
        return (1,) * S.rank
    raise ValueError("membership search needs generators in the nonnegative orthant")


def contains(S: Monoid, v) -> bool:
    v = tuple(int(x) for x in v)
    if not any(v):
        return True
    if not S.gens or len(v) != S.rank:
        return False
    return _contains(S.gens, _functional(S), v)


@lru_cache(maxsize=None)
def _contains(gens: tuple, ell: tuple, v: tuple) -> bool:
    if not any(v):
        return True
    if any(x < 0 for x in v):
        return False
    for g in gens:
        rest = tuple(a - b for a, b in zip(v, g))
        if _contains(gens, ell, rest):
            return True
    return False


def divides(S: Monoid, s, t) -> bool:
    """s | t in S: t - s in S."""
    return contains(S, [b - a for a, b in zip(s, t)])


def is_principal(S: Monoid, s0, max_power: int = 12) -> bool:
    """Every generator divides n·s0 for some 1 <= n <= max_power."""
    if not contains(S, s0):
        return False
    for g in S.gens:
        if not any(divides(S, g, [n * x for x in s0]) for n in range(1, max_power + 1)):
            return False
    return True


def closed_facet_monoid(g: GCM, J) -> Monoid:
    """Dominant integral weights vanishing on J, generated by the fundamentals outside J."""
    J = frozenset(J)
    gens = [tuple(int(k == i) for k in range(g.n)) for i in range(g.n) if i not in J]
    return monoid(gens)


def principal_in_face(g: GCM, J, lam) -> bool:
    """Principal elements of P+ ∩ closed facet of J are exactly the weights in the open facet."""
    J = frozenset(J)
    return all((lam[i] == 0) == (i in J) for i in range(g.n))
