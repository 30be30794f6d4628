"""Weyl group elements with ShortLex normal forms.

An element x is pinned down by the weight x·rho, where rho = sum of the
fundamental weights Lambda_1..Lambda_n: rho lies in the open dominant chamber,
so its stabilizer is trivial.  Greedy stripping of the smallest negative
coordinate of x·rho reads off the lexicographically least reduced word, so the
word itself is canonical and equality of words is equality of elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .gcm import GCM


class WeylGroup:
    """Per-GCM tables and caches; obtain through `weyl_group(g)`."""

    def __init__(self, g: GCM):
        self.gcm = g
        self.n = g.n
        self.dim = g.dim
        self.alpha = [g.simple_root(i) for i in range(g.n)]
        self.rho = tuple([1] * g.n + [0] * (g.dim - g.n))
        self._alpha_index = {a: i for i, a in enumerate(self.alpha)}
        # rows: alpha_i in the Lambda basis; used to read root coordinates
        self._alpha_cols = linalg.transpose([list(a) for a in self.alpha])
        self._vec: dict[tuple, tuple] = {(): self.rho}
        self._mul: dict[tuple, WeylElt] = {}
        self._inv: dict[tuple, WeylElt] = {}
        self._minrep: dict[tuple, WeylElt] = {}
        self.identity = WeylElt(self, ())

    # -- raw weight-space action ------------------------------------------
    def reflect(self, i: int, v):
        c = v[i]
        if c == 0:
            return v
        return tuple(x - c * y for x, y in zip(v, self.alpha[i]))

    def act(self, word: Sequence[int], v):
        for i in reversed(word):
            c = v[i]
            if c:
                v = tuple(x - c * y for x, y in zip(v, self.alpha[i]))
        return v

    def strip(self, v) -> tuple[int, ...]:
        """Greedy word: repeatedly reflect at the smallest negative coordinate."""
        word = []
        n = self.n
        alpha = self.alpha
        while True:
            for i in range(n):
                c = v[i]
                if c < 0:
                    v = tuple(x - c * y for x, y in zip(v, alpha[i]))
                    word.append(i)
                    break
            else:
                return tuple(word)

    def vector(self, word: tuple[int, ...]):
        v = self._vec.get(word)
        if v is None:
            v = self.act(word, self.rho)
            self._vec[word] = v
        return v

    def from_word(self, word: Iterable[int]) -> "WeylElt":
        word = tuple(word)
        for i in word:
            if not 0 <= i < self.n:
                raise ValueError(f"generator index {i + 1} out of range")
        v = self.act(word, self.rho)
        canon = self.strip(v)
        self._vec.setdefault(canon, v)
        return WeylElt(self, canon)

    def simple(self, i: int) -> "WeylElt":
        return self.from_word((i,))

    def root_coords(self, v) -> tuple[Fraction, ...] | None:
        """Simple-root coordinates of a vector of the root span, else None."""
        x = linalg.solve(self._alpha_cols, list(v))
        if x is None:
            return None
        return tuple(x)

    def simple_index(self, v) -> int | None:
        return self._alpha_index.get(tuple(v))


@lru_cache(maxsize=None)
def weyl_group(g: GCM) -> WeylGroup:
    return WeylGroup(g)


@dataclass(frozen=True, eq=False)
class WeylElt:
    group: WeylGroup
    word: tuple[int, ...]

    def __eq__(self, other):
        return (isinstance(other, WeylElt) and self.word == other.word
                and self.group is other.group)

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return shortlex_key(self) < shortlex_key(other)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return multiply(self, other)

    def __repr__(self):
        return format_word(self)

    def __len__(self):
        return len(self.word)

    @property
    def gcm(self) -> GCM:
        return self.group.gcm

    @property
    def vector(self):
        return self.group.vector(self.word)

    @property
    def mat(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of the action on h* in the Lambda basis (columns = images)."""
        grp = self.group
        cols = [grp.act(self.word, tuple(int(i == k) for i in range(grp.dim)))
                for k in range(grp.dim)]
        return tuple(zip(*cols))

    def act(self, weight):
        return self.group.act(self.word, tuple(weight))

    def is_identity(self) -> bool:
        return not self.word


def shortlex_key(x: WeylElt):
    return (len(x.word), x.word)


def identity(g: GCM) -> WeylElt:
    return weyl_group(g).identity


def simple(g: GCM, i: int) -> WeylElt:
    return weyl_group(g).simple(i)


def from_word(g: GCM, word: Iterable[int]) -> WeylElt:
    return weyl_group(g).from_word(word)


def multiply(x: WeylElt, y: WeylElt) -> WeylElt:
    grp = x.group
    if not x.word:
        return y
    if not y.word:
        return x
    key = (x.word, y.word)
    out = grp._mul.get(key)
    if out is None:
        v = grp.act(x.word, y.vector)
        word = grp.strip(v)
        grp._vec.setdefault(word, v)
        out = WeylElt(grp, word)
        grp._mul[key] = out
    return out


def product(g: GCM, elts: Iterable[WeylElt]) -> WeylElt:
    out = identity(g)
    for x in elts:
        out = multiply(out, x)
    return out


def inverse(x: WeylElt) -> WeylElt:
    grp = x.group
    out = grp._inv.get(x.word)
    if out is None:
        out = grp.from_word(reversed(x.word))
        grp._inv[x.word] = out
        grp._inv.setdefault(out.word, x)
    return out


def length(x: WeylElt) -> int:
    return len(x.word)


def descents(x: WeylElt, side: str = "left") -> frozenset[int]:
    """Left descent i: x^-1 alpha_i < 0, read off as (x rho)(h_i) < 0."""
    if side == "right":
        x = inverse(x)
    elif side != "left":
        raise ValueError(side)
    v = x.vector
    return frozenset(i for i in range(x.group.n) if v[i] < 0)


def red_support(x: WeylElt) -> frozenset[int]:
    return frozenset(x.word)


def in_parabolic(x: WeylElt, J) -> bool:
    return red_support(x) <= frozenset(J)


def min_coset_rep(x: WeylElt, J, side: str = "right") -> WeylElt:
    """Minimal representative of xW_J (side='right') or W_J x (side='left')."""
    J = frozenset(J)
    if side == "left":
        return inverse(min_coset_rep(inverse(x), J, "right"))
    if side != "right":
        raise ValueError(side)
    if not J or not x.word:
        return x
    grp = x.group
    key = (x.word, J)
    out = grp._minrep.get(key)
    if out is None:
        # x·rho_J pins down the coset xW_J; stripping it yields the ShortLex
        # word of the minimal representative
        rho_j = tuple(0 if (k in J or k >= grp.n) else 1 for k in range(grp.dim))
        out = grp.from_word(grp.strip(grp.act(x.word, rho_j)))
        grp._minrep[key] = out
    return out


def parabolic_factor(x: WeylElt, J, side: str = "right") -> tuple[WeylElt, WeylElt]:
    """right: x = x^J · x_J;  left: x = x_J · ^J x.  Returned in product order."""
    rep = min_coset_rep(x, J, side)
    if side == "right":
        return rep, multiply(inverse(rep), x)
    return multiply(x, inverse(rep)), rep


def double_coset_decompose(x: WeylElt, K, J) -> tuple[WeylElt, WeylElt, WeylElt]:
    """x = a·y·c with a in W_K, c in W_J and y minimal in W_K x W_J."""
    a = c = x.group.identity
    y = x
    while True:
        a_part, y1 = parabolic_factor(y, K, "left")
        y2, c_part = parabolic_factor(y1, J, "right")
        if y2 == y:
            return a, y, c
        a = multiply(a, a_part)
        c = multiply(c_part, c)
        y = y2


def in_parabolic_product(x: WeylElt, K, J) -> bool:
    return double_coset_decompose(x, K, J)[1].is_identity()


def ball(g: GCM, radius: int) -> list[WeylElt]:
    """Elements of length <= radius in ShortLex order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    grp = weyl_group(g)
    layer = [grp.identity]
    out = [grp.identity]
    for _ in range(radius):
        nxt = {}
        for x in layer:
            left = descents(x, "left")
            for i in range(grp.n):
                if i not in left:
                    y = multiply(grp.simple(i), x)
                    nxt[y.word] = y
        layer = sorted(nxt.values(), key=shortlex_key)
        if not layer:
            break
        out.extend(layer)
    return out


def parabolic_ball(g: GCM, J, radius: int) -> list[WeylElt]:
    J = frozenset(J)
    return [x for x in ball(g, radius) if red_support(x) <= J]


def act_on_root(x: WeylElt, i: int):
    """x·alpha_i in the Lambda basis."""
    return x.act(x.group.alpha[i])


# ---- text syntax -----------------------------------------------------------

def format_word(x: WeylElt) -> str:
    if not x.word:
        return "e"
    return "*".join(f"s{i + 1}" for i in x.word)


def parse_word(g: GCM, text: str) -> WeylElt:
    text = text.strip()
    if text in ("", "e", "1"):
        return identity(g)
    word = []
    for tok in text.split("*"):
        tok = tok.strip()
        if tok == "e":
            continue
        if not tok.startswith("s") or not tok[1:].isdigit():
            raise ValueError(f"bad generator {tok!r}")
        i = int(tok[1:]) - 1
        if not 0 <= i < g.n:
            raise ValueError(f"generator {tok} out of range for rank {g.n}")
        word.append(i)
    return from_word(g, word)
