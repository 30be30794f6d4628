"""Generalized Cartan matrices: validation, diagram types, special sets.

Indices are 0-based internally; the text syntaxes used by the CLI are 1-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import linalg


class NotGCM(ValueError):
    pass


class NotSymmetrizable(ValueError):
    pass


FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class GCM:
    """A validated symmetrizable generalized Cartan matrix.

    `realization[j][i]` is alpha_i(h_j) for j < dim; the first n rows are the
    matrix itself, the remaining dim - n rows are the chosen completion.
    Simple roots are the columns, written in the fundamental-weight basis.
    """

    a: tuple[tuple[int, ...], ...]
    d: tuple[Fraction, ...]
    l: int
    realization: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def dim(self) -> int:
        return len(self.realization)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.realization)

    def symmetrized(self, subset=None):
        idx = sorted(range(self.n) if subset is None else subset)
        return [[self.d[i] * self.a[i][j] for j in idx] for i in idx]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<GCM{label} {[list(r) for r in self.a]}>"


def _symmetrizer(a) -> tuple[Fraction, ...]:
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                val = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = val
                    comp.append(j)
                    stack.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable(f"cycle condition fails at ({i + 1},{j + 1})")
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / low
    return tuple(d)


def _complete_realization(a, extra=None):
    n = len(a)
    rows = [list(r) for r in a]
    l = linalg.rank(rows)
    missing = n - l
    if extra:
        extra = [list(map(int, r)) for r in extra]
        if len(extra) != missing or any(len(r) != n for r in extra):
            raise NotGCM(f"expected {missing} extra realization rows of length {n}")
        if linalg.rank(rows + extra) != n:
            raise NotGCM("extra realization rows do not make the simple roots independent")
        return l, tuple(tuple(r) for r in rows + extra)
    if missing == 0:
        return l, tuple(tuple(r) for r in rows)
    unit = [[int(i == k) for i in range(n)] for k in range(n)]
    for combo in itertools.combinations(range(n), missing):
        cand = rows + [unit[k] for k in combo]
        if linalg.rank(cand) == n:
            return l, tuple(tuple(r) for r in cand)
    raise AssertionError("no completion found")  # unreachable: units span F^n


def validate(matrix, extra_rows=None, name: str = "") -> GCM:
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0 or any(len(r) != n for r in a):
        raise NotGCM("matrix must be square and nonempty")
    for i in range(n):
        for j in range(n):
            if int(a[i][j]) != a[i][j]:
                raise NotGCM(f"entry ({i + 1},{j + 1}) is not an integer")
            a[i][j] = int(a[i][j])
    for i in range(n):
        if a[i][i] != 2:
            raise NotGCM(f"diagonal entry {i + 1} is {a[i][i]}, not 2")
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry at ({i + 1},{j + 1})")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotGCM(f"zero pattern not symmetric at ({i + 1},{j + 1})")
    d = _symmetrizer(a)
    l, real = _complete_realization(a, extra_rows)
    return GCM(tuple(tuple(r) for r in a), d, l, real, name)


def components(g: GCM, subset) -> list[frozenset[int]]:
    """Connected components of the Dynkin diagram restricted to subset."""
    left = set(subset)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(left):
                if j not in comp and g.a[i][j] != 0:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(frozenset(comp))
    return sorted(out, key=sorted)


def _component_type(g: GCM, comp) -> str:
    sym = g.symmetrized(comp)
    if all(m > 0 for m in linalg.leading_minors(sym)):
        return FINITE
    if linalg.is_positive_semidefinite(sym) and len(comp) - linalg.rank(sym) == 1:
        return AFFINE
    return INDEFINITE


def classify(g: GCM, subset=None) -> dict[frozenset[int], str]:
    subset = g.indices if subset is None else subset
    return {c: _component_type(g, c) for c in components(g, subset)}


def theta_infinity(g: GCM, theta) -> frozenset[int]:
    parts = [c for c, t in classify(g, theta).items() if t != FINITE]
    return frozenset().union(*parts)


def theta_zero(g: GCM, theta) -> frozenset[int]:
    return frozenset(theta) - theta_infinity(g, theta)


def is_special(g: GCM, theta) -> bool:
    return theta_infinity(g, theta) == frozenset(theta)


def orthogonal(g: GCM, subset) -> frozenset[int]:
    return frozenset(i for i in range(g.n) if all(g.a[i][j] == 0 for j in subset))


def special_sets(g: GCM) -> list[frozenset[int]]:
    """All special subsets, ordered by size and then lexicographically."""
    out = []
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            if is_special(g, combo):
                out.append(frozenset(combo))
    return out


def m_ij(g: GCM, i: int, j: int) -> int | None:
    """Coxeter exponent of s_i s_j; None when there is no relation."""
    if i == j:
        return 1
    p = g.a[i][j] * g.a[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p)


# ---- text format -----------------------------------------------------------

def parse_gcm_text(text: str, name: str = "") -> GCM:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise NotGCM("empty GCM file")
    try:
        n = int(lines[0])
        rows = [[int(x) for x in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise NotGCM(f"malformed GCM file: {exc}") from None
    if len(rows) < n:
        raise NotGCM(f"expected {n} matrix rows, found {len(rows)}")
    return validate(rows[:n], rows[n:] or None, name=name)


def format_gcm_text(g: GCM) -> str:
    lines = [str(g.n)] + [" ".join(map(str, r)) for r in g.a]
    lines += [" ".join(map(str, r)) for r in g.realization[g.n:]]
    return "\n".join(lines) + "\n"


DATA = Path(__file__).with_name("data")

BUILTIN = {
    "a1": [[2]],
    "a2": [[2, -1], [-1, 2]],
    "b2": [[2, -2], [-1, 2]],
    "aff": [[2, -2], [-2, 2]],
    "hyp3": [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]],
}


def builtin(name: str) -> GCM:
    key = name.lower()
    return validate(BUILTIN[key], name=key.upper())


def load(path_or_name: str) -> GCM:
    """Load a GCM file; a bare name (a1, aff, hyp3.gcm, ...) falls back to the packaged data."""
    p = Path(path_or_name)
    if not p.is_file():
        key = p.stem.lower() if p.suffix == ".gcm" else path_or_name.lower()
        if p.parent != Path(".") or not (DATA / f"{key}.gcm").is_file():
            raise FileNotFoundError(path_or_name)
        p = DATA / f"{key}.gcm"
    return parse_gcm_text(p.read_text(encoding="utf-8"), name=p.stem.upper())
