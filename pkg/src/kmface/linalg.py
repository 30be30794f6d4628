"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are ints or Fractions.  Everything here
is dense and meant for the desk-scale sizes used by the rest of the package.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def to_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = to_fraction_rows(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def det(rows) -> Fraction:
    m = to_fraction_rows(rows)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def nullspace(rows, ncols: int | None = None):
    """Basis of {x : rows·x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a·x = b, or None when inconsistent."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return x


def is_positive_semidefinite(sym) -> bool:
    """Exact test for a symmetric rational matrix (symmetric elimination)."""
    m = to_fraction_rows(sym)
    n = len(m)
    for k in range(n):
        piv = m[k][k]
        if piv < 0:
            return False
        if piv == 0:
            if any(m[k][j] != 0 for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return True


def leading_minors(sym) -> list[Fraction]:
    return [det([row[:k] for row in sym[:k]]) for k in range(1, len(sym) + 1)]


class Span:
    """Incrementally grown subspace of F^n with exact membership tests.

    Keeps an echelon basis; `coords` expresses a vector in terms of the
    vectors that were accepted by `add`.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[Fraction]] = []   # echelon rows
        self._pivots: list[int] = []
        self._combos: list[dict[int, Fraction]] = []  # row as combination of accepted vectors
        self.accepted: list[list[Fraction]] = []

    def __len__(self):
        return len(self.accepted)

    def _reduce(self, v: Sequence):
        v = [Fraction(x) for x in v]
        combo: dict[int, Fraction] = {}
        for row, p, rc in zip(self._rows, self._pivots, self._combos):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
                for k, val in rc.items():
                    combo[k] = combo.get(k, 0) - c * val
        return v, combo

    def contains(self, v) -> bool:
        rest, _ = self._reduce(v)
        return not any(rest)

    def add(self, v) -> bool:
        """Add v if independent; return whether it was added."""
        rest, combo = self._reduce(v)
        p = next((i for i, x in enumerate(rest) if x != 0), None)
        if p is None:
            return False
        piv = rest[p]
        k = len(self.accepted)
        combo[k] = Fraction(1)
        row = [x / piv for x in rest]
        combo = {key: val / piv for key, val in combo.items()}
        # keep rows reduced at the new pivot
        for i, (r, rc) in enumerate(zip(self._rows, self._combos)):
            c = r[p]
            if c != 0:
                self._rows[i] = [a - c * b for a, b in zip(r, row)]
                new = dict(rc)
                for key, val in combo.items():
                    new[key] = new.get(key, 0) - c * val
                self._combos[i] = new
        self._rows.append(row)
        self._pivots.append(p)
        self._combos.append(combo)
        self.accepted.append([Fraction(x) for x in v])
        return True

    def coords(self, v):
        """Coefficients of v in the accepted vectors, or None if v is outside."""
        rest, _ = self._reduce(v)
        if any(rest):
            return None
        v = [Fraction(x) for x in v]
        out = [Fraction(0)] * len(self.accepted)
        for row, p, rc in zip(self._rows, self._pivots, self._combos):
            c = v[p]
            if c != 0:
                for k, val in rc.items():
                    out[k] += c * val
        return out
