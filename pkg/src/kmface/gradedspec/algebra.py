"""Finite windows of graded algebras, graded ideals and bounded primality scans.

An algebra is tabulated on a finite set of grades (points of a lattice).
Every product whose grade sum stays in the window is stored as an array
T[a, b, c] = coefficient of basis c in (basis a)·(basis b).  Vectors are
numpy object arrays of Fractions.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..linalg import rref

Grade = tuple


class NotIdeal(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def vec(values) -> np.ndarray:
    return np.array([Fraction(x) for x in values], dtype=object)


def zeros(n: int) -> np.ndarray:
    return vec([0] * n)


def unit_vec(n: int, k: int) -> np.ndarray:
    v = zeros(n)
    v[k] = Fraction(1)
    return v


def add_grades(g: Grade, h: Grade) -> Grade:
    return tuple(x + y for x, y in zip(g, h))


@dataclass
class TabulatedAlgebra:
    name: str
    dims: dict            # grade -> dimension (grades with dim 0 are omitted)
    tables: dict          # (g, h) -> object array (dim g, dim h, dim g+h)
    zero_grade: Grade

    @property
    def grades(self) -> list:
        return sorted(self.dims)

    def in_bound(self, g: Grade) -> bool:
        return g in self.dims

    def pairs(self):
        """All grade pairs whose sum is tabulated, in a fixed order."""
        return sorted(self.tables)

    def mult(self, g: Grade, a, h: Grade, b) -> np.ndarray:
        table = self.tables[(g, h)]
        return np.tensordot(np.tensordot(a, table, axes=(0, 0)), b, axes=(0, 0))

    def basis(self, g: Grade) -> list:
        return [unit_vec(self.dims[g], k) for k in range(self.dims[g])]

    def one(self) -> np.ndarray:
        return unit_vec(self.dims[self.zero_grade], 0)


def integer_table(table: np.ndarray) -> tuple[np.ndarray, int]:
    """(N, D) with table = N / D, N an int64 array."""
    den = math.lcm(1, *(x.denominator for x in table.flat))
    out = np.array([int(x * den) for x in table.flat], dtype=np.int64).reshape(table.shape)
    return out, den


def _int_tables(A: TabulatedAlgebra) -> dict:
    cache = A.__dict__.setdefault("_int_cache", {})
    if not cache:
        cache.update({key: integer_table(t) for key, t in A.tables.items()})
    return cache


def check_commutative(A: TabulatedAlgebra):
    """Return None, or a witness (g, h, a, b) with ab != ba on basis elements."""
    for (g, h), table in A.tables.items():
        other = A.tables[(h, g)]
        bad = np.argwhere(table != other.transpose(1, 0, 2))
        if len(bad):
            a, b, _ = bad[0]
            return (g, h, int(a), int(b))
    return None


def _contract(left: tuple, right: tuple, axes) -> tuple[np.ndarray, int]:
    (n1, d1), (n2, d2) = left, right
    # every entry of the contraction is bounded by this; stay well inside int64
    bound = int(np.abs(n1).max(initial=0)) * int(np.abs(n2).max(initial=0)) * max(n1.shape[axes[0]], 1)
    if bound * d1 * d2 >= 2 ** 62:
        raise OverflowError("structure constants too large for the integer check")
    return np.tensordot(n1, n2, axes=axes), d1 * d2


def check_associative(A: TabulatedAlgebra):
    """Exhaustive over grade triples where both bracketings stay in bound.

    Returns None or a witness triple.  Tables are scaled to integers so the
    contraction runs in int64; the comparison (a b) c = a (b c) is then an
    exact cross-multiplied equality.
    """
    ints = _int_tables(A)
    for (g, h) in sorted(A.tables):
        gh = add_grades(g, h)
        for k in A.grades:
            hk = add_grades(h, k)
            if (gh, k) not in A.tables or (h, k) not in A.tables or (g, hk) not in A.tables:
                continue
            left, dl = _contract(ints[(g, h)], ints[(gh, k)], (2, 0))
            right, dr = _contract(ints[(h, k)], ints[(g, hk)], (2, 1))
            right = right.transpose(2, 0, 1, 3)
            if int(np.abs(left).max(initial=0)) * dr >= 2 ** 62 or int(np.abs(right).max(initial=0)) * dl >= 2 ** 62:
                raise OverflowError("structure constants too large for the integer check")
            bad = np.argwhere(left * dr != right * dl)
            if len(bad):
                return (g, h, k, tuple(int(x) for x in bad[0][:3]))
    return None


def check_unit(A: TabulatedAlgebra):
    one = A.one()
    z = A.zero_grade
    for g in A.grades:
        for b in A.basis(g):
            if not (np.array_equal(A.mult(z, one, g, b), b) and np.array_equal(A.mult(g, b, z, one), b)):
                return (g, b)
    return None


# ---- graded ideals -----------------------------------------------------------

@dataclass
class GradedIdeal:
    algebra: TabulatedAlgebra
    spans: dict = field(default_factory=dict)   # grade -> list of spanning vectors

    def __post_init__(self):
        self._echelon = {}
        for g in self.algebra.grades:
            rows = [list(v) for v in self.spans.get(g, [])]
            if rows:
                reduced, pivots = rref(rows)
                reduced = [vec(r) for r in reduced[:len(pivots)]]
            else:
                reduced, pivots = [], []
            self._echelon[g] = (reduced, list(pivots))

    def dim(self, g: Grade) -> int:
        return len(self._echelon[g][1])

    def quotient_dim(self, g: Grade) -> int:
        return self.algebra.dims[g] - self.dim(g)

    def reduce(self, g: Grade, v) -> np.ndarray:
        v = np.array(v, dtype=object)
        for row, p in zip(*self._echelon[g]):
            if v[p] != 0:
                v = v - v[p] * row
        return v

    def contains(self, g: Grade, v) -> bool:
        return not any(self.reduce(g, v))

    def complement(self, g: Grade) -> list[int]:
        """Coordinates whose unit vectors map to a basis of A_g / Q_g."""
        pivots = set(self._echelon[g][1])
        return [k for k in range(self.algebra.dims[g]) if k not in pivots]

    def grade_basis(self, g: Grade) -> list:
        return list(self._echelon[g][0])

    def is_proper(self) -> bool:
        return not self.contains(self.algebra.zero_grade, self.algebra.one())


def coordinate_ideal(A: TabulatedAlgebra, kept: dict) -> GradedIdeal:
    """The ideal spanned per grade by the unit vectors listed in kept[g]."""
    return GradedIdeal(A, {g: [unit_vec(A.dims[g], k) for k in ks] for g, ks in kept.items()})


def zero_ideal(A: TabulatedAlgebra) -> GradedIdeal:
    return GradedIdeal(A, {})


def _int_rows(rows, d: int) -> np.ndarray:
    """Rows scaled to integers (scaling does not change the span)."""
    out = np.zeros((len(rows), d), dtype=np.int64)
    for r, row in enumerate(rows):
        den = math.lcm(1, *(Fraction(x).denominator for x in row))
        out[r] = [int(x * den) for x in row]
    return out


def _members(Q: GradedIdeal, g: Grade, V: np.ndarray) -> np.ndarray:
    """Boolean mask: which integer vectors V[..., :] lie in Q_g."""
    rows, pivots = Q._echelon[g]
    d = Q.algebra.dims[g]
    free = [k for k in range(d) if k not in set(pivots)]
    if not free:
        return np.ones(V.shape[:-1], dtype=bool)
    if not pivots:
        return ~np.any(V, axis=-1)
    den = math.lcm(1, *(row[k].denominator for row in rows for k in free))
    Rint = np.array([[int(row[k] * den) for k in free] for row in rows], dtype=np.int64)
    lhs = V[..., free] * den
    rhs = np.tensordot(V[..., pivots], Rint, axes=(-1, 0))
    return np.all(lhs == rhs, axis=-1)


def check_absorption(Q: GradedIdeal):
    """Raise NotIdeal with a witness unless A_g·Q_h and Q_h·A_g land in Q."""
    A = Q.algebra
    ints = _int_tables(A)
    for (g, h) in A.pairs():
        rows = Q.grade_basis(h)
        if not rows:
            continue
        gh = add_grades(g, h)
        B = _int_rows(rows, A.dims[h])
        left = np.einsum("ijk,qj->iqk", ints[(g, h)][0], B)
        if not _members(Q, gh, left).all():
            raise NotIdeal(f"product of grade {g} and ideal element of grade {h} leaves the ideal", (g, h))
        right = np.einsum("jik,qj->qik", ints[(h, g)][0], B)
        if not _members(Q, gh, right).all():
            raise NotIdeal(f"product of ideal element of grade {h} and grade {g} leaves the ideal", (h, g))


@dataclass(frozen=True)
class Certificate:
    passed: bool
    exact: bool        # True: every homogeneous pair was covered; False: sampled
    checked: int
    witness: object = None


def is_prime_scan(Q: GradedIdeal, samples: int = 20, seed: int = 0) -> Certificate:
    """Bounded scan of (a, b not in Q) => ab not in Q over in-bound grade pairs.

    When both quotient components are at most one-dimensional the scan over
    representatives is exhaustive for that pair of grades; otherwise random
    rational combinations of complement vectors are tested.
    """
    check_absorption(Q)
    A = Q.algebra
    if not Q.is_proper():
        return Certificate(False, True, 0, "ideal contains 1")
    rng = random.Random(seed)
    exact = True
    checked = 0
    for (g, h) in A.pairs():
        cg, ch = Q.complement(g), Q.complement(h)
        if not cg or not ch:
            continue
        gh = add_grades(g, h)
        if len(cg) == 1 and len(ch) == 1:
            cases = [(unit_vec(A.dims[g], cg[0]), unit_vec(A.dims[h], ch[0]))]
        else:
            exact = False
            cases = [(_random_outside(Q, g, cg, rng), _random_outside(Q, h, ch, rng)) for _ in range(samples)]
        for a, b in cases:
            checked += 1
            if Q.contains(gh, A.mult(g, a, h, b)):
                return Certificate(False, True, checked, (g, h, list(a), list(b)))
    return Certificate(True, exact, checked)


def _random_outside(Q: GradedIdeal, g, coords, rng) -> np.ndarray:
    v = zeros(Q.algebra.dims[g])
    while not any(v[k] for k in coords):
        for k in coords:
            v[k] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    # add a random element of the ideal so the sample is not a plain representative
    for row in Q.grade_basis(g):
        v = v + Fraction(rng.randint(-3, 3)) * row
    return v


def f_point_criterion(Q: GradedIdeal) -> bool:
    return all(Q.quotient_dim(g) <= 1 for g in Q.algebra.grades)


def quotient(A: TabulatedAlgebra, Q: GradedIdeal) -> TabulatedAlgebra:
    """A/Q on the same window, using the complement coordinates as basis."""
    check_absorption(Q)
    comp = {g: Q.complement(g) for g in A.grades}
    dims = {g: len(c) for g, c in comp.items() if c}
    tables = {}
    for (g, h), table in A.tables.items():
        gh = add_grades(g, h)
        if g not in dims or h not in dims or gh not in dims:
            continue
        out = np.empty((dims[g], dims[h], dims[gh]), dtype=object)
        for i, a in enumerate(comp[g]):
            for j, b in enumerate(comp[h]):
                reduced = Q.reduce(gh, table[a, b])
                out[i, j] = [reduced[c] for c in comp[gh]]
        tables[(g, h)] = out
    return TabulatedAlgebra(f"{A.name}/Q", dims, tables, A.zero_grade)


# ---- small model algebras -----------------------------------------------------

def _monomial_algebra(name: str, grades, zero) -> TabulatedAlgebra:
    """Every grade one-dimensional with e_g·e_h = e_{g+h}."""
    grades = sorted(set(grades))
    dims = {g: 1 for g in grades}
    tables = {}
    one = np.array([[[Fraction(1)]]], dtype=object)
    for g in grades:
        for h in grades:
            if add_grades(g, h) in dims:
                tables[(g, h)] = one
    return TabulatedAlgebra(name, dims, tables, zero)


def polynomial_algebra(nvars: int, degree: int, names: str = "xyzw") -> TabulatedAlgebra:
    """F[x_1..x_k] graded by N^k, exponents at most `degree` in each variable."""
    grades = list(itertools.product(range(degree + 1), repeat=nvars))
    return _monomial_algebra(f"F[{','.join(names[:nvars])}]", grades, (0,) * nvars)


def group_algebra(rank: int, window: int) -> TabulatedAlgebra:
    """F[Z^rank] on the symmetric window [-window, window]^rank."""
    grades = list(itertools.product(range(-window, window + 1), repeat=rank))
    return _monomial_algebra(f"F[Z^{rank}]", grades, (0,) * rank)


def monoid_algebra(name: str, grades, zero) -> TabulatedAlgebra:
    return _monomial_algebra(name, grades, zero)


def tensor(A: TabulatedAlgebra, B: TabulatedAlgebra) -> TabulatedAlgebra:
    """A ⊗ B graded by concatenated grades; basis (a, b) flattened row-major."""
    dims = {g + h: A.dims[g] * B.dims[h] for g in A.grades for h in B.grades}
    tables = {}
    for (g1, g2), ta in A.tables.items():
        for (h1, h2), tb in B.tables.items():
            t = np.einsum("ijk,lmn->iljmkn", ta, tb)
            da, db, dc = t.shape[0] * t.shape[1], t.shape[2] * t.shape[3], t.shape[4] * t.shape[5]
            tables[(g1 + h1, g2 + h2)] = t.reshape(da, db, dc)
    return TabulatedAlgebra(f"{A.name}⊗{B.name}", dims, tables, A.zero_grade + B.zero_grade)


def tensor_ideal(A: TabulatedAlgebra, B: TabulatedAlgebra, R: GradedIdeal | None, S: GradedIdeal | None,
                 AB: TabulatedAlgebra) -> GradedIdeal:
    """R⊗B + A⊗S inside AB = tensor(A, B)."""
    spans = {}
    ka = len(A.zero_grade)
    for gh in AB.grades:
        g, h = gh[:ka], gh[ka:]
        rows = []
        if R is not None:
            rows += [np.kron(r, e) for r in R.grade_basis(g) for e in B.basis(h)]
        if S is not None:
            rows += [np.kron(e, s) for e in A.basis(g) for s in S.grade_basis(h)]
        if rows:
            spans[gh] = rows
    return GradedIdeal(AB, spans)


# ---- ideal enumeration for monomial windows ----------------------------------------

def _is_monomial(A: TabulatedAlgebra) -> bool:
    return all(d == 1 for d in A.dims.values()) and all(t[0, 0, 0] != 0 for t in A.tables.values())


def monomial_ideals(A: TabulatedAlgebra) -> list[frozenset]:
    """All graded ideals of a monomial window, as sets of grades.

    In such a window the graded ideals are exactly the grade sets closed under
    adding any grade while staying in bound.  Every ideal is a union of
    principal ones, so adding principal closures one at a time reaches all.
    """
    if not _is_monomial(A):
        raise ValueError("ideal enumeration needs one-dimensional components with nonzero products")
    grades = A.grades
    above = {g: {add_grades(g, h) for h in grades if (g, h) in A.tables} for g in grades}

    def close(start) -> frozenset:
        seen, stack = set(start), list(start)
        while stack:
            for x in above[stack.pop()]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return frozenset(seen)

    principal = {g: close([g]) for g in grades}
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for ideal in frontier:
            for g in grades:
                if g not in ideal:
                    bigger = ideal | principal[g]
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def grade_set_ideal(A: TabulatedAlgebra, grades) -> GradedIdeal:
    return coordinate_ideal(A, {g: range(A.dims[g]) for g in grades})


def f_point_primes(A: TabulatedAlgebra) -> list[frozenset]:
    """Proper graded ideals of a monomial window passing the prime scan and the F-point test."""
    out = []
    for s in monomial_ideals(A):
        Q = grade_set_ideal(A, s)
        if Q.is_proper() and is_prime_scan(Q).passed and f_point_criterion(Q):
            out.append(s)
    return out


@dataclass
class TensorReport:
    left: list
    right: list
    product: list
    images: list
    bijective: bool


def tensor_fpoints(A: TabulatedAlgebra, B: TabulatedAlgebra) -> TensorReport:
    """Compare F-points of A⊗B with the images of pairs (R, S) under R⊗B + A⊗S."""
    AB = tensor(A, B)
    left, right, prod = f_point_primes(A), f_point_primes(B), f_point_primes(AB)
    ka = len(A.zero_grade)
    images = []
    for R in left:
        for S in right:
            images.append(frozenset(gh for gh in AB.grades if gh[:ka] in R or gh[ka:] in S))
    bijective = len(set(images)) == len(images) and set(images) == set(prod)
    return TensorReport(left, right, prod, images, bijective)


@dataclass
class ExtensionReport:
    rank: int
    rows: list    # (ideal label, scan passed before, after, f-point before, after)

    @property
    def passed(self) -> bool:
        return all(before == after and fb == fa for _, before, after, fb, fa in self.rows)


def lattice_extension_check(A: TabulatedAlgebra, rank: int, ideals=None, window: int = 2) -> ExtensionReport:
    """Q -> Q⊗F[Z^rank] keeps the prime scan result and the F-point test.

    `ideals` maps labels to graded ideals of A; by default every graded ideal
    of a monomial window is used.
    """
    N = group_algebra(rank, window)
    AN = tensor(A, N)
    if ideals is None:
        ideals = {str(sorted(s)): grade_set_ideal(A, s) for s in monomial_ideals(A)}
    rows = []
    for label, Q in ideals.items():
        ext = tensor_ideal(A, N, Q, None, AN)
        rows.append((label, _prime(Q), _prime(ext), f_point_criterion(Q), f_point_criterion(ext)))
    return ExtensionReport(rank, rows)


def _prime(Q: GradedIdeal) -> bool:
    return Q.is_proper() and is_prime_scan(Q).passed
