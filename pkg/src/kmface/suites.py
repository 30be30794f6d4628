"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of Check records; a suite passes when every
check does.  Sampling is driven by the seed only, so reports are
reproducible byte for byte.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import building
from . import facemonoid as fm
from . import gcm as gcm_mod
from . import titscone as tc
from . import weights as wt
from . import weyl
from .gcm import GCM


@dataclass(frozen=True)
class Check:
    check: str
    status: str          # PASS or FAIL
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def as_dict(self) -> dict:
        return asdict(self)


def check(name: str, ok: bool, witness=None) -> Check:
    return Check(name, "PASS" if ok else "FAIL", None if ok else _witness(witness))


def _witness(w) -> str:
    if w is None:
        return "no witness recorded"
    return w if isinstance(w, str) else repr(w)


def passed(checks) -> bool:
    return all(c.passed for c in checks)


def _label(g: GCM) -> str:
    return g.name or "gcm"


# ---- 1: monoid axioms ---------------------------------------------------------

def _product_table(elts: list) -> tuple[np.ndarray, list, dict]:
    """T[i, j] = index of elts[i]·elts[j] in `ext` (window elements come first)."""
    index = {x: k for k, x in enumerate(elts)}
    ext = list(elts)
    table = np.empty((len(elts), len(elts)), dtype=np.int32)
    for i, x in enumerate(elts):
        for j, y in enumerate(elts):
            z = fm.multiply(x, y)
            k = index.get(z)
            if k is None:
                k = index[z] = len(ext)
                ext.append(z)
            table[i, j] = k
    return table, ext, index


def associativity_suite(g: GCM, radius: int = 3, seed: int = 0, samples: int = 2000) -> list[Check]:
    """Associativity on every triple whose partial products are tabulated,
    direct multiplication on a seeded sample of the rest, unit laws, and for
    affine matrices the shape W-ball plus a zero."""
    tag = f"{_label(g)} r={radius}"
    elts = fm.monoid_ball(g, radius)
    n = len(elts)
    table, ext, index = _product_table(elts)
    checks = []

    bad = None
    outside = 0
    for a in range(n):
        ab = table[a]                                   # a·b for all b
        inside_ab = ab < n
        # (a b) c where a b is in the window
        left = np.full((n, n), -1, dtype=np.int64)
        left[inside_ab] = table[ab[inside_ab]]
        # a (b c) where b c is in the window
        bc = table
        right = np.full((n, n), -1, dtype=np.int64)
        inside_bc = bc < n
        right[inside_bc] = table[a, bc[inside_bc]]
        # both totals are products of window elements, hence indices into ext
        both = (left >= 0) & (right >= 0)
        mism = both & (left != right)
        if mism.any() and bad is None:
            b, c = map(int, np.argwhere(mism)[0])
            bad = (fm.format_elt(elts[a]), fm.format_elt(elts[b]), fm.format_elt(elts[c]))
        outside += int((~both).sum())
    checks.append(check(f"associativity on tabulated triples ({tag})", bad is None, bad))

    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        x, y, z = (elts[rng.randrange(n)] for _ in range(3))
        if fm.multiply(fm.multiply(x, y), z) != fm.multiply(x, fm.multiply(y, z)):
            bad = tuple(map(fm.format_elt, (x, y, z)))
            break
    checks.append(check(f"associativity on {samples} sampled triples ({tag}; {outside} triples leave the table)",
                        bad is None, bad))

    one = fm.unit(g)
    bad = next((x for x in elts if fm.multiply(one, x) != x or fm.multiply(x, one) != x), None)
    checks.append(check(f"unit laws ({tag})", bad is None, bad and fm.format_elt(bad)))

    types = set(gcm_mod.classify(g).values())
    if types == {gcm_mod.AFFINE} and len(gcm_mod.components(g, g.indices)) == 1:
        units = {fm.from_weyl(w) for w in weyl.ball(g, radius)}
        rest = [x for x in elts if x not in units]
        zero_ok = len(rest) == 1 and all(fm.multiply(rest[0], x) == rest[0] == fm.multiply(x, rest[0])
                                         for x in elts)
        ok = units <= set(elts) and zero_ok
        checks.append(check(f"window = W-ball plus zero ({tag}: {len(units)} units, {len(rest)} others)",
                            ok, [fm.format_elt(x) for x in rest]))
    return checks


# ---- 2: classical collapse ------------------------------------------------------

def collapse_suite(g: GCM, radius: int = 3) -> list[Check]:
    tag = f"{_label(g)} r={radius}"
    elts = fm.monoid_ball(g, radius)
    grp = weyl.ball(g, radius)
    grp_next = weyl.ball(g, radius + 1)
    finite = len(grp) == len(grp_next)
    checks = [
        check(f"W is exhausted by ball({radius}) ({tag}: |W| = {len(grp)})", finite, f"ball grows to {len(grp_next)}"),
        check(f"every window element is a unit ({tag})", all(x.is_unit() for x in elts),
              next((fm.format_elt(x) for x in elts if not x.is_unit()), None)),
        check(f"window size equals |W| ({tag}: {len(elts)} elements)", len(elts) == len(grp), len(elts)),
        check(f"window is stable at radius {radius + 1} ({tag})",
              len(fm.monoid_ball(g, radius + 1)) == len(elts), len(fm.monoid_ball(g, radius + 1))),
    ]
    return checks


# ---- 3: stabilizers of faces ---------------------------------------------------------

def face_sample_points(face: tc.Face, rng: random.Random, count: int, spread: int = 3) -> list:
    """Lattice points of w·R(theta): W_perp-translates of points of the closed facet of theta."""
    g = face.gcm
    perp = gcm_mod.orthogonal(g, face.theta)
    movers = weyl.parabolic_ball(g, perp, 2)
    gens = [i for i in range(g.n) if i not in face.theta]
    out = []
    for _ in range(count):
        mu = [Fraction(0)] * g.dim
        for i in gens:
            mu[i] = Fraction(rng.randint(0, spread))
        for k in range(g.n, g.dim):
            mu[k] = Fraction(rng.randint(-spread, spread))
        v = movers[rng.randrange(len(movers))]
        out.append(weyl.multiply(face.w, v).act(tuple(mu)))
    return out


def stabilizers_suite(g: GCM, radius: int = 4, seed: int = 0) -> list[Check]:
    tag = f"{_label(g)} r={radius}"
    rng = random.Random(seed)
    elts = weyl.ball(g, radius)
    checks = []
    for theta in gcm_mod.special_sets(g):
        base = tc.standard_face(g, theta)
        stab_type = tc.stabilizer_type(g, theta)
        p = tc.interior_point(base)
        # setwise: x R = R iff x maps a relative-interior point back into R
        setwise = [x for x in elts if tc.face_contains(base, x.act(p))]
        expected = [x for x in elts if weyl.in_parabolic(x, stab_type)]
        checks.append(check(f"setwise stabilizer of R({tc.fmt_set(theta)}) ({tag}: {len(setwise)} elements)",
                            setwise == expected,
                            sorted(set(map(weyl.format_word, setwise)) ^ set(map(weyl.format_word, expected)))))
        points = face_sample_points(base, rng, 40) + [tuple(x) for x in tc.cone_generators(g, theta)]
        points += [w.act(p) for w in weyl.parabolic_ball(g, gcm_mod.orthogonal(g, theta), 2)]
        fixers = [x for x in elts if all(x.act(q) == tuple(q) for q in points)]
        expected = [x for x in elts if weyl.in_parabolic(x, theta)]
        checks.append(check(f"pointwise fixer of R({tc.fmt_set(theta)}) ({tag}: {len(fixers)} elements)",
                            fixers == expected,
                            sorted(set(map(weyl.format_word, fixers)) ^ set(map(weyl.format_word, expected)))))
    return checks


# ---- 4: face lattice against sample points -----------------------------------------------

def faces_suite(g: GCM, radius: int = 3, seed: int = 0, per_face: int = 100) -> list[Check]:
    """Intersection and containment against pointwise membership.

    Every pair is tested on the samples of both faces (2·per_face points,
    at least 200 by default) plus both interior points.
    """
    tag = f"{_label(g)} r={radius}"
    rng = random.Random(seed)
    faces = tc.faces_in_ball(g, radius)
    samples = {f: face_sample_points(f, rng, per_face) + [tc.interior_point(f)] for f in faces}
    member: dict = {}

    def inside(f, lam) -> bool:
        key = (f, lam)
        if key not in member:
            member[key] = tc.face_contains(f, lam)
        return member[key]

    violations, bad_meet, bad_leq, points_checked = [], None, None, 0
    for f1, f2 in itertools.product(faces, repeat=2):
        try:
            meet = tc.face_intersect(f1, f2)
        except tc.SpecialityViolated as exc:
            violations.append(str(exc))
            continue
        pts = samples[f1] + samples[f2]
        points_checked += len(pts)
        for lam in pts:
            if (inside(f1, lam) and inside(f2, lam)) != inside(meet, lam):
                bad_meet = bad_meet or (tc.format_face(f1), tc.format_face(f2), tc.format_weight(lam))
                break
        leq = tc.face_leq(f1, f2)
        geometric = all(inside(f2, lam) for lam in samples[f1])
        if leq != geometric:
            bad_leq = bad_leq or (tc.format_face(f1), tc.format_face(f2), leq)
    n = len(faces)
    return [
        check(f"intersection matches pointwise membership ({tag}: {n * n} pairs, {points_checked} point tests)",
              bad_meet is None, bad_meet),
        check(f"containment matches pointwise membership ({tag})", bad_leq is None, bad_leq),
        check(f"no SpecialityViolated ({tag}: {len(violations)} occurrences)", not violations,
              violations[:3]),
    ]


# ---- 5: the action on the apartment ----------------------------------------------------------

def action_suite(g: GCM, radius: int = 3) -> list[Check]:
    tag = f"{_label(g)} r={radius}"
    elts = fm.monoid_ball(g, radius)
    facets = building.facets_in_ball(g, radius)
    n = len(elts)
    table, ext, _ = _product_table(elts)
    f_index = {f: k for k, f in enumerate(facets)}
    f_ext = list(facets)

    def fid(f) -> int:
        k = f_index.get(f)
        if k is None:
            k = f_index[f] = len(f_ext)
            f_ext.append(f)
        return k

    # y·f for window elements first, so the facets they reach get the low indices
    act = np.array([[fid(building.monoid_action(y, f)) for f in facets] for y in elts], dtype=np.int32)
    reached = len(f_ext)
    # z·f for the remaining products z of two window elements
    rest = np.array([[fid(building.monoid_action(z, f)) for f in facets] for z in ext[n:]], dtype=np.int32)
    act_ext = np.concatenate([act, rest.reshape(-1, len(facets))])
    # x·f' for every facet f' reached by a window element
    act_full = np.array([[fid(building.monoid_action(x, f)) for f in f_ext[:reached]] for x in elts],
                        dtype=np.int32)
    checks = []

    bad = None
    for x in range(n):
        lhs = act_ext[table[x]]            # (x y)·f for all y, f
        rhs = act_full[x][act]             # x·(y·f)
        if not np.array_equal(lhs, rhs):
            y, k = map(int, np.argwhere(lhs != rhs)[0])
            bad = (fm.format_elt(elts[x]), fm.format_elt(elts[y]), building.format_facet(facets[k]))
            break
    checks.append(check(f"(xy)·f = x·(y·f) ({tag}: {n}x{n} pairs on {len(facets)} facets, "
                        f"{reached} facets reached)", bad is None, bad))

    one = fm.unit(g)
    bad = next((f for f in facets if building.monoid_action(one, f) != f), None)
    checks.append(check(f"unit acts trivially ({tag})", bad is None, bad and building.format_facet(bad)))

    bad = None
    for w in weyl.ball(g, radius):
        x = fm.from_weyl(w)
        for f in facets:
            if building.monoid_action(x, f) != building.w_action(w, f):
                bad = (weyl.format_word(w), building.format_facet(f))
                break
        if bad:
            break
    checks.append(check(f"restriction to W is coset translation ({tag})", bad is None, bad))

    comparable = [(a, b) for a in facets for b in facets if a != b and building.facet_leq(a, b)]
    bad = None
    for x in elts:
        for a, b in comparable:
            if not building.facet_leq(building.monoid_action(x, a), building.monoid_action(x, b)):
                bad = (fm.format_elt(x), building.format_facet(a), building.format_facet(b))
                break
        if bad:
            break
    checks.append(check(f"order preserved ({tag}: {len(comparable)} comparable pairs)", bad is None, bad))

    for k in range(1 << g.n):
        J = frozenset(i for i in range(g.n) if k >> i & 1)
        f = building.standard_facet(g, J)
        stab = set(building.stabilizer_in_ball(f, radius))
        sub = set(fm.parabolic_submonoid(g, J, radius))
        checks.append(check(f"stabilizer of (e, {tc.fmt_set(J)}) = parabolic submonoid ({tag}: {len(stab)} elements)",
                            stab == sub, sorted(map(fm.format_elt, stab ^ sub))[:5]))
    return checks


# ---- 6: formula against the weight-level oracle ---------------------------------------------

def oracle_suite(g: GCM, radius: int = 3, depth: int = 6) -> list[Check]:
    tag = f"{_label(g)} r={radius} depth={depth}"
    elts = fm.monoid_ball(g, radius)
    points = [wt.PointModel(f.w, f.J) for f in building.facets_in_ball(g, radius)]
    samples = wt.default_samples(g)
    mismatches = []
    for x in elts:
        for p in points:
            try:
                wt.act_point_oracle(x, p, samples, depth)
            except wt.Mismatch as exc:
                mismatches.append((fm.format_elt(x), repr(p), str(exc), exc.witness))
    return [check(f"formula = weight-level oracle ({tag}: {len(elts)} elements x {len(points)} points)",
                  not mismatches, mismatches[:3])]


# ---- 7: weights ------------------------------------------------------------------------

def dominant_samples(g: GCM) -> list[tuple]:
    return [lam for lam in wt.default_samples(g) if tc.is_dominant(g, lam)]


def weights_suite(g: GCM, depth: int = 8) -> list[Check]:
    tag = f"{_label(g)} depth={depth}"
    checks = []
    for top in dominant_samples(g):
        bad = wt.saturation_disagreements(g, top, depth)
        checks.append(check(f"Freudenthal = saturation for {tc.format_weight(top)} ({tag})", not bad,
                            bad[:3] and [tc.format_weight(x) for x in bad[:3]]))
    return checks


def partitions(k: int) -> int:
    table = [1] + [0] * k
    for part in range(1, k + 1):
        for total in range(part, k + 1):
            table[total] += table[total - part]
    return table[k]


def basic_representation_suite(g: GCM, kmax: int = 5) -> list[Check]:
    """mult(Lambda_0 - k delta) = p(k) for an affine rank-2 matrix."""
    top = tc.fundamental(g, 0)
    ws = wt.freudenthal(g, top, 2 * kmax)
    delta = wt.beta_to_weight(g, (1,) * g.n)
    got = [ws.mult(tuple(x - k * d for x, d in zip(top, delta))) for k in range(kmax + 1)]
    want = [partitions(k) for k in range(kmax + 1)]
    return [check(f"basic representation multiplicities ({_label(g)}): {got}", got == want, want)]


# ---- 8-10: graded spectra ----------------------------------------------------------------

def cartan_suite(g: GCM, bound: int = 3, seed: int = 0) -> list[Check]:
    from .gradedspec import algebra as al
    from .gradedspec import cartan as ca
    tag = f"{_label(g)} bound={bound}"
    A = ca.cartan_algebra(g, bound)
    comm, assoc, unit = al.check_commutative(A), al.check_associative(A), al.check_unit(A)
    checks = [
        check(f"commutativity ({tag}: {len(A.tables)} grade pairs)", comm is None, comm),
        check(f"associativity on all in-bound triples ({tag})", assoc is None, assoc),
        check(f"unit ({tag})", unit is None, unit),
    ]
    bad = next(((lam, mu) for (lam, mu), t in A.tables.items()
                if any(t[0, 0, k] != (k == 0) for k in range(t.shape[2]))), None)
    checks.append(check(f"delta products ({tag})", bad is None, bad))
    for k in range(1 << g.n):
        J = frozenset(i for i in range(g.n) if k >> i & 1)
        try:
            Q = ca.build_P_ideal(A, J)
            cert = al.is_prime_scan(Q, seed=seed)
        except al.NotIdeal as exc:
            checks.append(check(f"P({tc.fmt_set(J)}) is an ideal ({tag})", False, exc.witness))
            continue
        dims = sorted({Q.quotient_dim(lam) for lam in A.grades})
        checks.append(check(f"CA/P({tc.fmt_set(J)}) component dims {dims} ({tag})", al.f_point_criterion(Q), dims))
        kind = "exhaustive" if cert.exact else "sampled"
        checks.append(check(f"prime scan P({tc.fmt_set(J)}) ({tag}: {cert.checked} pairs, {kind})",
                            cert.passed, cert.witness))
        bad_dim = [(lam, w) for lam in A.grades if (w := ca.levi_dimension_check(g, lam, J))]
        checks.append(check(f"L_J dimension = Weyl dimension, J={tc.fmt_set(J)} ({tag})", not bad_dim, bad_dim[:2]))
        bad_prod = next((w for (lam, mu) in A.tables if (w := ca.levi_product_check(g, lam, mu, J))), None)
        checks.append(check(f"L_J products stay in L_J, J={tc.fmt_set(J)} ({tag})", bad_prod is None, bad_prod))
    return checks


GAMMA_SETS = (frozenset(), frozenset({0}))


def gamma_suite(g: GCM, samples: int = 100, seed: int = 0, bound: int = 3) -> list[Check]:
    from .gradedspec import cartan as ca
    tag = f"{_label(g)}"
    checks = []
    for J in GAMMA_SETS:
        rep = ca.gamma_identity_check(g, J, samples, seed, bound)
        checks.append(check(f"phi(u v_N) psi(u v_M) = (phi•psi)(u v_N+M), J={tc.fmt_set(J)} "
                            f"({tag}: {rep.samples} samples)", rep.passed, rep.failures[:1]))
        rep = ca.levi_invariance_check(g, J, samples, seed, bound)
        checks.append(check(f"phi(u v) = phi(v) on L_J parts, J={tc.fmt_set(J)} ({tag}: {rep.samples} samples)",
                            rep.passed, rep.failures[:1]))
    return checks


def generic_suite(seed: int = 0) -> list[Check]:
    from .gradedspec import algebra as al
    from .gradedspec import principal as pr
    checks = []
    A = al.polynomial_algebra(1, 3, "x")
    B = al.polynomial_algebra(1, 3, "y")
    rep = al.tensor_fpoints(A, B)
    checks.append(check(f"F-points of F[x]⊗F[y] match pairs ({len(rep.left)}x{len(rep.right)} pairs, "
                        f"{len(rep.product)} F-points)", rep.bijective and len(rep.product) == 4,
                        [sorted(s) for s in rep.product]))
    for alg, rank in ((A, 1), (al.polynomial_algebra(2, 2), 1), (A, 2)):
        ext = al.lattice_extension_check(alg, rank)
        checks.append(check(f"Q -> Q⊗F[Z^{rank}] keeps scans on {alg.name} ({len(ext.rows)} ideals)",
                            ext.passed, [r for r in ext.rows if r[1] != r[2] or r[3] != r[4]][:2]))
    q = al.quotient(A, al.grade_set_ideal(A, [(1,), (2,), (3,)]))
    checks.append(check("F[x]/(x) is F in grade 0", q.dims == {(0,): 1}, q.dims))

    g = gcm_mod.builtin("a2")
    bad = []
    for k in range(1 << g.n):
        J = frozenset(i for i in range(g.n) if k >> i & 1)
        S = pr.closed_facet_monoid(g, J)
        for lam in itertools.product(range(4), repeat=g.n):
            if all(lam[j] == 0 for j in J) and pr.is_principal(S, lam) != pr.principal_in_face(g, J, lam):
                bad.append((tc.fmt_set(J), lam))
    checks.append(check("principal elements of P+ ∩ closed facet are the open-facet weights (a2)", not bad, bad[:3]))
    S = pr.closed_facet_monoid(g, ())
    checks.append(check("Lambda1 + Lambda2 principal, Lambda1 not (a2)",
                        pr.is_principal(S, (1, 1)) and not pr.is_principal(S, (1, 0)), None))
    return checks


def orbit_suite(g: GCM, bound: int = 2) -> list[Check]:
    from .gradedspec import cartan as ca
    bad = []
    for J in ca._subsets(g.n):
        for K in ca._subsets(g.n):
            r = ca.orbit_closure_poset(g, J, K, bound)
            if not r.passed:
                bad.append((tc.fmt_set(J), tc.fmt_set(K), r.contained, r.intersection, r.strata))
    return [check(f"orbit closures: containment iff K ⊇ J, meets of type J ∪ K ({_label(g)})", not bad, bad[:3])]


def stabilizer_shadow_suite(g: GCM, seed: int = 0) -> list[Check]:
    from .gradedspec import cartan as ca
    bad = []
    for J in ca._subsets(g.n):
        rep = ca.stabilizer_shadow_check(g, J, 20, seed)
        bad += rep.failures[:1]
    return [check(f"g·P(J) = P(J) iff g fixes the highest lines ({_label(g)})", not bad, bad[:1])]


# ---- registry ----------------------------------------------------------------------------

SUITES = {
    "associativity": "monoid axioms on monoid_ball(radius)",
    "collapse": "finite type: the window is W",
    "stabilizers": "setwise and pointwise stabilizers of standard faces",
    "faces": "face intersection and containment against sample points",
    "action": "the face monoid action on apartment facets",
    "oracle": "action formula against the weight-level oracle",
    "weights": "Freudenthal against saturation membership",
    "cartan": "truncated Cartan algebra, P(J) ideals, L_J subspaces",
    "gamma": "matrix-coefficient identities",
    "generic": "graded algebra generics and principal elements",
}


def run_suite(name: str, g: GCM | None, radius: int = 3, depth: int = 6, seed: int = 0) -> list[Check]:
    if name == "associativity":
        return associativity_suite(g, radius, seed)
    if name == "collapse":
        return collapse_suite(g, radius)
    if name == "stabilizers":
        return stabilizers_suite(g, radius, seed)
    if name == "faces":
        return faces_suite(g, radius, seed)
    if name == "action":
        return action_suite(g, radius)
    if name == "oracle":
        return oracle_suite(g, radius, depth)
    if name == "weights":
        checks = weights_suite(g, depth)
        types = set(gcm_mod.classify(g).values())
        if types == {gcm_mod.AFFINE} and g.n == 2:
            checks += basic_representation_suite(g)
        return checks
    if name == "cartan":
        return cartan_suite(g, seed=seed)
    if name == "gamma":
        return gamma_suite(g, seed=seed)
    if name == "generic":
        return generic_suite(seed)
    raise KeyError(name)
