"""Command-line front end: `kmface <command> GCM [options]`.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 budget signal (dominance search exhausted or a non-special face type).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import building
from . import facemonoid as fm
from . import gcm as gcm_mod
from . import suites
from . import titscone as tc
from . import weights as wt
from . import weyl

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
FORMATS = ("text", "json", "tsv")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    gcm: str
    radius: int = 3
    depth: int = 6
    seed: int = 0
    output: str = "text"


@dataclass
class Report:
    """What a command prints: text lines, a JSON object and TSV rows."""

    lines: list
    data: object
    rows: list
    status: int = EXIT_OK

    def render(self, output: str) -> str:
        if output == "json":
            return json.dumps(self.data, indent=2, ensure_ascii=False) + "\n"
        if output == "tsv":
            return "".join("\t".join(str(x) for x in row) + "\n" for row in self.rows)
        return "".join(line + "\n" for line in self.lines)


def _indices(s) -> list[int]:
    return [i + 1 for i in sorted(s)]


# ---- commands -------------------------------------------------------------

def cmd_classify(g, cfg: Config, args) -> Report:
    comps = gcm_mod.classify(g)
    special = gcm_mod.special_sets(g)
    parts = [f"component {tc.fmt_set(c)}: {t}" for c, t in sorted(comps.items(), key=lambda kv: sorted(kv[0]))]
    line = "; ".join(parts + ["special: " + ", ".join(tc.fmt_set(s) for s in special)])
    data = {
        "gcm": g.name,
        "components": [{"indices": _indices(c), "type": t}
                       for c, t in sorted(comps.items(), key=lambda kv: sorted(kv[0]))],
        "special": [_indices(s) for s in special],
        "symmetrizer": [str(x) for x in g.d],
        "realization": [list(r) for r in g.realization],
    }
    rows = [("component", "type")] + [(tc.format_index_list(c), t) for c, t in
                                      sorted(comps.items(), key=lambda kv: sorted(kv[0]))]
    return Report([line], data, rows)


def cmd_weyl(g, cfg: Config, args) -> Report:
    if args.ball:
        elts = weyl.ball(g, cfg.radius)
        words = [weyl.format_word(x) for x in elts]
        return Report([f"ball({cfg.radius}): {len(elts)} elements"] + words,
                      {"radius": cfg.radius, "elements": words},
                      [("element", "length")] + [(weyl.format_word(x), weyl.length(x)) for x in elts])
    x = weyl.product(g, [weyl.parse_word(g, w) for w in args.words])
    info = {
        "element": weyl.format_word(x),
        "length": weyl.length(x),
        "left_descents": _indices(weyl.descents(x, "left")),
        "right_descents": _indices(weyl.descents(x, "right")),
    }
    lines = [f"element: {info['element']}", f"length: {info['length']}",
             f"left descents: {tc.fmt_set(weyl.descents(x, 'left'))}",
             f"right descents: {tc.fmt_set(weyl.descents(x, 'right'))}"]
    if args.coset is not None:
        J = tc.parse_index_list(g, args.coset)
        rep = weyl.min_coset_rep(x, J, args.side)
        first, second = weyl.parabolic_factor(x, J, args.side)
        info["coset"] = {"J": _indices(J), "side": args.side, "min_rep": weyl.format_word(rep),
                         "factor": [weyl.format_word(first), weyl.format_word(second)]}
        lines.append(f"min coset rep ({args.side}, J={tc.fmt_set(J)}): {weyl.format_word(rep)}; "
                     f"factor: ({weyl.format_word(first)}, {weyl.format_word(second)})")
    if args.double is not None:
        K, J = (tc.parse_index_list(g, t) for t in args.double)
        a, y, c = weyl.double_coset_decompose(x, K, J)
        info["double_coset"] = {"K": _indices(K), "J": _indices(J), "a": weyl.format_word(a),
                                "y": weyl.format_word(y), "c": weyl.format_word(c)}
        lines.append(f"double coset (K={tc.fmt_set(K)}, J={tc.fmt_set(J)}): "
                     f"({weyl.format_word(a)}, {weyl.format_word(y)}, {weyl.format_word(c)})")
    rows = [("element", "length", "left_descents", "right_descents"),
            (info["element"], info["length"], tc.format_index_list(weyl.descents(x, "left")),
             tc.format_index_list(weyl.descents(x, "right")))]
    return Report(lines, info, rows)


def cmd_faces(g, cfg: Config, args) -> Report:
    if args.intersect or args.join or args.leq:
        pair = args.intersect or args.join or args.leq
        f1, f2 = (tc.parse_face(g, t) for t in pair)
        if args.intersect:
            res = tc.face_intersect(f1, f2)
            text = tc.format_face(res)
            return Report([text], {"intersection": text}, [("intersection",), (text,)])
        if args.join:
            res, nonsimple = tc.face_join_trace(f1, f2)
            text = tc.format_face(res)
            lines = [text]
            if nonsimple:
                lines.append(f"non-simple images from indices {tc.fmt_set(nonsimple)}")
            return Report(lines, {"join": text, "nonsimple": _indices(nonsimple)},
                          [("join", "nonsimple"), (text, tc.format_index_list(nonsimple))])
        ok = tc.face_leq(f1, f2)
        return Report([f"contained: {str(ok).lower()}"], {"contained": ok}, [("contained",), (str(ok).lower(),)])
    if args.contains:
        face = tc.parse_face(g, args.contains[0])
        lam = tc.parse_weight(g, args.contains[1])
        ok = tc.face_contains(face, lam)
        return Report([f"contains: {str(ok).lower()}"], {"contains": ok}, [("contains",), (str(ok).lower(),)])
    faces = tc.faces_in_ball(g, cfg.radius)
    texts = [tc.format_face(f) for f in faces]
    return Report([f"faces from ball({cfg.radius}): {len(faces)}"] + texts,
                  {"radius": cfg.radius, "faces": texts}, [("face",)] + [(t,) for t in texts])


def cmd_monoid(g, cfg: Config, args) -> Report:
    if args.parabolic is not None:
        J = tc.parse_index_list(g, args.parabolic)
        elts = sorted(fm.parabolic_submonoid(g, J, cfg.radius), key=fm.elt_key)
        head = f"parabolic submonoid J={tc.fmt_set(J)} within ball({cfg.radius}): {len(elts)} elements"
    elif args.elements:
        prod = fm.unit(g)
        for text in args.elements:
            prod = fm.multiply(prod, fm.parse_elt(g, text))
        text = fm.format_elt(prod)
        return Report([text], {"product": text, "unit": prod.is_unit()}, [("product",), (text,)])
    else:
        elts = fm.monoid_ball(g, cfg.radius)
        head = f"monoid_ball({cfg.radius}): {len(elts)} elements"
    texts = [fm.format_elt(x) for x in elts]
    return Report([head] + texts, {"radius": cfg.radius, "elements": texts}, [("element",)] + [(t,) for t in texts])


def cmd_act(g, cfg: Config, args) -> Report:
    x = fm.parse_elt(g, args.elt)
    f = building.parse_facet(g, args.facet)
    tr = building.action_trace(x, f)
    result = building.format_facet_short(tr.result)
    trace = {"a": weyl.format_word(tr.a), "y": weyl.format_word(tr.y), "c": weyl.format_word(tr.c),
             "red_y": _indices(tr.red_y), "a_perp": weyl.format_word(tr.a_perp)}
    lines = [result, f"trace: a={trace['a']}, y={trace['y']}, c={trace['c']}, "
                     f"red(y)={tc.fmt_set(tr.red_y)}, a_perp={trace['a_perp']}",
             f"facet: {building.format_facet(tr.result)}"]
    data = {"result": building.format_facet(tr.result), "short": result, "trace": trace}
    rows = [("result", "a", "y", "c", "red_y", "a_perp"),
            (building.format_facet(tr.result), trace["a"], trace["y"], trace["c"],
             tc.format_index_list(tr.red_y), trace["a_perp"])]
    return Report(lines, data, rows)


def cmd_weights(g, cfg: Config, args) -> Report:
    top = tc.parse_weight(g, args.top)
    ws = wt.freudenthal(g, top, cfg.depth)
    bad = wt.saturation_disagreements(g, top, cfg.depth) if args.check else []
    tsv = wt.weight_table_tsv(ws).splitlines()
    rows = [tuple(r.split("\t")) for r in tsv]
    entries = [{"weight": tc.format_weight(r[:-2]), "depth": int(r[-2]), "mult": int(r[-1])}
               for r in rows[1:]]
    lines = [f"L({tc.format_weight(ws.highest)}) to depth {cfg.depth}: {len(entries)} weights"]
    lines += [f"{e['weight']}\tdepth {e['depth']}\tmult {e['mult']}" for e in entries]
    data = {"highest": tc.format_weight(ws.highest), "depth": cfg.depth, "weights": entries}
    status = EXIT_OK
    if args.check:
        data["saturation_disagreements"] = [tc.format_weight(x) for x in bad]
        lines.append("saturation check: " + ("PASS" if not bad else f"FAIL at {tc.format_weight(bad[0])}"))
        status = EXIT_OK if not bad else EXIT_FAIL
    return Report(lines, data, rows, status)


def _parse_dual(g, text: str):
    fields = tc.parse_fields(text, "dual")
    top = tuple(int(x) for x in fields.get("top", "").split(","))
    phi = [Fraction(x) for x in fields.get("phi", "").split(",")]
    return top, phi


def _format_dual(top, phi) -> str:
    return f"dual{{top={','.join(map(str, top))}; phi={','.join(str(Fraction(x)) for x in phi)}}}"


SPEC_CHECKS = ("cartan", "gamma", "orbits", "stabilizer", "generic")


def cmd_spec(g, cfg: Config, args) -> Report:
    from .gradedspec import cartan as ca
    if g.dim != g.n or g.n > 2 or set(gcm_mod.classify(g).values()) != {gcm_mod.FINITE}:
        raise UsageError("spec needs a finite-type matrix of rank at most 2")
    if args.product:
        (t1, p1), (t2, p2) = (_parse_dual(g, t) for t in args.product)
        if len(t1) != g.n or len(t2) != g.n:
            raise UsageError(f"top needs {g.n} coordinates")
        if len(p1) != ca.dual_dim(g, t1) or len(p2) != ca.dual_dim(g, t2):
            raise UsageError("phi length must equal dim L(top)")
        total = tuple(a + b for a, b in zip(t1, t2))
        text = _format_dual(total, list(ca.cartan_product(g, t1, p1, t2, p2)))
        return Report([text], {"product": text}, [("product",), (text,)])
    names = SPEC_CHECKS if args.check == "all" else (args.check,)
    checks = []
    for name in names:
        if name == "cartan":
            checks += suites.cartan_suite(g, seed=cfg.seed)
        elif name == "gamma":
            checks += suites.gamma_suite(g, seed=cfg.seed)
        elif name == "orbits":
            checks += suites.orbit_suite(g)
        elif name == "stabilizer":
            checks += suites.stabilizer_shadow_suite(g, seed=cfg.seed)
        else:
            checks += suites.generic_suite(cfg.seed)
    return _checks_report(f"spec {args.check}", g, checks)


def cmd_verify(g, cfg: Config, args) -> Report:
    checks = suites.run_suite(args.suite, g, cfg.radius, cfg.depth, cfg.seed)
    return _checks_report(args.suite, g, checks)


def _checks_report(title: str, g, checks) -> Report:
    ok = suites.passed(checks)
    lines = []
    for c in checks:
        lines.append(f"{c.status} {c.check}")
        if c.witness:
            lines.append(f"  witness: {c.witness}")
    lines.append(f"{title}: {'PASS' if ok else 'FAIL'}")
    data = {"suite": title, "gcm": g.name, "status": "PASS" if ok else "FAIL",
            "checks": [c.as_dict() for c in checks]}
    rows = [("check", "status", "witness")] + [(c.check, c.status, c.witness or "") for c in checks]
    return Report(lines, data, rows, EXIT_OK if ok else EXIT_FAIL)


# ---- parser ---------------------------------------------------------------

def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=_nonnegative, default=3, help="ball radius (default 3)")
    common.add_argument("--depth", type=_nonnegative, default=6, help="weight depth (default 6)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--output", choices=FORMATS, default="text")
    common.add_argument("--json", dest="output", action="store_const", const="json", help="same as --output json")

    parser = argparse.ArgumentParser(prog="kmface", description="Face monoids of Kac-Moody Weyl groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("classify", "component types and special sets", cmd_classify)
    p.add_argument("gcm")

    p = add("weyl", "products, lengths, descents and cosets", cmd_weyl)
    p.add_argument("gcm")
    p.add_argument("words", nargs="*", default=["e"], help="words like s1*s2; their product is used")
    p.add_argument("--coset", metavar="J", help="minimal coset representative for W_J")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--double", nargs=2, metavar=("K", "J"), help="W_K x W_J decomposition")
    p.add_argument("--ball", action="store_true", help="list ball(radius)")

    p = add("faces", "list, intersect, join and compare faces", cmd_faces)
    p.add_argument("gcm")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--intersect", nargs=2, metavar="FACE")
    group.add_argument("--join", nargs=2, metavar="FACE")
    group.add_argument("--leq", nargs=2, metavar="FACE")
    group.add_argument("--contains", nargs=2, metavar=("FACE", "WEIGHT"))

    p = add("monoid", "multiply or enumerate face monoid elements", cmd_monoid)
    p.add_argument("gcm")
    p.add_argument("elements", nargs="*", help="elements like fm{w=s1; theta=1,2; tw=e}")
    p.add_argument("--parabolic", metavar="J", help="list the parabolic submonoid within the ball")

    p = add("act", "act on an apartment facet, with the decomposition trace", cmd_act)
    p.add_argument("gcm")
    p.add_argument("--elt", required=True)
    p.add_argument("--facet", required=True)

    p = add("weights", "weight multiplicities of L(top)", cmd_weights)
    p.add_argument("gcm")
    p.add_argument("--top", required=True, help="highest weight, comma separated")
    p.add_argument("--check", action="store_true", help="compare with saturation membership")

    p = add("spec", "graded spectrum checks on the truncated Cartan algebra", cmd_spec)
    p.add_argument("gcm")
    p.add_argument("--check", choices=SPEC_CHECKS + ("all",), default="all")
    p.add_argument("--product", nargs=2, metavar="DUAL", help="Cartan product of dual{top=..; phi=..} vectors")

    p = add("verify", "run an acceptance suite", cmd_verify)
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("gcm", nargs="?", default="a2")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = Config(args.gcm, args.radius, args.depth, args.seed, args.output)
    try:
        g = gcm_mod.load(cfg.gcm)
        report = args.func(g, cfg, args)
    except (tc.NotInConeWithinBudget, tc.SpecialityViolated) as exc:
        print(f"budget: {exc}", file=stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(report.render(cfg.output))
    return report.status


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
