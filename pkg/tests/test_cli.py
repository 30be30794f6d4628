import io
import json
import subprocess
import sys

import pytest

from kmface import building, cli, facemonoid as fm, suites, titscone as tc, weyl
from kmface.gcm import builtin


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_example():
    code, out, _ = run("classify", "aff.gcm")
    assert code == 0
    assert out == "component {1,2}: Affine; special: {}, {1,2}\n"


def test_classify_from_file(tmp_path):
    p = tmp_path / "m.gcm"
    p.write_text("3\n2 -1 0\n-1 2 0\n0 0 2\n", encoding="utf-8")
    code, out, _ = run("classify", str(p))
    assert code == 0 and out == "component {1,2}: Finite; component {3}: Finite; special: {}\n"


def test_act_example():
    code, out, _ = run("act", "hyp3.gcm", "--elt", "fm{w=e;theta=1,2;tw=e}", "--facet", "facet{w=s3;J=}")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "(e, {1,2,3})"
    assert lines[1].startswith("trace: a=e, y=s3,")


def test_verify_example():
    code, out, _ = run("verify", "associativity", "aff.gcm", "--radius", "3")
    assert code == 0 and out.splitlines()[-1] == "associativity: PASS"


def test_weyl_queries():
    code, out, _ = run("weyl", "a2", "s1*s2", "s1", "--double", "1", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "element: s1*s2*s1" and lines[1] == "length: 3"
    code, out, _ = run("weyl", "a2", "s1*s2", "--coset", "2")
    assert "min coset rep (right, J={2}): s1; factor: (s1, s2)" in out


def test_json_field_names():
    code, out, _ = run("verify", "collapse", "a2", "--json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"suite", "gcm", "status", "checks"}
    assert all(set(c) == {"check", "status", "witness"} for c in data["checks"])
    assert data["status"] == "PASS"


def test_tsv_output():
    code, out, _ = run("weights", "a1", "--top", "2", "--depth", "2", "--output", "tsv")
    assert code == 0 and out.splitlines() == ["L1\tdepth\tmult", "2\t0\t1", "0\t1\t1", "-2\t2\t1"]


def test_spec_product():
    code, out, _ = run("spec", "a1", "--product", "dual{top=1; phi=0,1}", "dual{top=1; phi=0,1}")
    assert code == 0 and out == "dual{top=2; phi=0,0,2}\n"
    top, phi = cli._parse_dual(builtin("a1"), out.strip())
    assert cli._format_dual(top, phi) == out.strip()


@pytest.mark.parametrize("argv", [
    ("verify", "nosuch", "a2"),
    ("weyl", "a2", "s7"),
    ("faces", "aff", "--radius", "-1"),
    ("classify", "missing.gcm"),
    ("spec", "aff"),
    ("act", "hyp3", "--elt", "fm{w=e}", "--facet", "nonsense"),
    (),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_budget_exit():
    # -Lambda_2 is outside the Tits cone of the affine matrix
    code, _, err = run("faces", "aff", "--contains", "face{theta=; w=e}", "0,-1,0")
    assert code == 3 and err.startswith("budget:")


def test_fail_exit(monkeypatch):
    monkeypatch.setitem(suites.SUITES, "collapse", lambda g, **kw: [suites.check("forced", False, "w")])
    monkeypatch.setattr(suites, "run_suite",
                        lambda name, g, radius=3, depth=6, seed=0: suites.SUITES[name](g))
    code, out, _ = run("verify", "collapse", "a2")
    assert code == 1 and "witness: w" in out and out.splitlines()[-1] == "collapse: FAIL"


def test_weights_check_passes():
    code, out, _ = run("weights", "hyp3", "--top", "1,0,0", "--depth", "4", "--check")
    assert code == 0 and out.splitlines()[-1] == "saturation check: PASS"


def test_round_trip_of_printed_syntax():
    g = builtin("hyp3")
    code, out, _ = run("faces", "hyp3", "--radius", "2")
    for text in out.splitlines()[1:]:
        assert tc.format_face(tc.parse_face(g, text)) == text
    code, out, _ = run("monoid", "hyp3", "--radius", "1")
    for text in out.splitlines()[1:]:
        assert fm.format_elt(fm.parse_elt(g, text)) == text
    code, out, _ = run("weyl", "hyp3", "--ball", "--radius", "2")
    for text in out.splitlines()[1:]:
        assert weyl.format_word(weyl.parse_word(g, text)) == text
    code, out, _ = run("act", "hyp3", "--elt", "fm{w=s1; theta=1,2; tw=s3}", "--facet", "facet{w=s2; J=1}")
    facet = out.splitlines()[2].removeprefix("facet: ")
    assert building.format_facet(building.parse_facet(g, facet)) == facet


def test_monoid_product():
    code, out, _ = run("monoid", "aff", "fm{w=s1; theta=1,2; tw=e}", "fm{w=s2; theta=1,2; tw=e}")
    assert code == 0 and out == "fm{w=e; theta=1,2; tw=e}\n"


def test_determinism_across_processes():
    argv = [sys.executable, "-m", "kmface.cli", "spec", "a1", "--check", "gamma", "--seed", "5", "--json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and b'"status": "PASS"' in first
