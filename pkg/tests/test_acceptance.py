"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (the lines appear in the terminal summary) or directly:
    python tests/test_acceptance.py
"""
import sys
import time

import pytest

from kmface.gcm import builtin
from kmface.suites import run_suite

RESULTS: dict[int, tuple[bool, str]] = {}


def _run(number: int, title: str, jobs, limit: float | None = None) -> bool:
    start = time.perf_counter()
    failed = []
    for suite, name, kwargs in jobs:
        g = builtin(name) if name else None
        for c in run_suite(suite, g, **kwargs):
            if not c.passed:
                failed.append(f"{c.check}: {c.witness}")
    elapsed = time.perf_counter() - start
    ok = not failed
    detail = f"{elapsed:.1f}s"
    if limit is not None:
        detail += f" (limit {limit:.0f}s)"
        ok = ok and elapsed < limit
    if failed:
        detail += "; " + "; ".join(failed[:2])
    RESULTS[number] = (ok, f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]")
    print(RESULTS[number][1])
    return ok


CRITERIA = {
    1: ("monoid axioms on monoid_ball(3), AFF and HYP3",
        [("associativity", "aff", {"radius": 3}), ("associativity", "hyp3", {"radius": 3})], 60),
    2: ("classical collapse, A2 and B2",
        [("collapse", "a2", {"radius": 4}), ("collapse", "b2", {"radius": 4})], None),
    3: ("face stabilizers on ball(4), HYP3",
        [("stabilizers", "hyp3", {"radius": 4})], None),
    4: ("face lattice against sample points, AFF and HYP3",
        [("faces", "aff", {"radius": 3}), ("faces", "hyp3", {"radius": 3})], None),
    5: ("good action 1 on ball(3), AFF and HYP3",
        [("action", "aff", {"radius": 3}), ("action", "hyp3", {"radius": 3})], 300),
    6: ("action formula against the weight-level oracle, depth 6, AFF and HYP3",
        [("oracle", "aff", {"radius": 3, "depth": 6}), ("oracle", "hyp3", {"radius": 3, "depth": 6})], 600),
    7: ("Freudenthal against saturation to depth 8; basic representation p(k)",
        [("weights", name, {"depth": 8}) for name in ("a1", "a2", "b2", "aff", "hyp3")], None),
    8: ("truncated Cartan algebra, A1 and A2",
        [("cartan", "a1", {}), ("cartan", "a2", {})], None),
    9: ("matrix-coefficient identities, A1 and A2, J in {∅, {1}}",
        [("gamma", "a1", {}), ("gamma", "a2", {})], None),
    10: ("graded algebra generics and principal elements",
         [("generic", None, {})], None),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, jobs, limit = CRITERIA[number]
    assert _run(number, title, jobs, limit), RESULTS[number][1]


if __name__ == "__main__":
    results = [_run(k, *CRITERIA[k]) for k in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
