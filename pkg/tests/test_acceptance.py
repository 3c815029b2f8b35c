"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line,
and the lines are repeated in the terminal summary."""

import time

import pytest

from zfthrottle import suites

# (criterion, suite, time budget in seconds)
CRITERIA = [
    (1, "path-formula", 60),
    (2, "cycle-formula", 300),
    (3, "floor-cycle", 600),
    (4, "oracle-equivalence", None),
    (5, "supergraph-throttling", None),
    (6, "subgraph-monotonicity", None),
    (7, "characterization", 1800),
    (8, "catalog-three", None),
    (9, "contraction-lemma", None),
    (10, "extension-invariant", None),
    (11, "non-monotone-minor", None),
    (12, "star-wheel", None),
    (13, "alpha-bound", None),
]

REPORT: list[str] = []
RULE_NAMES = {"floorZ", "floorZ+", "floorZl"}


@pytest.mark.parametrize("number,suite,budget", CRITERIA, ids=[f"c{n:02d}-{s}" for n, s, _ in CRITERIA])
def test_criterion(number, suite, budget):
    t0 = time.perf_counter()
    (res,) = suites.run_suite(suite)
    elapsed = time.perf_counter() - t0
    in_time = budget is None or elapsed < budget
    ok = res.passed and in_time
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {res.line().split(' ', 1)[1]}"
    rules = {f[0] for f in res.failures if isinstance(f, tuple) and f and f[0] in RULE_NAMES}
    if rules:
        clean = sorted(RULE_NAMES - rules)
        line += f" [failing rules: {', '.join(sorted(rules))}; clean: {', '.join(clean)}]"
    if not in_time:
        line += f" (over the {budget}s budget)"
    REPORT.append(line)
    print(line)
    assert res.passed, res.failures[:5]
    assert in_time
