"""Named verification suites, one per acceptance criterion.

Each suite runs an exhaustive check and returns a :class:`SuiteResult`;
``run_suite("all")`` runs them in order.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

from .charlib import (
    build_extension,
    catalog,
    collapse_extension,
    contract_chain_edge,
    find_non_monotone_minor,
    obtainable_floor,
    obtainable_standard,
    optimal_force_sets,
)
from .graph import (
    EdgeKind,
    Graph,
    canonical_form,
    cartesian_product_complete_path,
    delete_edge,
    delete_vertex,
    generate,
    graphs_of_order,
    independence_number,
    is_connected,
    write_graph6,
)
from .propagation import INF, propagate_force_set, pt_of_set, pt_via_supergraphs
from .rules import RuleId
from .throttling import (
    alpha_upper_bound,
    cycle_throttling_formula,
    sqrt_lower_bound,
    th_via_supergraphs,
    throttling_number,
)

FLOORS = (RuleId.FLOOR_Z, RuleId.FLOOR_ZPLUS, RuleId.FLOOR_ZLOOP)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: list
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; first failures: {self.failures[:3]}" if self.failures else ""
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures, {self.seconds:.1f}s{extra}"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:20]],
            "failure_count": len(self.failures),
            "seconds": round(self.seconds, 3),
        }


def _graphs_upto(n: int):
    for k in range(1, n + 1):
        yield from graphs_of_order(k)


def path_formula() -> tuple[int, list]:
    bad = []
    for n in range(1, 17):
        got = throttling_number(RuleId.Z, generate("path", n)).value
        if got != sqrt_lower_bound(n):
            bad.append((n, got, sqrt_lower_bound(n)))
    return 16, bad


def cycle_formula() -> tuple[int, list]:
    bad = []
    for n in range(3, 17):
        got = throttling_number(RuleId.Z, generate("cycle", n)).value
        if got != cycle_throttling_formula(n):
            bad.append((n, got, cycle_throttling_formula(n)))
    return 14, bad


def floor_cycle() -> tuple[int, list]:
    bad = []
    for n in range(3, 11):
        got = throttling_number(RuleId.FLOOR_Z, generate("cycle", n)).value
        if got != sqrt_lower_bound(n):
            bad.append((n, got, sqrt_lower_bound(n)))
    return 8, bad


def oracle_equivalence(rules=FLOORS) -> tuple[int, list]:
    bad, checked = [], 0
    for g in _graphs_upto(5):
        if not is_connected(g):
            continue
        for b in range(1 << g.n):
            for rule in rules:
                checked += 1
                got = pt_of_set(rule, g, b).pt
                want = pt_via_supergraphs(rule.base, g, b)
                if got != want:
                    bad.append((rule.value, write_graph6(g), b, got, want))
    return checked, bad


def supergraph_throttling() -> tuple[int, list]:
    bad, checked = [], 0
    for g in _graphs_upto(5):
        checked += 1
        got = throttling_number(RuleId.FLOOR_Z, g).value
        want = th_via_supergraphs(g)
        if got != want:
            bad.append((write_graph6(g), got, want))
    return checked, bad


def subgraph_monotonicity(rules=FLOORS) -> tuple[int, list]:
    bad, checked = [], 0
    cache: dict[tuple[RuleId, bytes], int] = {}

    def th(rule: RuleId, g: Graph) -> int:
        if g.n == 0:
            return 0
        key = (rule, canonical_form(g))
        if key not in cache:
            cache[key] = throttling_number(rule, g).value
        return cache[key]

    for h in _graphs_upto(5):
        smaller = [delete_edge(h, e) for e in h.edges()] + [delete_vertex(h, v)[0] for v in range(h.n)]
        for rule in rules:
            big = th(rule, h)
            for g in smaller:
                checked += 1
                if th(rule, g) > big:
                    bad.append((rule.value, write_graph6(h), write_graph6(g), th(rule, g), big))
    return checked, bad


def characterization() -> tuple[int, list]:
    bad, checked = [], 0
    for g in _graphs_upto(6):
        thf = throttling_number(RuleId.FLOOR_Z, g).value
        thz = throttling_number(RuleId.Z, g).value
        for t in range(1, 6):
            for name, test, th in (("floor", obtainable_floor, thf), ("standard", obtainable_standard, thz)):
                checked += 1
                ok, w = test(g, t)
                if ok != (th <= t):
                    bad.append((name, write_graph6(g), t, ok, th))
                elif w is not None and canonical_form(w.replay()) != canonical_form(g):
                    bad.append((name, write_graph6(g), t, "witness replay differs"))
    return checked, bad


# C_4, P_4, 2K_2, K_1+P_3, K_2+2K_1, 4K_1, K_3, P_3, K_1+K_2, 3K_1
LOW_FLOOR_GRAPHS = (
    (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    (4, [(0, 1), (1, 2), (2, 3)]),
    (4, [(0, 1), (2, 3)]),
    (4, [(1, 2), (2, 3)]),
    (4, [(0, 1)]),
    (4, []),
    (3, [(0, 1), (1, 2), (0, 2)]),
    (3, [(0, 1), (1, 2)]),
    (3, [(1, 2)]),
    (3, []),
)


def catalog_three() -> tuple[int, list]:
    want = {canonical_form(Graph.from_edges(n, es)).decode() for n, es in LOW_FLOOR_GRAPHS}
    got = set(catalog(RuleId.FLOOR_Z, 3, exact=True))
    bad = [("missing", s) for s in sorted(want - got)] + [("extra", s) for s in sorted(got - want)]
    return len(want | got), bad


def _optimal_inputs(max_n: int = 5):
    for g in _graphs_upto(max_n):
        for r in range(1, g.n + 1):
            for combo in itertools.combinations(range(g.n), r):
                for fs in optimal_force_sets(g, combo):
                    yield g, frozenset(combo), fs


def contraction_lemma() -> tuple[int, list]:
    bad, checked = [], 0
    for g, b, fs in _optimal_inputs():
        before = propagate_force_set(RuleId.Z, g, b, fs).pt
        for f in fs:
            checked += 1
            e = (min(f.source, f.target), max(f.source, f.target))
            out = contract_chain_edge(g, b, fs, e)
            after = propagate_force_set(RuleId.Z, out.graph, out.blue, out.forces).pt
            if after == INF or after > before:
                bad.append((write_graph6(g), sorted(b), e, before, after))
    return checked, bad


def extension_invariant() -> tuple[int, list]:
    bad, checked = [], 0
    for g, b, fs in _optimal_inputs():
        checked += 1
        ext = build_extension(g, b, fs)
        host = cartesian_product_complete_path(ext.rows, ext.columns)
        for u, v in ext.graph.edges():
            if host.label(u, v) is None or host.label(u, v) is not ext.graph.label(u, v):
                bad.append((write_graph6(g), sorted(b), "edge outside host", (u, v)))
                break
        rows_ok = all(sum(ext.tau[v] for v in ch) == ext.columns for ch in ext.chains)
        if not rows_ok or ext.graph.n != host.n:
            bad.append((write_graph6(g), sorted(b), "row lengths"))
        if collapse_extension(ext) != g.unlabeled():
            bad.append((write_graph6(g), sorted(b), "collapse differs"))
    return checked, bad


def non_monotone_witness() -> tuple[int, list]:
    bad = []
    host = cartesian_product_complete_path(3, 3)
    th_host = throttling_number(RuleId.FLOOR_Z, host).value
    end_copy = [v for v in range(host.n) if v < 3]
    if len(end_copy) + pt_of_set(RuleId.FLOOR_Z, host, end_copy).pt > 5:
        bad.append("end copy of K_3 does not give 5")
    if th_host != 5:
        bad.append(("th host", th_host))
    w = find_non_monotone_minor()
    if w.th_minor != 6 or throttling_number(RuleId.FLOOR_Z, w.graph).value != 6:
        bad.append(("th minor", w.th_minor))
    if w.degree_sequence != (5, 3, 3, 3, 3, 3, 3, 3):
        bad.append(("degrees", w.degree_sequence))
    return 4, bad


def star_wheel() -> tuple[int, list]:
    bad = []
    star = generate("star", 6)
    z = throttling_number(RuleId.Z, star).value
    f = throttling_number(RuleId.FLOOR_Z, star).value
    c5 = throttling_number(RuleId.FLOOR_Z, generate("cycle", 5)).value
    if z != 6:
        bad.append(("th_Z(K_1,5)", z))
    if not f <= c5 + 1 == 5:
        bad.append(("th_floorZ(K_1,5)", f, c5))
    return 2, bad


def alpha_bound() -> tuple[int, list]:
    bad, checked = [], 0
    for g in _graphs_upto(7):
        checked += 1
        th = throttling_number(RuleId.FLOOR_Z, g).value
        if th > alpha_upper_bound(g):
            bad.append((write_graph6(g), th, alpha_upper_bound(g)))
        if th == g.n and independence_number(g) > 3:
            bad.append((write_graph6(g), "th = n with alpha > 3"))
    return checked, bad


SUITES: dict[str, Callable[[], tuple[int, list]]] = {
    "path-formula": path_formula,
    "cycle-formula": cycle_formula,
    "floor-cycle": floor_cycle,
    "oracle-equivalence": oracle_equivalence,
    "supergraph-throttling": supergraph_throttling,
    "subgraph-monotonicity": subgraph_monotonicity,
    "characterization": characterization,
    "catalog-three": catalog_three,
    "contraction-lemma": contraction_lemma,
    "extension-invariant": extension_invariant,
    "non-monotone-minor": non_monotone_witness,
    "star-wheel": star_wheel,
    "alpha-bound": alpha_bound,
}


def run_suite(name: str) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}; choose from all, {', '.join(SUITES)}")
        t0 = time.perf_counter()
        checked, bad = SUITES[nm]()
        out.append(SuiteResult(nm, not bad, checked, bad, time.perf_counter() - t0))
    return out
