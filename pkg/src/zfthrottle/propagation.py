"""Propagation of force sets and propagation times of vertex sets.

``pt`` values are ``int`` or ``math.inf``; the latter marks a set of forces
(or a vertex set) that never colours the whole graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import Graph, GuardError, bits, from_mask, spanning_supergraphs, to_mask
from .rules import (
    Force,
    ForceKind,
    ForcingState,
    RuleId,
    base_forces,
    hop_sources,
    is_admissible,
)

FLOOR_SEARCH_MAX_N = 12

INF = math.inf


@dataclass(frozen=True)
class Schedule:
    """Per-round record of one propagation.

    ``rounds[0]`` is the initial blue set and ``rounds[t]`` the vertices
    forced in time step ``t``; ``steps`` lists every executed force with its
    time step.
    """

    rounds: tuple[frozenset[int], ...]
    pt: float
    steps: tuple[tuple[int, Force], ...] = ()

    @property
    def forces(self) -> frozenset[Force]:
        return frozenset(f for _, f in self.steps)

    @property
    def final(self) -> frozenset[int]:
        return frozenset().union(*self.rounds) if self.rounds else frozenset()

    def to_json(self) -> dict:
        return {
            "pt": "inf" if self.pt == INF else int(self.pt),
            "rounds": [sorted(r) for r in self.rounds],
            "forces": [f.to_json(step) for step, f in self.steps],
        }


def _as_force(f) -> Force:
    if isinstance(f, Force):
        return f
    if isinstance(f, dict):
        return Force.from_json(f)
    u, w = f[0], f[1]
    if len(f) > 2:
        return Force(u, w, ForceKind(f[2]) if not isinstance(f[2], ForceKind) else f[2])
    return Force(u, w, ForceKind.SELF if u == w else ForceKind.STANDARD)


def normalize_forces(forces: Iterable) -> list[Force]:
    out = [_as_force(f) for f in forces]
    targets = [f.target for f in out]
    if len(set(targets)) != len(targets):
        raise ValueError("a set of forces may target each vertex at most once")
    for f in out:
        if (f.kind is ForceKind.SELF) != (f.source == f.target):
            raise ValueError(f"malformed force {f}")
    return out


def propagate_force_set(rule: RuleId, g: Graph, blue: Iterable[int] | int, forces: Iterable) -> Schedule:
    """Run a set of forces: in every time step each listed force whose rule
    conditions hold (against the colouring at the start of the step) fires.

    A non-self force fires if it is a valid base force, or a valid hop under
    a floor rule; its recorded kind is the one that applied.
    """
    b = to_mask(blue)
    pending = sorted(normalize_forces(forces))
    state = ForcingState(b, 0)
    rounds = [from_mask(b)]
    steps: list[tuple[int, Force]] = []
    t = 0
    while pending:
        fired: list[Force] = []
        hopped = 0
        for f in pending:
            if f.kind is ForceKind.SELF:
                ok = is_admissible(rule, g, state, f)
                done = f
            else:
                done = Force(f.source, f.target, ForceKind.STANDARD)
                ok = is_admissible(rule, g, state, done)
                if not ok and rule.is_floor and not hopped >> f.source & 1:
                    done = Force(f.source, f.target, ForceKind.HOP)
                    ok = is_admissible(rule, g, state, done)
                    if ok:
                        hopped |= 1 << f.source
            if ok:
                fired.append(done)
        if not fired:
            break
        t += 1
        new_blue, new_spent = state.blue, state.spent
        for f in fired:
            new_blue |= 1 << f.target
            new_spent |= 1 << f.source
            steps.append((t, f))
        state = ForcingState(new_blue, new_spent)
        rounds.append(frozenset(f.target for f in fired))
        done_targets = {f.target for f in fired}
        pending = [f for f in pending if f.target not in done_targets]
    pt = t if state.blue == g.full else INF
    return Schedule(tuple(rounds), pt, tuple(steps))


def final_coloring(rule: RuleId, g: Graph, blue, forces) -> frozenset[int]:
    return propagate_force_set(rule, g, blue, forces).final


# propagation time of a vertex set ---------------------------------------------

def closure(rule: RuleId, g: Graph, blue: int, limit: float = INF) -> Schedule:
    """Synchronous rounds executing every admissible base force (one forcer
    per target: a self force if available, else the smallest source)."""
    state = ForcingState(blue, 0)
    rounds = [from_mask(blue)]
    steps: list[tuple[int, Force]] = []
    t = 0
    while state.blue != g.full:
        chosen: dict[int, Force] = {}
        for f in sorted(base_forces(rule, g, state), key=lambda f: (f.kind is not ForceKind.SELF, f.source)):
            chosen.setdefault(f.target, f)
        if not chosen:
            break
        t += 1
        if t > limit:
            break
        nb, ns = state.blue, state.spent
        for f in chosen.values():
            nb |= 1 << f.target
            ns |= 1 << f.source
            steps.append((t, f))
        state = ForcingState(nb, ns)
        rounds.append(frozenset(chosen))
    pt = t if state.blue == g.full else INF
    return Schedule(tuple(rounds), pt, tuple(steps))


def _round_successors(rule: RuleId, g: Graph, state: ForcingState, allow_hops: bool) -> Iterator[tuple[tuple[Force, ...], ForcingState]]:
    """Every state reachable in one time step with at least one force.

    Each white vertex picks at most one base forcer (itself, for a self
    force), and a set of hop sources is matched to an equally sized set of
    remaining whites; which source hops to which target does not change the
    resulting state, so only the two sets are enumerated.
    """
    blue, spent = state.blue, state.spent
    by_target: dict[int, list[Force]] = {}
    for f in base_forces(rule, g, state):
        by_target.setdefault(f.target, []).append(f)
    targets = sorted(by_target)
    hop_list = list(bits(hop_sources(g, state))) if allow_hops else []

    def base_choices(i: int, acc: list[Force]) -> Iterator[list[Force]]:
        if i == len(targets):
            yield acc
            return
        yield from base_choices(i + 1, acc)
        for f in by_target[targets[i]]:
            acc.append(f)
            yield from base_choices(i + 1, acc)
            acc.pop()

    for chosen in base_choices(0, []):
        nb, ns = blue, spent
        for f in chosen:
            nb |= 1 << f.target
            ns |= 1 << f.source
        free = list(bits(g.full & ~nb))
        for k in range(min(len(hop_list), len(free)) + 1):
            for srcs in itertools.combinations(hop_list, k):
                for tgts in itertools.combinations(free, k):
                    if not k and not chosen:
                        continue
                    hb, hs = nb, ns
                    hf = []
                    for s, w in zip(srcs, tgts):
                        hb |= 1 << w
                        hs |= 1 << s
                        hf.append(Force(s, w, ForceKind.HOP))
                    yield tuple(chosen) + tuple(hf), ForcingState(hb, hs)


def _dominates(a: ForcingState, b: ForcingState) -> bool:
    # more blue and fewer spent is never worse
    return a.blue & b.blue == b.blue and a.spent & b.spent == a.spent


def _pareto(states: Iterable[ForcingState]) -> list[ForcingState]:
    ordered = sorted(set(states), key=lambda s: (-s.blue.bit_count(), s.spent.bit_count(), s.blue, s.spent))
    kept: list[ForcingState] = []
    for s in ordered:
        if not any(_dominates(k, s) for k in kept):
            kept.append(s)
    return kept


@dataclass
class SearchStats:
    states: int = 0
    levels: int = 0


def round_search(rule: RuleId, g: Graph, blue: int, limit: float = INF, allow_hops: bool = True,
                 stats: SearchStats | None = None) -> Schedule:
    """Exact minimum number of time steps over all ways of acting in each
    step (any subset of sources may act, sources may wait).

    Level-by-level search over states ``(blue, spent)`` keeping only the
    Pareto front under "more blue, fewer spent".
    """
    n = g.n
    full = g.full
    if stats is None:
        stats = SearchStats()
    if blue == full:
        return Schedule((from_mask(blue),), 0, ())
    use_active_bound = rule.base is RuleId.Z
    start = ForcingState(blue, 0)

    def rounds_needed(s: ForcingState) -> float:
        if not use_active_bound:
            return 1
        active = (s.blue & ~s.spent).bit_count()
        white = n - s.blue.bit_count()
        return INF if not active else -(-white // active)

    if rounds_needed(start) > limit:
        return Schedule((from_mask(blue),), INF, ())
    parent: dict[ForcingState, tuple[ForcingState | None, tuple[Force, ...], int]] = {start: (None, (), 0)}
    frontier = [start]
    fresh = [start]
    t = 0
    horizon = min(limit, n)
    while fresh and t < horizon:
        t += 1
        stats.levels = t
        cand = list(frontier)
        for s in fresh:
            for forces, ns in _round_successors(rule, g, s, allow_hops):
                stats.states += 1
                if ns not in parent:
                    parent[ns] = (s, forces, t)
                    if ns.blue == full:
                        return _rebuild(rule, g, blue, parent, ns, t)
                    if t + rounds_needed(ns) <= limit:
                        cand.append(ns)
        old = set(frontier)
        frontier = _pareto(cand)
        fresh = [s for s in frontier if s not in old]
    return Schedule((from_mask(blue),), INF, ())


def _rebuild(rule, g, blue, parent, goal, t_goal) -> Schedule:
    steps: list[tuple[int, Force]] = []
    s = goal
    while True:
        prev, forces, t = parent[s]
        if prev is None:
            break
        steps.extend((t, f) for f in forces)
        s = prev
    forces = [f for _, f in steps]
    sched = propagate_force_set(rule, g, blue, forces)
    if sched.pt > t_goal:
        raise AssertionError("witness replay slower than the search result")
    return sched


def pt_of_set(rule: RuleId, g: Graph, blue: Iterable[int] | int, limit: float = INF,
              max_n: int = FLOOR_SEARCH_MAX_N) -> Schedule:
    """Minimum propagation time of ``blue`` over all sets of forces, with a
    witness schedule. Returns ``pt = inf`` when ``blue`` is not a forcing set,
    or when ``limit`` is given and every schedule needs more than ``limit``
    steps."""
    b = to_mask(blue)
    if b & ~g.full:
        raise ValueError("blue set contains a non-vertex")
    if not rule.is_floor:
        return closure(rule, g, b, limit)
    if g.n > max_n:
        raise GuardError(f"exact floor propagation limited to n <= {max_n}")
    return round_search(rule, g, b, limit)


def is_forcing_set(rule: RuleId, g: Graph, blue) -> bool:
    return pt_of_set(rule, g, blue).pt < INF


def pt_via_supergraphs(base: RuleId, g: Graph, blue) -> float:
    """Minimum base-rule propagation time of ``blue`` over spanning supergraphs."""
    if base.is_floor:
        raise ValueError("supergraph oracle takes a base rule")
    b = to_mask(blue)
    best = INF
    for h in spanning_supergraphs(g):
        best = min(best, closure(base, h, b, best).pt)
        if best == 0:
            break
    return best


@dataclass(frozen=True)
class ForcingNumber:
    number: int
    pt: float
    witness: frozenset[int]
    schedule: Schedule = field(repr=False)


def forcing_number(rule: RuleId, g: Graph) -> ForcingNumber:
    """``R(G)`` by increasing-size subset search, and ``pt_R(G)`` as the best
    propagation time among minimum forcing sets."""
    if rule.is_floor and g.n > FLOOR_SEARCH_MAX_N:
        raise GuardError(f"exact floor propagation limited to n <= {FLOOR_SEARCH_MAX_N}")
    for k in range(g.n + 1):
        best: Schedule | None = None
        best_b = None
        for combo in itertools.combinations(range(g.n), k):
            limit = INF if best is None else best.pt - 1
            sched = pt_of_set(rule, g, combo, limit)
            if sched.pt < INF and (best is None or sched.pt < best.pt):
                best, best_b = sched, frozenset(combo)
        if best is not None:
            return ForcingNumber(k, best.pt, best_b, best)
    raise AssertionError("V(G) is always a forcing set")
