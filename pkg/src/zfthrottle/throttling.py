"""Throttling numbers by branch and bound, plus closed forms and bounds."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .graph import Graph, GuardError, from_mask, independence_number, spanning_supergraphs, to_mask
from .propagation import INF, Schedule, SearchStats, closure, pt_of_set, round_search
from .rules import RuleId

MAX_N_BASE = 16
MAX_N_FLOOR = 10


@dataclass
class ThrottlingStats:
    subsets_evaluated: int = 0
    subsets_pruned: int = 0
    search_states: int = 0


@dataclass(frozen=True)
class ThrottlingResult:
    value: int
    witness_blue: frozenset[int]
    witness_schedule: Schedule
    stats: ThrottlingStats = field(default_factory=ThrottlingStats, compare=False)

    @property
    def witness_forces(self):
        return self.witness_schedule.forces

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "blue": sorted(self.witness_blue),
            "pt": self.witness_schedule.to_json()["pt"],
            "schedule": self.witness_schedule.to_json(),
            "stats": {
                "subsets_evaluated": self.stats.subsets_evaluated,
                "subsets_pruned": self.stats.subsets_pruned,
                "search_states": self.stats.search_states,
            },
        }


def th_of_set(rule: RuleId, g: Graph, blue) -> float:
    b = to_mask(blue)
    return b.bit_count() + pt_of_set(rule, g, b).pt


def _chain_bound(rule: RuleId, n: int, k: int) -> float:
    """Lower bound on the propagation time of any ``k``-set."""
    if k >= n:
        return 0
    if rule.base is RuleId.Z:
        # at most k forcing chains, each growing by one vertex per step
        return INF if k == 0 else -(-(n - k) // k)
    if rule.base is RuleId.ZPLUS and k == 0:
        return INF
    return 1


def throttling_number(rule: RuleId, g: Graph, max_n: int | None = None) -> ThrottlingResult:
    """Exact ``th_R(G)``.

    Blue sets are enumerated by size and then lexicographically; a size class
    is skipped once ``k`` plus the chain bound cannot beat the best value, and
    each candidate is searched only for strictly better propagation times.
    Ties keep the first witness found (smallest size, then lexicographic).
    """
    n = g.n
    cap = max_n if max_n is not None else (MAX_N_FLOOR if rule.is_floor else MAX_N_BASE)
    if n > cap:
        raise GuardError(f"throttling search for {rule.value} limited to n <= {cap}")
    stats = ThrottlingStats()
    # B = V always gives n; start one above so a smaller set achieving n wins
    best = n + 1
    best_b = g.full
    best_sched = Schedule((from_mask(g.full),), 0, ())
    search = SearchStats()
    for k in range(n):
        if k >= best:
            break
        if k + _chain_bound(rule, n, k) >= best:
            stats.subsets_pruned += math.comb(n, k)
            continue
        for combo in itertools.combinations(range(n), k):
            if k + _chain_bound(rule, n, k) >= best:
                stats.subsets_pruned += 1
                continue
            stats.subsets_evaluated += 1
            b = to_mask(combo)
            # base-rule closure is exact for base rules and a valid upper
            # bound under the floor rule
            sched = closure(rule.base, g, b, best - k - 1)
            if sched.pt < INF:
                best, best_b, best_sched = k + sched.pt, b, sched
            if rule.is_floor:
                faster = round_search(rule, g, b, best - k - 1, stats=search)
                if faster.pt < INF:
                    best, best_b, best_sched = k + faster.pt, b, faster
    stats.search_states = search.states
    best = min(best, n)
    return ThrottlingResult(int(best), from_mask(best_b), best_sched, stats)


def th_via_supergraphs(g: Graph) -> int:
    """``min th_Z(H)`` over spanning supergraphs ``H`` of ``g``."""
    return min(throttling_number(RuleId.Z, h).value for h in spanning_supergraphs(g))


# closed forms and bounds ---------------------------------------------------------

def sqrt_lower_bound(n: int) -> int:
    """``ceil(2*sqrt(n) - 1)``: the least ``k`` with ``(k + 1)**2 >= 4n``."""
    if n < 1:
        raise ValueError("n must be positive")
    k = max(0, 2 * math.isqrt(n) - 2)
    while (k + 1) ** 2 < 4 * n:
        k += 1
    return k


def order_upper_bound(t: int) -> int:
    """Largest order ``n`` with ``ceil(2*sqrt(n) - 1) <= t``, i.e. ``floor((t+1)^2/4)``."""
    if t < 1:
        raise ValueError("t must be positive")
    return (t + 1) ** 2 // 4


def path_throttling_formula(n: int) -> int:
    return sqrt_lower_bound(n)


def cycle_throttling_formula(n: int) -> int:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    m = math.isqrt(n)
    r = n - m * m
    if r == 0:
        return 2 * m - 1 if m % 2 == 0 else 2 * m
    return 2 * m if r <= m else 2 * m + 1


def floor_cycle_formula(n: int) -> int:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return sqrt_lower_bound(n)


def alpha_upper_bound(g: Graph) -> int:
    """``n - alpha(G) + ceil(2*sqrt(alpha(G)) - 1)``, an upper bound on the floor throttling number."""
    if g.n < 1:
        raise ValueError("graph must be non-empty")
    a = independence_number(g)
    return g.n - a + sqrt_lower_bound(a)
