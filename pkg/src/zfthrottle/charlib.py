"""Extensions of forcing processes, forcing-chain contraction, and the
``K_a x P_{b+1}`` minor characterisations of low throttling numbers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .graph import (
    Edge,
    EdgeKind,
    Graph,
    GuardError,
    canonical_form,
    cartesian_product_complete_path,
    contract_edge,
    contract_edges,
    delete_edges,
    delete_vertex,
    find_spanning_embedding,
    norm_edge,
    spanning_subgraphs,
    to_mask,
    write_graph6,
    parse_graph6,
)
from .propagation import INF, normalize_forces, propagate_force_set, pt_of_set
from .rules import Force, ForceKind, RuleId
from .throttling import order_upper_bound, throttling_number

MAX_T = 6
CATALOG_MAX_T = 4


# extension ---------------------------------------------------------------------

@dataclass(frozen=True)
class Extension:
    """``graph`` lives on the ``rows x columns`` array with vertex
    ``(row i, column c)`` at index ``c*rows + i``, the numbering of
    :func:`cartesian_product_complete_path`."""

    graph: Graph
    rows: int
    columns: int
    array_position: dict[int, tuple[int, int]]
    origin: dict[int, int]
    tau: dict[int, int]
    chains: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "graph6": write_graph6(self.graph),
            "rows": self.rows,
            "columns": self.columns,
            "layout": [[self.origin[c * self.rows + i] for c in range(self.columns)] for i in range(self.rows)],
            "tau": {str(v): k for v, k in sorted(self.tau.items())},
            "graph": self.graph.to_json(),
        }


def forcing_chains(blue: int, forces: Iterable[Force]) -> list[tuple[int, ...]]:
    """Maximal forcing chains, one per vertex of ``blue``, in vertex order."""
    nxt = {f.source: f.target for f in forces if f.kind is not ForceKind.SELF}
    chains = []
    for v in sorted(_iter_bits(blue)):
        chain = [v]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
            if len(chain) > 64:
                raise ValueError("forces contain a cycle")
        chains.append(tuple(chain))
    return chains


def _iter_bits(mask: int):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def build_extension(g: Graph, blue, forces) -> Extension:
    """Lay the forcing chains of ``forces`` out as rows; each vertex gets one
    copy per time it is active, and every non-chain edge is drawn once, in
    the first column where copies of both ends appear."""
    b = to_mask(blue)
    fs = normalize_forces(forces)
    if any(f.kind is not ForceKind.STANDARD for f in fs):
        raise ValueError("extensions are built from standard forces")
    sched = propagate_force_set(RuleId.Z, g, b, fs)
    if sched.pt == INF:
        raise ValueError("forces do not colour the whole graph")
    if sched.pt != pt_of_set(RuleId.Z, g, b).pt:
        raise ValueError("forces do not realise the propagation time of the blue set")
    pt = int(sched.pt)
    chains = forcing_chains(b, fs)
    covered = [v for ch in chains for v in ch]
    if sorted(covered) != list(range(g.n)):
        raise ValueError("forcing chains do not partition the vertex set")
    born = {}
    for t, rnd in enumerate(sched.rounds):
        for v in rnd:
            born[v] = t
    forced_at = {f.source: t for t, f in sched.steps}
    rows = len(chains)
    row_of = {}
    # active interval of v: born[v] .. last column before it forces
    last = {}
    for i, ch in enumerate(chains):
        for v in ch:
            row_of[v] = i
            last[v] = forced_at[v] - 1 if v in forced_at else pt
    tau = {v: last[v] - born[v] + 1 for v in range(g.n)}
    origin = {}
    position = {}
    for i, ch in enumerate(chains):
        for v in ch:
            for c in range(born[v], last[v] + 1):
                x = c * rows + i
                origin[x] = v
                position[x] = (i, c)
    size = rows * (pt + 1)
    if len(origin) != size:
        raise ValueError("rows do not have pt + 1 copies each")
    labels: dict[Edge, EdgeKind] = {}
    for i in range(rows):
        for c in range(pt):
            labels[(c * rows + i, (c + 1) * rows + i)] = EdgeKind.PATH
    chain_edges = {norm_edge(f.source, f.target) for f in fs}
    for u, v in g.edges():
        if (u, v) in chain_edges:
            continue
        lo, hi = max(born[u], born[v]), min(last[u], last[v])
        if lo > hi:
            raise ValueError(f"edge {(u, v)} has no common active column")
        if row_of[u] == row_of[v]:
            raise ValueError(f"edge {(u, v)} joins two vertices of one chain")
        labels[norm_edge(lo * rows + row_of[u], lo * rows + row_of[v])] = EdgeKind.COMPLETE
    ext = Graph.from_edges(size, labels, labels)
    return Extension(ext, rows, pt + 1, position, origin, tau, tuple(chains))


def collapse_extension(ext: Extension) -> Graph:
    """Contract every path edge joining two copies of one vertex and number
    the result by original vertex."""
    same = [e for e in ext.graph.edges_of_kind(EdgeKind.PATH) if ext.origin[e[0]] == ext.origin[e[1]]]
    q, vmap = contract_edges(ext.graph, same)
    n = len(set(ext.origin.values()))
    back = {vmap[x]: ext.origin[x] for x in range(ext.graph.n)}
    return Graph.from_edges(n, [(back[u], back[v]) for u, v in q.edges()])


# forcing-chain contraction ---------------------------------------------------------

@dataclass(frozen=True)
class ChainContraction:
    graph: Graph
    blue: frozenset[int]
    forces: frozenset[Force]
    vertex_map: tuple
    merged: int


def contract_chain_edge(g: Graph, blue, forces, e: Edge, check: bool = False) -> ChainContraction:
    """``(G/e, B/e, F/e)`` for an edge ``e`` used by a force of ``F``.

    The replacement forces depend on where ``e`` sits in its maximal chain
    ``v1 -> ... -> vk``: a one-edge chain loses its force, an end edge fuses
    two forces into one, and an inner edge fuses three into two.
    """
    b = to_mask(blue)
    fs = set(normalize_forces(forces))
    u, v = e
    used = [f for f in fs if {f.source, f.target} == {u, v} and f.kind is not ForceKind.SELF]
    if not used:
        raise ValueError(f"{e} is not used by any force")
    prev = {f.target: f.source for f in fs if f.kind is not ForceKind.SELF}
    nxt = {f.source: f.target for f in fs if f.kind is not ForceKind.SELF}
    head = used[0].source
    while head in prev:
        head = prev[head]
    chain = [head]
    while chain[-1] in nxt:
        chain.append(nxt[chain[-1]])
    k = len(chain)
    i = chain.index(used[0].source) + 1  # e = v_i v_{i+1}, 1-based

    def fw(j: int) -> Force:
        return Force(chain[j - 1], chain[j], ForceKind.STANDARD)

    def fw_any(j: int) -> Force:
        return next(f for f in fs if f.source == chain[j - 1] and f.target == chain[j])

    ge, vmap = contract_edge(g, e)
    ve = vmap[u]
    if k == 2:
        drop, add = [fw_any(i)], []
    elif i == 1:
        drop, add = [fw_any(1), fw_any(2)], [("e", chain[2])]
    elif i == k - 1:
        drop, add = [fw_any(i - 1), fw_any(i)], [(chain[i - 2], "e")]
    else:
        drop, add = [fw_any(i - 1), fw_any(i), fw_any(i + 1)], [(chain[i - 2], "e"), ("e", chain[i + 1])]
    rest = fs - set(drop)
    new_forces = {Force(vmap[f.source], vmap[f.target], f.kind) for f in rest}
    for s, t in add:
        s2 = ve if s == "e" else vmap[s]
        t2 = ve if t == "e" else vmap[t]
        new_forces.add(Force(s2, t2, ForceKind.STANDARD))
    new_blue = frozenset(vmap[x] for x in _iter_bits(b))
    out = ChainContraction(ge, new_blue, frozenset(new_forces), vmap, ve)
    if check:
        before = propagate_force_set(RuleId.Z, g, b, fs).pt
        after = propagate_force_set(RuleId.Z, ge, new_blue, new_forces).pt
        if after == INF or after > before:
            raise AssertionError(f"contraction of {e} raised propagation time {before} -> {after}")
    return out


# characterisations ------------------------------------------------------------------

CONTRACT_THEN_DELETE = "contract_then_delete"
DELETE_THEN_CONTRACT = "delete_then_contract"


@dataclass(frozen=True)
class Witness:
    """Recipe turning ``K_a x P_{b+1}`` into the query graph.

    ``contracted`` holds path edges in the product's numbering. ``deleted``
    is numbered in whatever graph the deletion is applied to: the product
    for delete-then-contract, the contracted quotient otherwise.
    """

    a: int
    b: int
    contracted: tuple[Edge, ...]
    deleted: tuple[Edge, ...]
    order: str

    def replay(self) -> Graph:
        g = cartesian_product_complete_path(self.a, self.b + 1)
        if self.order == DELETE_THEN_CONTRACT:
            g = delete_edges(g, self.deleted)
            g, _ = contract_edges(g, self.contracted)
        else:
            g, _ = contract_edges(g, self.contracted)
            g = delete_edges(g, self.deleted)
        return g

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "contracted": [list(e) for e in self.contracted],
            "deleted": [list(e) for e in self.deleted],
            "order": self.order,
        }


def _check_t(t: int, cap: int) -> None:
    if t < 1:
        raise ValueError("t must be positive")
    if t > cap:
        raise GuardError(f"enumeration limited to t <= {cap}")


@lru_cache(maxsize=None)
def _quotients(a: int, b: int, c: int) -> tuple[tuple[tuple[Edge, ...], Graph], ...]:
    """Distinct (up to isomorphism) results of contracting ``c`` path edges
    of ``K_a x P_{b+1}``, each with one contraction set producing it."""
    k = cartesian_product_complete_path(a, b + 1)
    seen = set()
    out = []
    for cs in itertools.combinations(k.edges_of_kind(EdgeKind.PATH), c):
        q, _ = contract_edges(k, cs)
        key = canonical_form(q)
        if key not in seen:
            seen.add(key)
            out.append((cs, q))
    return tuple(out)


def obtainable_floor(g: Graph, t: int) -> tuple[bool, Witness | None]:
    """Whether ``g`` arises from some ``K_a x P_{b+1}`` (``a >= 1``,
    ``b >= 0``, ``a + b = t``) by contracting path edges and then deleting
    edges."""
    _check_t(t, MAX_T)
    n = g.n
    if n > order_upper_bound(t) or n == 0:
        return False, None
    plain = g.unlabeled()
    for a in range(1, t + 1):
        b = t - a
        c = a * (b + 1) - n
        if c < 0 or c > a * b:
            continue
        for cs, q in _quotients(a, b, c):
            if q.m < plain.m:
                continue
            pi = find_spanning_embedding(plain, q)
            if pi is None:
                continue
            image = {norm_edge(pi[x], pi[y]) for x, y in plain.edges()}
            deleted = tuple(e for e in q.edges() if e not in image)
            return True, Witness(a, b, tuple(cs), deleted, CONTRACT_THEN_DELETE)
    return False, None


@lru_cache(maxsize=None)
def _standard_table(a: int, b: int, n: int) -> dict[bytes, tuple[tuple[Edge, ...], tuple[Edge, ...]]]:
    """Canonical forms of every ``n``-vertex graph obtained from
    ``K_a x P_{b+1}`` by deleting complete edges and then contracting path
    edges, each mapped to one ``(deleted, contracted)`` pair."""
    k = cartesian_product_complete_path(a, b + 1)
    c = a * (b + 1) - n
    complete = k.edges_of_kind(EdgeKind.COMPLETE)
    paths = list(itertools.combinations(k.edges_of_kind(EdgeKind.PATH), c))
    table: dict[bytes, tuple] = {}
    seen_adj = set()
    for r in range(len(complete) + 1):
        for ds in itertools.combinations(complete, r):
            h = delete_edges(k, ds)
            for cs in paths:
                q, _ = contract_edges(h, cs)
                if q.adj in seen_adj:
                    continue
                seen_adj.add(q.adj)
                table.setdefault(canonical_form(q), (ds, cs))
    return table


def obtainable_standard(g: Graph, t: int) -> tuple[bool, Witness | None]:
    """Whether ``g`` arises from some ``K_a x P_{b+1}`` (``a + b = t``) by
    deleting complete edges and then contracting path edges.

    ``b = 0`` is allowed: ``K_t`` minus edges covers the graphs whose only
    optimal blue set is everything, such as ``K_1`` at ``t = 1``.
    """
    _check_t(t, MAX_T)
    n = g.n
    if n == 0:
        return True, Witness(0, t, (), (), DELETE_THEN_CONTRACT)
    if n > order_upper_bound(t):
        return False, None
    key = canonical_form(g)
    for a in range(1, t + 1):
        b = t - a
        if b == 0:
            if n == a:
                gone = tuple(g.non_edges())
                return True, Witness(a, 0, (), gone, DELETE_THEN_CONTRACT)
            continue
        c = a * (b + 1) - n
        if c < 0 or c > a * b:
            continue
        hit = _standard_table(a, b, n).get(key)
        if hit is not None:
            ds, cs = hit
            return True, Witness(a, b, tuple(cs), tuple(ds), DELETE_THEN_CONTRACT)
    return False, None


# catalogues ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def _catalog(rule: RuleId, t: int) -> frozenset[bytes]:
    if t == 0:
        return frozenset()
    out: set[bytes] = set()
    if rule is RuleId.FLOOR_Z:
        for a in range(1, t + 1):
            b = t - a
            for c in range(a * b + 1):
                for _, q in _quotients(a, b, c):
                    out.update(canonical_form(s) for s in spanning_subgraphs(q))
    elif rule is RuleId.Z:
        # a = 0 only yields the graph with no vertices, which is left out
        for a in range(1, t + 1):
            b = t - a
            for n in range(1, a * (b + 1) + 1):
                if a * (b + 1) - n <= a * b:
                    out.update(_standard_table(a, b, n))
    else:
        raise ValueError("catalogues exist for Z and floorZ only")
    return frozenset(out)


def catalog(rule: RuleId, t: int, exact: bool = False) -> list[str]:
    """Canonical graph6 strings of all graphs with throttling number at most
    ``t`` (exactly ``t`` with ``exact``), sorted."""
    _check_t(t, CATALOG_MAX_T)
    found = _catalog(rule, t)
    if exact:
        found = found - _catalog(rule, t - 1)
    return sorted(s.decode() for s in found)


# minor monotonicity ---------------------------------------------------------------------

@dataclass(frozen=True)
class NonMonotoneMinor:
    graph: Graph
    th_minor: int
    host: Graph
    th_host: int
    degree_sequence: tuple[int, ...]
    operation: str
    deleted: tuple[Edge, ...]

    def to_json(self) -> dict:
        return {
            "graph6": write_graph6(self.graph),
            "th_minor": self.th_minor,
            "host_graph6": write_graph6(self.host),
            "th_host": self.th_host,
            "degree_sequence": list(self.degree_sequence),
            "operation": self.operation,
            "deleted": [list(e) for e in self.deleted],
        }


def _eight_vertex_minors(host: Graph):
    for e in host.edges():
        kind = host.label(*e).value
        q, _ = contract_edge(host, e)
        yield f"contract {kind} edge {e}", q.unlabeled()
    for v in range(host.n):
        q, _ = delete_vertex(host, v)
        yield f"delete vertex {v}", q.unlabeled()


def find_non_monotone_minor() -> NonMonotoneMinor:
    """Search the 8-vertex minors of ``K_3 x P_3`` (one edge contraction of
    either class, or one vertex deletion, followed by edge deletions, fewest
    deletions first) for one whose floor throttling number exceeds the
    host's."""
    host = cartesian_product_complete_path(3, 3)
    th_host = throttling_number(RuleId.FLOOR_Z, host).value
    bases = []
    seen = set()
    for op, q in _eight_vertex_minors(host):
        key = canonical_form(q)
        if key not in seen:
            seen.add(key)
            bases.append((op, q))
    max_deleted = max(q.m for _, q in bases)
    for r in range(max_deleted + 1):
        for op, q in bases:
            for ds in itertools.combinations(q.edges(), r):
                cand = delete_edges(q, ds)
                th = throttling_number(RuleId.FLOOR_Z, cand).value
                if th > th_host:
                    return NonMonotoneMinor(cand, th, host, th_host, cand.degree_sequence(), op, ds)
    raise LookupError("no 8-vertex minor of K_3 x P_3 beats the host")


def optimal_force_sets(g: Graph, blue) -> list[frozenset[Force]]:
    """Every set of standard forces of ``blue`` whose propagation time equals
    ``pt_Z(G; B)``. Empty when ``blue`` is not a forcing set."""
    b = to_mask(blue)
    target_pt = pt_of_set(RuleId.Z, g, b).pt
    if target_pt == INF:
        return []
    found: set[frozenset[Force]] = set()

    def walk(blue_m: int, spent: int, acc: frozenset[Force], t: int) -> None:
        if blue_m == g.full:
            found.add(acc)
            return
        if t == target_pt:
            return
        by_target: dict[int, list[int]] = {}
        white = g.full & ~blue_m
        for u in _iter_bits(blue_m & ~spent):
            w = g.adj[u] & white
            if w and not w & (w - 1):
                by_target.setdefault(w.bit_length() - 1, []).append(u)
        # a listed force fires as soon as it is valid, so every valid target
        # is forced now by one of its forcers or by nobody in this set
        options = [[None] + srcs for srcs in by_target.values()]
        for pick in itertools.product(*options):
            chosen = [Force(u, w, ForceKind.STANDARD) for u, w in zip(pick, by_target) if u is not None]
            if chosen:
                nb, ns = blue_m, spent
                for f in chosen:
                    nb |= 1 << f.target
                    ns |= 1 << f.source
                walk(nb, ns, acc | frozenset(chosen), t + 1)

    walk(b, 0, frozenset(), 0)
    return [fs for fs in found if propagate_force_set(RuleId.Z, g, b, fs).pt == target_pt]
